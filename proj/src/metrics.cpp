#include <freqspec/metrics.hpp>

#include <freqspec/error.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace freqspec {

namespace {

void check_finite(std::span<const ScoredSample> samples) {
    for (const auto& s : samples)
        if (!std::isfinite(s.score)) throw Error(ErrorCode::InvalidArgument, "scores must be finite");
}

std::vector<ScoredSample> sorted_by_score(std::span<const ScoredSample> samples, bool descending) {
    std::vector<ScoredSample> v(samples.begin(), samples.end());
    std::stable_sort(v.begin(), v.end(), [descending](const ScoredSample& a, const ScoredSample& b) {
        return descending ? a.score > b.score : a.score < b.score;
    });
    return v;
}

}  // namespace

double auc(std::span<const ScoredSample> samples) {
    check_finite(samples);
    const auto v = sorted_by_score(samples, false);
    // Midranks over tie groups; the rank-sum of positives gives the U statistic.
    double pos_rank_sum = 0.0;
    std::size_t n_pos = 0, n_neg = 0;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j].score == v[i].score) ++j;
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (v[k].label == 1) {
                pos_rank_sum += midrank;
                ++n_pos;
            } else {
                ++n_neg;
            }
        }
        i = j;
    }
    if (n_pos == 0 || n_neg == 0) throw Error(ErrorCode::SingleClass, "AUC needs both classes");
    const double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
    const double u = pos_rank_sum - np * (np + 1.0) / 2.0;
    return u / (np * nn);
}

double average_precision(std::span<const ScoredSample> samples) {
    check_finite(samples);
    const auto v = sorted_by_score(samples, true);
    const std::size_t total_pos = static_cast<std::size_t>(
        std::count_if(v.begin(), v.end(), [](const ScoredSample& s) { return s.label == 1; }));
    if (total_pos == 0) throw Error(ErrorCode::NoPositives, "AP needs at least one positive");

    double ap = 0.0;
    std::size_t tp = 0, seen = 0;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        std::size_t group_pos = 0;
        while (j < v.size() && v[j].score == v[i].score) {
            group_pos += v[j].label == 1;
            ++j;
        }
        tp += group_pos;
        seen = j;
        if (group_pos > 0) {
            const double recall_step = static_cast<double>(group_pos) / static_cast<double>(total_pos);
            const double precision = static_cast<double>(tp) / static_cast<double>(seen);
            ap += recall_step * precision;
        }
        i = j;
    }
    return ap;
}

double psnr(const Raster& a, const Raster& b) {
    if (a.width() != b.width() || a.height() != b.height() || a.channels() != b.channels())
        throw Error(ErrorCode::ShapeMismatch, "PSNR needs equal shapes");
    const auto da = a.data(), db = b.data();
    double sse = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) sse += (da[i] - db[i]) * (da[i] - db[i]);
    if (sse == 0.0) return std::numeric_limits<double>::infinity();
    const double mse = sse / static_cast<double>(da.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

GaussianStats fit_gaussian(std::span<const std::vector<double>> features) {
    if (features.size() < 2) throw Error(ErrorCode::TooFewSamples, "need at least two samples");
    const std::size_t d = features.front().size();
    for (const auto& f : features)
        if (f.size() != d) throw Error(ErrorCode::DimensionMismatch, "feature vectors differ in length");

    GaussianStats st;
    st.n = features.size();
    st.mean.assign(d, 0.0);
    for (const auto& f : features)
        for (std::size_t i = 0; i < d; ++i) st.mean[i] += f[i];
    for (double& m : st.mean) m /= static_cast<double>(st.n);

    st.covariance.assign(d * d, 0.0);
    for (const auto& f : features)
        for (std::size_t i = 0; i < d; ++i) {
            const double di = f[i] - st.mean[i];
            for (std::size_t j = i; j < d; ++j) st.covariance[i * d + j] += di * (f[j] - st.mean[j]);
        }
    const double denom = static_cast<double>(st.n - 1);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            const double c = st.covariance[i * d + j] / denom;
            st.covariance[i * d + j] = c;
            st.covariance[j * d + i] = c;
        }
    return st;
}

namespace {

using Matrix = Eigen::MatrixXd;

Matrix to_matrix(const GaussianStats& s) {
    const auto d = static_cast<Eigen::Index>(s.dim());
    if (s.covariance.size() != s.dim() * s.dim())
        throw Error(ErrorCode::DimensionMismatch, "covariance size does not match mean");
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = s.covariance[static_cast<std::size_t>(i * d + j)];
    return 0.5 * (m + m.transpose());
}

// Square root of a symmetric PSD matrix; eigenvalues below zero (roundoff) are clamped.
Matrix psd_sqrt(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
    const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace

double frechet_distance(const GaussianStats& a, const GaussianStats& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "Gaussian stats differ in dimension");
    if (a.mean == b.mean && a.covariance == b.covariance) return 0.0;
    const Matrix s1 = to_matrix(a), s2 = to_matrix(b);
    double mean_term = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) mean_term += (a.mean[i] - b.mean[i]) * (a.mean[i] - b.mean[i]);

    // Tr (S1 S2)^(1/2) = Tr (S1^(1/2) S2 S1^(1/2))^(1/2), and the inner product is symmetric PSD.
    const Matrix r1 = psd_sqrt(s1);
    Matrix inner = r1 * s2 * r1;
    inner = 0.5 * (inner + inner.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(inner, Eigen::EigenvaluesOnly);
    const double cross = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();

    const double d2 = mean_term + s1.trace() + s2.trace() - 2.0 * cross;
    return std::max(d2, 0.0);
}

}  // namespace freqspec
