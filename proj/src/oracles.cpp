#include <freqspec/oracles.hpp>

#include <freqspec/error.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace freqspec::oracles {

namespace {

void cap(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InputTooLarge, what);
}

// Mirror with edge repetition, written out explicitly: -1 -> 0, -2 -> 1, n -> n-1, n+1 -> n-2.
int mirror(int i, int n) {
    while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

}  // namespace

std::vector<std::complex<double>> naive_dft(const Raster& gray) {
    cap(gray.width() <= 32 && gray.height() <= 32, "naive_dft is limited to 32x32");
    if (gray.channels() != 1) throw Error(ErrorCode::InvalidArgument, "naive_dft expects one channel");
    const int w = gray.width(), h = gray.height();
    std::vector<std::complex<double>> out(static_cast<std::size_t>(w) * h);
    for (int v = 0; v < h; ++v)
        for (int u = 0; u < w; ++u) {
            std::complex<double> acc = 0.0;
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const double ang = -2.0 * std::numbers::pi *
                                       (static_cast<double>(u * x) / w + static_cast<double>(v * y) / h);
                    acc += gray.at(x, y) * std::complex<double>(std::cos(ang), std::sin(ang));
                }
            out[static_cast<std::size_t>(v) * w + u] = acc;
        }
    return out;
}

double pairwise_auc(std::span<const ScoredSample> samples) {
    cap(samples.size() <= 4096, "pairwise_auc is limited to 4096 samples");
    double wins = 0.0;
    std::size_t pairs = 0;
    for (const auto& p : samples) {
        if (p.label != 1) continue;
        for (const auto& n : samples) {
            if (n.label != 0) continue;
            ++pairs;
            if (p.score > n.score) wins += 1.0;
            else if (p.score == n.score) wins += 0.5;
        }
    }
    if (pairs == 0) throw Error(ErrorCode::SingleClass, "pairwise_auc needs both classes");
    return wins / static_cast<double>(pairs);
}

double sweep_ap(std::span<const ScoredSample> samples) {
    cap(samples.size() <= 4096, "sweep_ap is limited to 4096 samples");
    std::set<double, std::greater<>> thresholds;
    std::size_t positives = 0;
    for (const auto& s : samples) {
        thresholds.insert(s.score);
        positives += s.label == 1;
    }
    if (positives == 0) throw Error(ErrorCode::NoPositives, "sweep_ap needs a positive");
    double ap = 0.0, prev_recall = 0.0;
    for (double t : thresholds) {
        std::size_t tp = 0, predicted = 0;
        for (const auto& s : samples)
            if (s.score >= t) {
                ++predicted;
                tp += s.label == 1;
            }
        const double recall = static_cast<double>(tp) / static_cast<double>(positives);
        const double precision = static_cast<double>(tp) / static_cast<double>(predicted);
        ap += (recall - prev_recall) * precision;
        prev_recall = recall;
    }
    return ap;
}

double sorted_median(std::vector<double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptySet, "median of nothing");
    std::sort(values.begin(), values.end());
    return values[values.size() / 2];
}

Raster sorted_median_residual(const Raster& gray, int k) {
    cap(gray.width() <= 64 && gray.height() <= 64, "sorted_median_residual is limited to 64x64");
    const int r = k / 2;
    Raster out(gray.width(), gray.height(), 1);
    for (int y = 0; y < gray.height(); ++y)
        for (int x = 0; x < gray.width(); ++x) {
            std::vector<double> win;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    win.push_back(gray.at(mirror(x + dx, gray.width()), mirror(y + dy, gray.height())));
            out.at(x, y) = gray.at(x, y) - sorted_median(std::move(win));
        }
    return out;
}

Raster direct_conv2(const Raster& gray, const std::vector<double>& kernel, int k) {
    cap(gray.width() <= 64 && gray.height() <= 64, "direct_conv2 is limited to 64x64");
    if (kernel.size() != static_cast<std::size_t>(k) * k) throw Error(ErrorCode::ShapeMismatch, "kernel must be k*k");
    const int r = k / 2;
    Raster out(gray.width(), gray.height(), 1);
    for (int y = 0; y < gray.height(); ++y)
        for (int x = 0; x < gray.width(); ++x) {
            double acc = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    acc += kernel[static_cast<std::size_t>(dy + r) * k + (dx + r)] *
                           gray.at(mirror(x + dx, gray.width()), mirror(y + dy, gray.height()));
            out.at(x, y) = acc;
        }
    return out;
}

MeanCov twopass_cov(std::span<const std::vector<double>> rows) {
    cap(rows.size() <= 10000, "twopass_cov is limited to 10000 rows");
    if (rows.size() < 2) throw Error(ErrorCode::TooFewSamples, "twopass_cov needs two rows");
    const std::size_t d = rows.front().size();
    cap(d <= 128, "twopass_cov is limited to 128 dimensions");
    MeanCov mc;
    mc.mean.assign(d, 0.0);
    for (const auto& row : rows)
        for (std::size_t i = 0; i < d; ++i) mc.mean[i] += row[i];
    for (double& m : mc.mean) m /= static_cast<double>(rows.size());
    mc.covariance.assign(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double acc = 0.0;
            for (const auto& row : rows) acc += (row[i] - mc.mean[i]) * (row[j] - mc.mean[j]);
            mc.covariance[i * d + j] = acc / static_cast<double>(rows.size() - 1);
        }
    return mc;
}

}  // namespace freqspec::oracles
