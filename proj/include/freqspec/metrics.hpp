#pragma once

#include <freqspec/raster.hpp>

#include <span>
#include <vector>

namespace freqspec {

/// Label 1 is "fake", the positive class; higher scores mean more fake.
struct ScoredSample {
    int label = 0;
    double score = 0.0;
};

/// Mann-Whitney form of ROC-AUC: P(fake > real) + P(tie) / 2, O(n log n).
double auc(std::span<const ScoredSample> samples);

/// Step-interpolated average precision with tied scores treated as one threshold.
double average_precision(std::span<const ScoredSample> samples);

/// 10 log10(255^2 / MSE); +infinity for identical inputs.
double psnr(const Raster& a, const Raster& b);

struct GaussianStats {
    std::vector<double> mean;
    std::vector<double> covariance;  // row-major d x d
    std::size_t n = 0;

    std::size_t dim() const { return mean.size(); }
};

/// Sample mean and unbiased covariance (symmetrized). Needs n >= 2.
GaussianStats fit_gaussian(std::span<const std::vector<double>> features);

/// Squared Frechet distance ||mu1 - mu2||^2 + Tr(S1 + S2 - 2 (S1 S2)^(1/2)).
double frechet_distance(const GaussianStats& a, const GaussianStats& b);

}  // namespace freqspec
