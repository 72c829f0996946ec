#pragma once

// Brute-force reference implementations for the test suites. Nothing here
// calls into the fast paths it is used to check. Each oracle enforces a size
// cap and throws InputTooLarge beyond it.

#include <freqspec/metrics.hpp>
#include <freqspec/raster.hpp>

#include <complex>
#include <span>
#include <vector>

namespace freqspec::oracles {

/// O(N^4) direct DFT of a single-channel raster (at most 32 x 32), row-major, unnormalized.
std::vector<std::complex<double>> naive_dft(const Raster& gray);

/// O(n^2) pairwise comparison: fraction of (fake, real) pairs ordered correctly, ties 1/2. n <= 4096.
double pairwise_auc(std::span<const ScoredSample> samples);

/// Exhaustive threshold sweep: for every distinct score t (descending) recount precision
/// and recall at "score >= t"; sum recall increments times precision. n <= 4096.
double sweep_ap(std::span<const ScoredSample> samples);

/// Median of a value list by full sort.
double sorted_median(std::vector<double> values);

/// Per-pixel k x k window, mirrored at the border with edge repetition, full sort,
/// residual = value - median. At most 64 x 64.
Raster sorted_median_residual(const Raster& gray, int k);

/// Direct 2-D correlation with a square kernel (row-major k x k), same border rule. At most 64 x 64.
Raster direct_conv2(const Raster& gray, const std::vector<double>& kernel, int k);

struct MeanCov {
    std::vector<double> mean;
    std::vector<double> covariance;  // row-major d x d, unbiased
};

/// Textbook two-pass mean then covariance. n <= 10000, d <= 128.
MeanCov twopass_cov(std::span<const std::vector<double>> rows);

}  // namespace freqspec::oracles
