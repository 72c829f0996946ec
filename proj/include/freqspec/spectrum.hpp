#pragma once

#include <freqspec/raster.hpp>

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

namespace freqspec {

/// Square grid of log-scaled DFT magnitudes. Row index follows the vertical
/// frequency v, column index the horizontal frequency u. When dc_centered,
/// the signed frequency of index i is i - size/2 (integer division).
struct Spectrum {
    int size = 0;
    std::vector<double> values;
    bool dc_centered = false;

    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * size + col]; }
    double& at(int row, int col) { return values[static_cast<std::size_t>(row) * size + col]; }

    /// Value at signed frequency (u, v); requires dc_centered.
    double at_frequency(int u, int v) const;
};

struct SpectrumConfig {
    int median_k = 3;
    double epsilon = 1e-8;
    int bands = 32;
};

/// Spectral descriptor: radial band means, four directional sector means
/// (0, 45, 90, 135 degrees), horizontal/vertical impulse-axis means and the
/// three Nyquist lattice points.
struct FeatureVector {
    std::vector<double> radial;
    std::vector<double> directional;  // 4
    std::vector<double> axis;         // 2: horizontal (v = 0), vertical (u = 0)
    std::vector<double> nyquist;      // 3: (N/2, 0), (0, N/2), (N/2, N/2)

    std::vector<double> flatten() const;
    static std::size_t length(int bands) { return static_cast<std::size_t>(bands) + 4 + 2 + 3; }
};

/// k x k median with symmetric border reflection.
Raster median_filter(const Raster& gray, int median_k);

/// gray - median_filter(gray); signed, unclamped.
Raster highpass_residual(const Raster& gray, int median_k);

/// Centered DFT magnitudes (no log) of a square single-channel raster.
Spectrum centered_magnitude(const Raster& residual);

/// ln(|DFT| + epsilon), quadrant-shifted so DC sits at (size/2, size/2).
Spectrum fft_log_spectrum(const Raster& residual, double epsilon);

/// Full per-image pipeline: grayscale, center crop to square, median residual, log spectrum.
Spectrum image_log_spectrum(const Raster& img, int median_k, double epsilon);

/// Element-wise mean of per-image log spectra (average of logs).
/// Per-image spectra may be computed on `threads` workers; the reduction order is fixed.
Spectrum mean_spectrum(std::span<const Raster> images, int median_k, double epsilon, unsigned threads = 1);

/// Same, loading image i on demand so only a bounded batch is resident.
Spectrum mean_spectrum(std::size_t count, const std::function<Raster(std::size_t)>& load, int median_k,
                       double epsilon, unsigned threads = 1);

/// Bin assignment used by extract_features, indexed like Spectrum::values.
/// Only one bin of each conjugate pair (u, v) ~ (-u, -v) is a representative;
/// the others carry -1 everywhere. DC and the corners beyond the inscribed
/// circle (clamped into the last band) have no sector.
struct SpectrumLayout {
    int size = 0;
    int bands = 0;
    std::vector<int> band;    // radial band, -1 if not a representative
    std::vector<int> sector;  // 0..3 for 0/45/90/135 degrees, -1 for DC or non-representatives
};

SpectrumLayout spectrum_layout(int size, int bands);

FeatureVector extract_features(const Spectrum& spec, int bands);

/// image_log_spectrum followed by extract_features.
FeatureVector image_features(const Raster& img, const SpectrumConfig& cfg);

/// Min-max normalization to 0..255; a zero dynamic range maps everything to 0.
Raster spectrum_to_raster(const Spectrum& spec);

/// Writes the normalized spectrum as 8-bit grayscale (PGM for .pgm, PNG otherwise).
void export_spectrum_image(const Spectrum& spec, const std::filesystem::path& path);

}  // namespace freqspec
