#pragma once

#include <freqspec/raster.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace freqspec {

enum class PerturbKind { Jpeg, Blur, Noise, Resize };

std::string_view to_string(PerturbKind kind);
PerturbKind parse_perturb_kind(std::string_view name);

/// One perturbation at one fixed intensity. `param` is the JPEG quality,
/// blur kernel size, noise standard deviation (0-255 scale) or resize factor.
struct PerturbationSpec {
    PerturbKind kind = PerturbKind::Jpeg;
    double param = 90;
    std::uint64_t seed = 0;  // noise only

    /// Validates `param` against the benchmark grid for `kind`.
    static PerturbationSpec from_grid(PerturbKind kind, double param, std::uint64_t seed = 0);
    /// Accepts any parameter; used for identity settings and ad-hoc sweeps.
    static PerturbationSpec unchecked(PerturbKind kind, double param, std::uint64_t seed = 0);

    /// "<kind>_<param>", e.g. "jpeg_40".
    std::string label() const;
};

/// Benchmark grids: JPEG {10..90 step 10}, blur {3..15 step 2},
/// noise {5..30 step 5}, resize {2..12 step 2}.
std::vector<double> perturbation_grid(PerturbKind kind);

/// All 28 grid points in kind order jpeg, blur, noise, resize and ascending parameter.
std::vector<PerturbationSpec> full_sweep(std::uint64_t seed = 0);

/// True when a larger parameter means a milder perturbation (JPEG quality).
bool higher_param_is_milder(PerturbKind kind);

/// Baseline JPEG encode/decode at `quality` with 4:4:4 sampling; 1 or 3 channels.
Raster jpeg_roundtrip(const Raster& img, int quality);

/// Separable truncated Gaussian, sigma = 0.3 * ((k - 1) / 2 - 1) + 0.8, normalized,
/// symmetric border reflection. k must be odd; k = 1 is the identity.
Raster gaussian_blur(const Raster& img, int kernel_size);

/// Normalized 1-D taps used by gaussian_blur.
std::vector<double> gaussian_kernel(int kernel_size);

/// Adds N(0, std^2) per channel per pixel from a stream keyed by (seed, pixel, channel); clamps.
Raster add_gaussian_noise(const Raster& img, double std_dev, std::uint64_t seed);

/// Bicubic downscale by `factor` (floor), then bicubic upscale back to the original size.
Raster resize_down_up(const Raster& img, int factor);

Raster apply(const PerturbationSpec& spec, const Raster& img);

}  // namespace freqspec
