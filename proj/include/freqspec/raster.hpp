#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace freqspec {

/// Row-major interleaved image with real-valued intensities.
///
/// Intensities nominally live in [0, 255]; residual images produced by the
/// spectrum module may carry signed values. Quantization to 8 bits only
/// happens at file export and at the JPEG round-trip boundary.
class Raster {
public:
    Raster() = default;
    Raster(int width, int height, int channels, double fill = 0.0);
    Raster(int width, int height, int channels, std::vector<double> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int channels() const noexcept { return channels_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& at(int x, int y, int c = 0) noexcept {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }
    double at(int x, int y, int c = 0) const noexcept {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    /// Clamp every intensity to [0, 255].
    void clamp();

    bool operator==(const Raster&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<double> data_;
};

enum class Interpolation { Bilinear, Bicubic };

/// Unweighted per-pixel mean over channels; single-channel input is returned unchanged.
Raster to_grayscale(const Raster& img);

/// Separable resampling with half-pixel-center alignment and symmetric
/// (edge-repeating) border reflection. Bicubic uses Catmull-Rom (a = -0.5).
/// Output is clamped to [0, 255]. Plain interpolation taps, no prefiltering.
Raster resize(const Raster& img, int out_width, int out_height, Interpolation method);

/// Largest centered square; identity for square input.
Raster center_crop_square(const Raster& img);

/// Half-sample symmetric reflection of an index into [0, n): ... 1 0 | 0 1 ... n-1 | n-1 n-2 ...
int reflect_index(int i, int n) noexcept;

// ---- file formats ----

/// PNG (8-bit gray, gray+alpha, RGB, RGBA, palette) and baseline JPEG.
/// Alpha is dropped. Throws UnsupportedFormat or CorruptStream.
Raster decode_image(std::span<const std::uint8_t> bytes);

/// Width/height from the container header without decoding pixel data.
struct ImageDims {
    int width;
    int height;
};
ImageDims probe_dimensions(std::span<const std::uint8_t> bytes);

/// 8-bit PNG; intensities are rounded and clamped. Channels must be 1 or 3.
std::vector<std::uint8_t> encode_png(const Raster& img);

/// Binary PGM (P5), single channel, rounded and clamped.
std::vector<std::uint8_t> encode_pgm(const Raster& img);

/// Baseline JPEG at the given quality with 4:4:4 sampling.
std::vector<std::uint8_t> encode_jpeg(const Raster& img, int quality);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

Raster load_image(const std::filesystem::path& path);

/// Writes PNG or PGM depending on the extension (.pgm -> PGM, anything else PNG).
void save_image(const Raster& img, const std::filesystem::path& path);

}  // namespace freqspec
