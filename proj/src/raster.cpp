#include <freqspec/raster.hpp>

#include <freqspec/error.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace freqspec {

Raster::Raster(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels) {
    if (width <= 0 || height <= 0) throw Error(ErrorCode::ZeroDimension, "raster dimensions must be positive");
    if (channels != 1 && channels != 3) throw Error(ErrorCode::InvalidArgument, "channels must be 1 or 3");
    data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Raster::Raster(int width, int height, int channels, std::vector<double> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
    if (width <= 0 || height <= 0) throw Error(ErrorCode::ZeroDimension, "raster dimensions must be positive");
    if (channels != 1 && channels != 3) throw Error(ErrorCode::InvalidArgument, "channels must be 1 or 3");
    if (data_.size() != static_cast<std::size_t>(width) * height * channels)
        throw Error(ErrorCode::ShapeMismatch, "data length does not match width*height*channels");
}

void Raster::clamp() {
    for (double& v : data_) v = std::clamp(v, 0.0, 255.0);
}

int reflect_index(int i, int n) noexcept {
    if (n == 1) return 0;
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

Raster to_grayscale(const Raster& img) {
    if (img.channels() == 1) return img;
    Raster out(img.width(), img.height(), 1);
    const auto src = img.data();
    auto dst = out.data();
    const int c = img.channels();
    for (std::size_t p = 0; p < dst.size(); ++p) {
        double sum = 0.0;
        for (int k = 0; k < c; ++k) sum += src[p * c + k];
        dst[p] = sum / c;
    }
    return out;
}

namespace {

struct Taps {
    std::array<int, 4> index{};
    std::array<double, 4> weight{};
    int count = 0;
};

double catmull_rom(double x) {
    constexpr double a = -0.5;
    x = std::abs(x);
    if (x <= 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
    if (x < 2.0) return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
    return 0.0;
}

std::vector<Taps> build_taps(int in_size, int out_size, Interpolation method) {
    std::vector<Taps> taps(out_size);
    const double scale = static_cast<double>(in_size) / out_size;
    for (int o = 0; o < out_size; ++o) {
        const double src = (o + 0.5) * scale - 0.5;
        const double base = std::floor(src);
        const double t = src - base;
        const int i0 = static_cast<int>(base);
        Taps& tp = taps[o];
        if (method == Interpolation::Bilinear) {
            tp.count = 2;
            tp.index = {reflect_index(i0, in_size), reflect_index(i0 + 1, in_size), 0, 0};
            tp.weight = {1.0 - t, t, 0.0, 0.0};
        } else {
            tp.count = 4;
            for (int k = 0; k < 4; ++k) {
                tp.index[k] = reflect_index(i0 - 1 + k, in_size);
                tp.weight[k] = catmull_rom(t - (k - 1));
            }
        }
    }
    return taps;
}

}  // namespace

Raster resize(const Raster& img, int out_width, int out_height, Interpolation method) {
    if (out_width < 1 || out_height < 1) throw Error(ErrorCode::ZeroDimension, "resize target must be at least 1x1");
    const int c = img.channels();
    const auto xt = build_taps(img.width(), out_width, method);
    const auto yt = build_taps(img.height(), out_height, method);

    Raster horiz(out_width, img.height(), c);
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < out_width; ++x)
            for (int k = 0; k < c; ++k) {
                double acc = 0.0;
                for (int t = 0; t < xt[x].count; ++t) acc += xt[x].weight[t] * img.at(xt[x].index[t], y, k);
                horiz.at(x, y, k) = acc;
            }

    Raster out(out_width, out_height, c);
    for (int y = 0; y < out_height; ++y)
        for (int x = 0; x < out_width; ++x)
            for (int k = 0; k < c; ++k) {
                double acc = 0.0;
                for (int t = 0; t < yt[y].count; ++t) acc += yt[y].weight[t] * horiz.at(x, yt[y].index[t], k);
                out.at(x, y, k) = acc;
            }
    out.clamp();
    return out;
}

Raster center_crop_square(const Raster& img) {
    if (img.width() == img.height()) return img;
    const int n = std::min(img.width(), img.height());
    const int x0 = (img.width() - n) / 2;
    const int y0 = (img.height() - n) / 2;
    Raster out(n, n, img.channels());
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            for (int k = 0; k < img.channels(); ++k) out.at(x, y, k) = img.at(x0 + x, y0 + y, k);
    return out;
}

}  // namespace freqspec
