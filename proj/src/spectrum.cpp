#include <freqspec/spectrum.hpp>

#include <freqspec/error.hpp>
#include <freqspec/fft.hpp>
#include <freqspec/parallel.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <numbers>

namespace freqspec {

double Spectrum::at_frequency(int u, int v) const {
    const int half = size / 2;
    auto wrap = [this](int i) { return ((i % size) + size) % size; };
    return at(wrap(v + half), wrap(u + half));
}

std::vector<double> FeatureVector::flatten() const {
    std::vector<double> out;
    out.reserve(radial.size() + directional.size() + axis.size() + nyquist.size());
    out.insert(out.end(), radial.begin(), radial.end());
    out.insert(out.end(), directional.begin(), directional.end());
    out.insert(out.end(), axis.begin(), axis.end());
    out.insert(out.end(), nyquist.begin(), nyquist.end());
    return out;
}

Raster median_filter(const Raster& gray, int median_k) {
    if (median_k < 3 || median_k % 2 == 0) throw Error(ErrorCode::EvenWindow, "median window must be odd and >= 3");
    if (gray.channels() != 1) throw Error(ErrorCode::InvalidArgument, "median filter expects a single-channel raster");
    const int r = median_k / 2;
    const int w = gray.width(), h = gray.height();
    std::vector<int> xs(static_cast<std::size_t>(w) + 2 * r), ys(static_cast<std::size_t>(h) + 2 * r);
    for (int i = -r; i < w + r; ++i) xs[i + r] = reflect_index(i, w);
    for (int i = -r; i < h + r; ++i) ys[i + r] = reflect_index(i, h);

    Raster out(w, h, 1);
    std::vector<double> window(static_cast<std::size_t>(median_k) * median_k);
    const auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::size_t n = 0;
            for (int dy = 0; dy < median_k; ++dy)
                for (int dx = 0; dx < median_k; ++dx) window[n++] = gray.at(xs[x + dx], ys[y + dy]);
            std::nth_element(window.begin(), mid, window.end());
            out.at(x, y) = *mid;
        }
    return out;
}

Raster highpass_residual(const Raster& gray, int median_k) {
    const Raster med = median_filter(gray, median_k);
    Raster out = gray;
    auto d = out.data();
    const auto m = med.data();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= m[i];
    return out;
}

Spectrum centered_magnitude(const Raster& residual) {
    if (residual.channels() != 1) throw Error(ErrorCode::InvalidArgument, "spectrum expects a single-channel raster");
    if (residual.width() != residual.height())
        throw Error(ErrorCode::NonSquareInput, "spectrum input must be square");
    const int n = residual.width();
    std::vector<fft::Complex> grid(residual.data().begin(), residual.data().end());
    fft::transform_2d(grid, n, n, false);

    Spectrum spec;
    spec.size = n;
    spec.dc_centered = true;
    spec.values.resize(grid.size());
    const int half = n / 2;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            spec.at((r + half) % n, (c + half) % n) = std::abs(grid[static_cast<std::size_t>(r) * n + c]);
    return spec;
}

Spectrum fft_log_spectrum(const Raster& residual, double epsilon) {
    if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    Spectrum spec = centered_magnitude(residual);
    for (double& v : spec.values) v = std::log(v + epsilon);
    return spec;
}

Spectrum image_log_spectrum(const Raster& img, int median_k, double epsilon) {
    const Raster gray = center_crop_square(to_grayscale(img));
    return fft_log_spectrum(highpass_residual(gray, median_k), epsilon);
}

namespace {

// Pairwise sum of deviations from `base` over [lo, hi) in index order.
std::vector<double> pairwise_deviation_sum(const std::vector<Spectrum>& specs, const std::vector<double>& base,
                                           std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) {
        std::vector<double> d = specs[lo].values;
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= base[i];
        return d;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    std::vector<double> left = pairwise_deviation_sum(specs, base, lo, mid);
    const std::vector<double> right = pairwise_deviation_sum(specs, base, mid, hi);
    for (std::size_t i = 0; i < left.size(); ++i) left[i] += right[i];
    return left;
}

constexpr std::size_t kChunk = 64;

}  // namespace

Spectrum mean_spectrum(std::size_t count, const std::function<Raster(std::size_t)>& load, int median_k,
                       double epsilon, unsigned threads) {
    if (count == 0) throw Error(ErrorCode::EmptySet, "mean spectrum needs at least one image");
    // mean = s0 + sum(s_i - s0) / K, which is exact when all inputs agree. Chunks have
    // fixed boundaries and are reduced pairwise, then accumulated in order.
    Spectrum base;
    std::vector<double> total;
    std::vector<Spectrum> specs;
    for (std::size_t lo = 0; lo < count; lo += kChunk) {
        const std::size_t hi = std::min(count, lo + kChunk);
        specs.assign(hi - lo, Spectrum{});
        parallel_for(hi - lo, threads, [&](std::size_t i) { specs[i] = image_log_spectrum(load(lo + i), median_k, epsilon); });
        if (lo == 0) base = specs.front();
        for (const auto& s : specs)
            if (s.size != base.size) throw Error(ErrorCode::MixedSizes, "images differ in size");
        std::vector<double> dev = pairwise_deviation_sum(specs, base.values, 0, specs.size());
        if (total.empty()) {
            total = std::move(dev);
        } else {
            for (std::size_t i = 0; i < total.size(); ++i) total[i] += dev[i];
        }
    }
    const double inv = 1.0 / static_cast<double>(count);
    for (std::size_t i = 0; i < base.values.size(); ++i) base.values[i] += total[i] * inv;
    return base;
}

Spectrum mean_spectrum(std::span<const Raster> images, int median_k, double epsilon, unsigned threads) {
    return mean_spectrum(images.size(), [&](std::size_t i) { return images[i]; }, median_k, epsilon, threads);
}

SpectrumLayout spectrum_layout(int size, int bands) {
    if (size < 1 || bands < 1) throw Error(ErrorCode::InvalidArgument, "layout needs positive size and band count");
    const int n = size;
    const int half = n / 2;
    const double rmax = n / 2.0;
    SpectrumLayout layout{n, bands, std::vector<int>(static_cast<std::size_t>(n) * n, -1),
                          std::vector<int>(static_cast<std::size_t>(n) * n, -1)};
    for (int row = 0; row < n; ++row) {
        const int v = row - half;
        for (int col = 0; col < n; ++col) {
            const int u = col - half;
            // One representative per conjugate pair: compare (v, u) with its
            // mirror in unshifted index space, lexicographically.
            const int iu = ((u % n) + n) % n, iv = ((v % n) + n) % n;
            const int mu = (n - iu) % n, mv = (n - iv) % n;
            if (std::pair(iv, iu) > std::pair(mv, mu)) continue;

            const std::size_t idx = static_cast<std::size_t>(row) * n + col;
            const double radius = std::sqrt(static_cast<double>(u) * u + static_cast<double>(v) * v) / rmax;
            layout.band[idx] = std::min(static_cast<int>(radius * bands), bands - 1);
            // Sectors stop at the inscribed circle; the corners would otherwise
            // favour the diagonals.
            if ((u == 0 && v == 0) || radius >= 1.0) continue;
            double angle = std::atan2(static_cast<double>(v), static_cast<double>(u)) * 180.0 / std::numbers::pi;
            if (angle < 0) angle += 180.0;
            layout.sector[idx] = static_cast<int>(std::floor((angle + 22.5) / 45.0)) % 4;
        }
    }
    return layout;
}

FeatureVector extract_features(const Spectrum& spec, int bands) {
    if (!spec.dc_centered) throw Error(ErrorCode::InvalidArgument, "features need a DC-centered spectrum");
    if (bands < 1) throw Error(ErrorCode::InvalidArgument, "band count must be positive");
    const int n = spec.size;
    const int half = n / 2;
    const SpectrumLayout layout = spectrum_layout(n, bands);

    std::vector<double> band_sum(bands, 0.0);
    std::vector<int> band_count(bands, 0);
    std::vector<std::array<double, 4>> cell_sum(bands, {0, 0, 0, 0});
    std::vector<std::array<int, 4>> cell_count(bands, {0, 0, 0, 0});
    double hsum = 0.0, vsum = 0.0;
    int hcount = 0, vcount = 0;

    for (int row = 0; row < n; ++row)
        for (int col = 0; col < n; ++col) {
            const std::size_t idx = static_cast<std::size_t>(row) * n + col;
            const int b = layout.band[idx];
            if (b < 0) continue;
            const double value = spec.values[idx];
            band_sum[b] += value;
            ++band_count[b];
            const int sector = layout.sector[idx];
            if (sector < 0) continue;
            cell_sum[b][sector] += value;
            ++cell_count[b][sector];
            if (row == half) {
                hsum += value;
                ++hcount;
            }
            if (col == half) {
                vsum += value;
                ++vcount;
            }
        }

    FeatureVector f;
    f.radial.resize(bands);
    for (int b = 0; b < bands; ++b) {
        // Tiny grids leave inner annuli empty; borrow the nearest populated band.
        if (band_count[b] > 0) {
            f.radial[b] = band_sum[b] / band_count[b];
        } else {
            int nb = b;
            for (int d = 1; d < bands; ++d) {
                if (b - d >= 0 && band_count[b - d] > 0) { nb = b - d; break; }
                if (b + d < bands && band_count[b + d] > 0) { nb = b + d; break; }
            }
            f.radial[b] = band_count[nb] > 0 ? band_sum[nb] / band_count[nb] : 0.0;
        }
    }

    // Directional means are averaged annulus by annulus over annuli that hold
    // all four sectors, so a purely radial profile yields four equal entries.
    f.directional.assign(4, 0.0);
    int used = 0;
    for (int b = 0; b < bands; ++b) {
        const auto& cnt = cell_count[b];
        if (cnt[0] == 0 || cnt[1] == 0 || cnt[2] == 0 || cnt[3] == 0) continue;
        for (int s = 0; s < 4; ++s) f.directional[s] += cell_sum[b][s] / cnt[s];
        ++used;
    }
    if (used > 0)
        for (double& d : f.directional) d /= used;

    f.axis = {hcount > 0 ? hsum / hcount : 0.0, vcount > 0 ? vsum / vcount : 0.0};
    const int ny = n / 2;
    f.nyquist = {spec.at_frequency(ny, 0), spec.at_frequency(0, ny), spec.at_frequency(ny, ny)};
    return f;
}

FeatureVector image_features(const Raster& img, const SpectrumConfig& cfg) {
    return extract_features(image_log_spectrum(img, cfg.median_k, cfg.epsilon), cfg.bands);
}

Raster spectrum_to_raster(const Spectrum& spec) {
    if (spec.size <= 0) throw Error(ErrorCode::ZeroDimension, "empty spectrum");
    const auto [lo, hi] = std::minmax_element(spec.values.begin(), spec.values.end());
    const double range = *hi - *lo;
    Raster out(spec.size, spec.size, 1);
    auto d = out.data();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = range > 0.0 ? (spec.values[i] - *lo) / range * 255.0 : 0.0;
    return out;
}

void export_spectrum_image(const Spectrum& spec, const std::filesystem::path& path) {
    save_image(spectrum_to_raster(spec), path);
}

}  // namespace freqspec
