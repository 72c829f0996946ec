#include <freqspec/fft.hpp>

#include <freqspec/error.hpp>

#include <bit>
#include <cmath>
#include <numbers>

namespace freqspec::fft {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void radix2(std::span<Complex> a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        // Twiddles computed directly rather than by recurrence to keep roundoff at O(eps log n).
        std::vector<Complex> w(half);
        for (std::size_t k = 0; k < half; ++k) {
            const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len);
            w[k] = {std::cos(ang), std::sin(ang)};
        }
        for (std::size_t i = 0; i < n; i += len)
            for (std::size_t k = 0; k < half; ++k) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + half] * w[k];
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
    }
}

void bluestein(std::span<Complex> a, bool inverse) {
    const std::size_t n = a.size();
    const std::size_t m = std::bit_ceil(2 * n - 1);
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<Complex> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the angle argument small for large k.
        const std::size_t k2 = (k * k) % (2 * n);
        const double ang = sign * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
        chirp[k] = {std::cos(ang), std::sin(ang)};
    }
    std::vector<Complex> x(m), y(m);
    for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * chirp[k];
    y[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) y[k] = y[m - k] = std::conj(chirp[k]);
    radix2(x, false);
    radix2(y, false);
    for (std::size_t k = 0; k < m; ++k) x[k] *= y[k];
    radix2(x, true);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * inv_m * chirp[k];
}

}  // namespace

void transform(std::span<Complex> data, bool inverse) {
    const std::size_t n = data.size();
    if (n <= 1) return;
    if (is_pow2(n)) {
        radix2(data, inverse);
    } else {
        bluestein(data, inverse);
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& v : data) v *= inv;
    }
}

void transform_2d(std::vector<Complex>& grid, int rows, int cols, bool inverse) {
    if (rows <= 0 || cols <= 0 || grid.size() != static_cast<std::size_t>(rows) * cols)
        throw Error(ErrorCode::ShapeMismatch, "fft grid size does not match rows*cols");
    for (int r = 0; r < rows; ++r) transform(std::span<Complex>(grid.data() + static_cast<std::size_t>(r) * cols, cols), inverse);
    std::vector<Complex> column(rows);
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) column[r] = grid[static_cast<std::size_t>(r) * cols + c];
        transform(column, inverse);
        for (int r = 0; r < rows; ++r) grid[static_cast<std::size_t>(r) * cols + c] = column[r];
    }
}

}  // namespace freqspec::fft
