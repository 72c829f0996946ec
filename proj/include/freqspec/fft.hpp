#pragma once

#include <complex>
#include <span>
#include <vector>

namespace freqspec::fft {

using Complex = std::complex<double>;

/// In-place 1-D DFT of any length (radix-2 for powers of two, Bluestein otherwise).
/// Forward is unnormalized, X[k] = sum_n x[n] exp(-2*pi*i*k*n/N); inverse divides by N.
void transform(std::span<Complex> data, bool inverse);

/// In-place 2-D DFT of a row-major rows x cols grid, same conventions.
void transform_2d(std::vector<Complex>& grid, int rows, int cols, bool inverse);

}  // namespace freqspec::fft
