#pragma once

#include <cstddef>
#include <vector>

#include "kdv2/util.hpp"

namespace kdv2::fft {

/// Unnormalized forward DFT, X_k = sum_j x_j e^{-2*pi*i*j*k/N}, in place.
void forward(std::vector<cplx>& data);

/// Inverse DFT including the 1/N factor, so inverse(forward(x)) == x.
void inverse(std::vector<cplx>& data);

/// Row-major 2-D transforms over (nrows x ncols).
void forward2d(std::vector<cplx>& data, std::size_t nrows, std::size_t ncols);
void inverse2d(std::vector<cplx>& data, std::size_t nrows, std::size_t ncols);

/// Angular frequency of DFT bin k for n samples at spacing `step`
/// (negative frequencies in the upper half).
inline double bin_freq(std::size_t k, std::size_t n, double step) {
    const double kk = (k < n / 2) ? double(k) : double(k) - double(n);
    return 2.0 * pi * kk / (double(n) * step);
}

} // namespace kdv2::fft
