#pragma once

#include <complex>
#include <vector>

namespace nsalpha::fft {

// In-place 2D complex DFT on an N x N row-major array.
// forward: exp(-i k x) convention, unnormalized (matches FFTW_FORWARD).
// inverse: exp(+i k x), unnormalized; caller divides by N^2 where needed.
// Thread-safe: plans are cached per (N, direction) in thread-local storage.
void forward2d(std::vector<std::complex<double>>& data, int n);
void inverse2d(std::vector<std::complex<double>>& data, int n);

}  // namespace nsalpha::fft
