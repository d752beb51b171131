// Minimal in-place radix-2 FFT, enough for circulant embedding and the
// Fourier-multiplier test oracles. Length must be a power of two.

#pragma once

#include <complex>
#include <vector>

namespace bgm {

void fft(std::vector<std::complex<double>>& a, bool inverse);

} // namespace bgm
