#pragma once

#include <complex>
#include <span>

namespace psido::fft {

// Thin FFTW wrappers. Plans are cached per (size, direction); execution is
// safe from several threads. Neither transform is normalized.

void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
void backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

}  // namespace psido::fft
