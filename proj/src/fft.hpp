#pragma once

// Thin wrapper over FFTW real transforms.  Plans are created once per size
// (FFTW_ESTIMATE, so results are deterministic) and executed with the
// new-array interface, which is safe to call from several threads.

#include <complex>
#include <span>

namespace asdflow::detail {

/// Unnormalised r2c: out[k] = sum_j in[j] e^{-2 pi i jk/n}, k = 0..n/2.
void forward_fft(std::span<const double> in, std::span<std::complex<double>> out);

/// Unnormalised c2r inverse.  `in` is consumed (FFTW overwrites it).
void inverse_fft(std::span<std::complex<double>> in, std::span<double> out);

}  // namespace asdflow::detail
