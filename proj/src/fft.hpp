#pragma once

#include <complex>
#include <span>

namespace biofilm::detail {

/// Unnormalized real-to-complex transform: out has n/2 + 1 entries.
void forward_r2c(std::span<const double> in, std::span<std::complex<double>> out);
/// Unnormalized complex-to-real transform from the nonnegative half spectrum.
void inverse_c2r(std::span<const std::complex<double>> in, std::span<double> out);

const char* fft_backend_version();

}  // namespace biofilm::detail
