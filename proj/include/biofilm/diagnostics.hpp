#pragma once

#include <span>

#include "biofilm/field.hpp"
#include "biofilm/multipliers.hpp"

namespace biofilm {

/// Growth rate of Fourier mode n under the autonomous linear model:
/// 3n^4 / (4 (1+n^2)^2) + 2n^2 / (1+n^2). Bounded by 11/4.
double dispersion_lambda(double n);

/// Linear stability of the constant state c of the slab equation.
struct StabilityQuery {
  double c = 1.0;
  double wavenumber = 1.0;
  double delta = 0.0;
  double t = 0.0;
  ModelParams params;
  /// Multiply the capillary term by e^{2t}. Off reproduces the time-free form.
  bool capillary_time_factor = true;
};

/// beta = ((c^3 K / 2R0) a^2 - delta^2 e^{2t} c^2 a^2) / (1 + (c^3 K / R0) a^2)
double planewave_beta(const StabilityQuery& q);

/// (K/R0) e^{(3+alpha)t} (1 + ||f||_inf)
double continuation_integrand(double f_linf, double t, const ModelParams& p);

/// Trapezoid accumulation of the integrand along (times, sup norms);
/// returns the cumulative integral at every time.
std::vector<double> continuation_integral(std::span<const double> times,
                                          std::span<const double> sup_norms,
                                          const ModelParams& p);

/// E(t) = ||f_x||^2 + (K/R0) e^{(3+alpha)t} ||f_xx||^2
double energy_E(const SpectralField& f, double t, const ModelParams& p);
/// D(t) = e^{(3+alpha)t} ||f_xx||^2
double dissipation_D(const SpectralField& f, double t, const ModelParams& p);
/// (K/R0) (1 + alpha/2); positive exactly when alpha > -2.
double gamma_threshold(const ModelParams& p);

}  // namespace biofilm
