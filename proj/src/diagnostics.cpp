#include "biofilm/diagnostics.hpp"

#include <cmath>
#include <vector>

#include "biofilm/errors.hpp"

namespace biofilm {

double dispersion_lambda(double n) {
  const double n2 = n * n;
  const double q = 1.0 + n2;
  return 3.0 * n2 * n2 / (4.0 * q * q) + 2.0 * n2 / q;
}

double planewave_beta(const StabilityQuery& q) {
  const double a2 = q.wavenumber * q.wavenumber;
  const double c3k = q.c * q.c * q.c * q.params.k_over_r0();
  const double cap = q.capillary_time_factor ? std::exp(2.0 * q.t) : 1.0;
  const double num = 0.5 * c3k * a2 - q.delta * q.delta * cap * q.c * q.c * a2;
  return num / (1.0 + c3k * a2);
}

double continuation_integrand(double f_linf, double t, const ModelParams& p) {
  if (f_linf < 0.0) throw ArgumentError("continuation_integrand: sup norm must be >= 0");
  return p.growth_weight(t) * (1.0 + f_linf);
}

std::vector<double> continuation_integral(std::span<const double> times,
                                          std::span<const double> sup_norms,
                                          const ModelParams& p) {
  if (times.size() != sup_norms.size()) {
    throw ArgumentError("continuation_integral: times and sup norms differ in length");
  }
  std::vector<double> out(times.size(), 0.0);
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double a = continuation_integrand(sup_norms[i - 1], times[i - 1], p);
    const double b = continuation_integrand(sup_norms[i], times[i], p);
    out[i] = out[i - 1] + 0.5 * (times[i] - times[i - 1]) * (a + b);
  }
  return out;
}

double energy_E(const SpectralField& f, double t, const ModelParams& p) {
  const double fx = hdot_norm(f, 1);
  const double fxx = hdot_norm(f, 2);
  return fx * fx + p.growth_weight(t) * fxx * fxx;
}

double dissipation_D(const SpectralField& f, double t, const ModelParams& p) {
  const double fxx = hdot_norm(f, 2);
  return std::exp((3.0 + p.alpha) * t) * fxx * fxx;
}

double gamma_threshold(const ModelParams& p) { return p.k_over_r0() * (1.0 + 0.5 * p.alpha); }

}  // namespace biofilm
