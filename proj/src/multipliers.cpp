#include "biofilm/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "biofilm/errors.hpp"

namespace biofilm {
namespace {

constexpr double kOverflowExponent = 700.0;

// log(w(t) k^2), or -inf at k == 0.
double log_weight(double k, double t, const ModelParams& p) {
  return (3.0 + p.alpha) * t + std::log(p.k_over_r0() * k * k);
}

}  // namespace

ModelParams ModelParams::autonomous() {
  ModelParams p;
  p.K = 1.0;
  p.R0 = 1.0;
  p.alpha = -3.0;
  return p;
}

void ModelParams::validate() const {
  if (!(K > 0.0)) throw ArgumentError("ModelParams: K must be positive");
  if (!(R0 > 0.0)) throw ArgumentError("ModelParams: R0 must be positive");
  if (!(epsilon > 0.0)) throw ArgumentError("ModelParams: epsilon must be positive");
  if (!(h_inf > 0.0)) throw ArgumentError("ModelParams: h_inf must be positive");
  if (!(delta >= 0.0)) throw ArgumentError("ModelParams: delta must be nonnegative");
  if (!std::isfinite(alpha)) throw ArgumentError("ModelParams: alpha must be finite");
}

double ModelParams::growth_weight(double t) const {
  return k_over_r0() * std::exp((3.0 + alpha) * t);
}

double q_symbol(double k, double t, const ModelParams& p) {
  if (k == 0.0) return 1.0;
  const double e = log_weight(k, t, p);
  if (e > kOverflowExponent) return 0.0;
  return 1.0 / (1.0 + std::exp(e));
}

double l_symbol(double k, double t, const ModelParams& p) {
  if (k == 0.0) return 0.0;
  const double e = log_weight(k, t, p);
  if (e > kOverflowExponent) return -p.l_amplitude();
  const double w = std::exp(e);
  // Rounding can push w / (1 + w) one ulp past 1 for huge w.
  return -p.l_amplitude() * std::min(w / (1.0 + w), 1.0);
}

SpectralField apply_Q(const SpectralField& f, double t, const ModelParams& p) {
  return apply_symbol(f, [&](double k) { return q_symbol(k, t, p); });
}

SpectralField apply_L(const SpectralField& f, double t, const ModelParams& p) {
  return apply_symbol(f, [&](double k) { return l_symbol(k, t, p); });
}

SpectralField apply_Q_autonomous(const SpectralField& f) {
  return apply_symbol(f, [](double k) { return 1.0 / (1.0 + k * k); });
}

SpectralField apply_L_autonomous(const SpectralField& f) {
  return apply_symbol(f, [](double k) { return k * k / (2.0 * (1.0 + k * k)); });
}

double greens_value(double x, double t, const ModelParams& p) {
  constexpr double pi = std::numbers::pi;
  const double lambda = std::sqrt(p.growth_weight(t));
  const double y = x - 2.0 * pi * std::floor(x / (2.0 * pi)) - pi;
  // cosh(y/l) / sinh(pi/l) rewritten with decaying exponentials only.
  const double a = std::abs(y);
  const double num = std::exp((a - pi) / lambda) + std::exp((-a - pi) / lambda);
  const double den = 1.0 - std::exp(-2.0 * pi / lambda);
  return num / (2.0 * lambda * den);
}

std::vector<double> greens_function(double t, const ModelParams& p, const GridSpec& grid) {
  if (std::abs(grid.period() - 2.0 * std::numbers::pi) > 1e-12) {
    throw UnsupportedConfiguration("greens_function: kernel is defined on the 2*pi torus only");
  }
  std::vector<double> g;
  g.reserve(grid.n_nodes());
  for (double x : grid.nodes()) g.push_back(greens_value(x, t, p));
  return g;
}

}  // namespace biofilm
