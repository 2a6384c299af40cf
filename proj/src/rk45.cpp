#include "biofilm/rk45.hpp"

#include <algorithm>
#include <cmath>

#include "biofilm/errors.hpp"

namespace biofilm {
namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
// 5th-order minus embedded 4th-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// PI controller constants (Hairer & Wanner's DOPRI5 defaults).
constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - 0.75 * kBeta;
constexpr double kMaxShrink = 5.0;  // h_new >= h / 5
constexpr double kMaxGrow = 0.1;    // h_new <= h / 0.1

SpectralField combine(const SpectralField& y, double h, std::initializer_list<std::pair<double, const SpectralField*>> terms) {
  SpectralField out = y;
  for (const auto& [w, k] : terms) {
    if (w != 0.0) out.add_scaled(h * w, *k);
  }
  return out;
}

bool all_finite(const SpectralField& f) {
  for (const auto& c : f.data()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

double error_norm(const SpectralField& y, const SpectralField& y_new,
                  const SpectralField& k1, const SpectralField& k3, const SpectralField& k4,
                  const SpectralField& k5, const SpectralField& k6, const SpectralField& k7,
                  double h, const Rk45Options& opts) {
  const auto a = y.data();
  const auto b = y_new.data();
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Complex e = h * (e1 * k1.data()[i] + e3 * k3.data()[i] + e4 * k4.data()[i] +
                           e5 * k5.data()[i] + e6 * k6.data()[i] + e7 * k7.data()[i]);
    const double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
    const double r = std::abs(e) / sc;
    if (!std::isfinite(r)) return r;
    err = std::max(err, r);
  }
  return err;
}

}  // namespace

Rk45Result integrate_rk45(SpectralField y0, double t0, double t_end, const Rhs& rhs,
                          const Rk45Options& opts,
                          const std::function<void(SpectralField&)>& project,
                          const std::function<bool(const AcceptedStep&)>& observer) {
  if (!(opts.abs_tol > 0.0) || !(opts.rel_tol > 0.0)) {
    throw ArgumentError("integrate_rk45: tolerances must be positive");
  }
  if (opts.fixed_dt && !(*opts.fixed_dt > 0.0)) {
    throw ArgumentError("integrate_rk45: fixed_dt must be positive");
  }
  if (!opts.fixed_dt && !(opts.dt_min < opts.dt_init)) {
    throw ArgumentError("integrate_rk45: dt_min must be below dt_init");
  }
  if (!all_finite(y0)) throw NumericalFailure("integrate_rk45: initial state is not finite");

  Rk45Result result{Rk45Stop::reached_end, t0, std::move(y0)};
  SpectralField& y = result.y;
  double t = t0;
  SpectralField k1 = rhs(t, y);

  double h = opts.fixed_dt ? *opts.fixed_dt : opts.dt_init;
  double fac_old = 1e-4;
  bool last_rejected = false;

  while (t < t_end) {
    if (!opts.fixed_dt && h < opts.dt_min) {
      result.stop = Rk45Stop::dt_underflow;
      break;
    }
    const double remaining = t_end - t;
    const bool final_step = h >= remaining;
    const double step = final_step ? remaining : h;

    const SpectralField k2 = rhs(t + c2 * step, combine(y, step, {{a21, &k1}}));
    const SpectralField k3 = rhs(t + c3 * step, combine(y, step, {{a31, &k1}, {a32, &k2}}));
    const SpectralField k4 =
        rhs(t + c4 * step, combine(y, step, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const SpectralField k5 = rhs(
        t + c5 * step, combine(y, step, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const SpectralField k6 =
        rhs(t + step,
            combine(y, step, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    SpectralField y_new =
        combine(y, step, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    SpectralField k7 = rhs(t + step, y_new);

    double err = 0.0;
    if (!opts.fixed_dt) {
      err = error_norm(y, y_new, k1, k3, k4, k5, k6, k7, step, opts);
      if (!std::isfinite(err)) {
        ++result.rejected;
        h = step / kMaxShrink;
        last_rejected = true;
        continue;
      }
      const double fac11 = std::pow(err, kExpo);
      if (err > 1.0) {
        ++result.rejected;
        h = step / std::min(kMaxShrink, fac11 / kSafety);
        last_rejected = true;
        continue;
      }
      double fac = fac11 / std::pow(fac_old, kBeta);
      fac = std::clamp(fac / kSafety, kMaxGrow, kMaxShrink);
      double h_next = step / fac;
      if (last_rejected) h_next = std::min(h_next, step);
      fac_old = std::max(err, 1e-4);
      last_rejected = false;
      // Keep the controller's proposal when the step was only shortened to hit t_end.
      h = final_step ? std::max(h_next, h) : h_next;
    }

    if (!all_finite(y_new)) {
      throw NumericalFailure("integrate_rk45: state became non-finite at t = " +
                             std::to_string(t + step));
    }
    t = final_step ? t_end : t + step;
    if (project) {
      SpectralField projected = y_new;
      project(projected);
      if (!(projected == y_new)) {
        y_new = std::move(projected);
        k7 = rhs(t, y_new);
      }
    }
    y = std::move(y_new);
    k1 = std::move(k7);
    ++result.accepted;
    result.t = t;

    if (observer && !observer(AcceptedStep{t, step, y, k1})) {
      result.stop = Rk45Stop::observer;
      return result;
    }
  }
  result.t = t;
  return result;
}

}  // namespace biofilm
