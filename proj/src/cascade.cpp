#include "biofilm/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "biofilm/errors.hpp"
#include "biofilm/fmodel.hpp"

namespace biofilm {
namespace {

void require_mean_zero(const SpectralField& f, const char* where) {
  if (std::abs(f.coeff(0)) > 1e-12) throw ContractError(std::string(where) + ": mean must be zero");
}

void project_mean_zero(SpectralField& f) { f.data()[0] = Complex{}; }

Trajectory run(const SpectralField& y0, double t0, double t1, const Rhs& rhs,
               const Rk45Options& opts) {
  Trajectory traj;
  traj.times.push_back(t0);
  traj.states.push_back(y0);
  traj.derivatives.push_back(rhs(t0, y0));
  auto observer = [&](const AcceptedStep& s) {
    traj.times.push_back(s.t);
    traj.states.push_back(s.y);
    traj.derivatives.push_back(s.dydt);
    return true;
  };
  const Rk45Result r = integrate_rk45(y0, t0, t1, rhs, opts, project_mean_zero, observer);
  if (r.stop != Rk45Stop::reached_end) {
    throw NumericalFailure("cascade: step size underflow at t = " + std::to_string(r.t));
  }
  return traj;
}

}  // namespace

SpectralField Trajectory::at(double t) const {
  if (times.empty()) throw ArgumentError("Trajectory::at: empty trajectory");
  const double slack = 1e-12 * std::max(1.0, std::abs(t_end()));
  if (t < t_begin() - slack || t > t_end() + slack) {
    throw ArgumentError("Trajectory::at: t = " + std::to_string(t) + " outside [" +
                        std::to_string(t_begin()) + ", " + std::to_string(t_end()) + "]");
  }
  if (times.size() == 1) return states.front();
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t i = it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin()) - 1;
  i = std::min(i, times.size() - 2);
  const double h = times[i + 1] - times[i];
  const double s = std::clamp((t - times[i]) / h, 0.0, 1.0);
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  SpectralField out = h00 * states[i];
  out.add_scaled(h10 * h, derivatives[i]);
  out.add_scaled(h01, states[i + 1]);
  out.add_scaled(h11 * h, derivatives[i + 1]);
  return out;
}

Rk45Options cascade_default_options() {
  Rk45Options opts;
  opts.abs_tol = 1e-14;
  opts.rel_tol = 1e-12;
  opts.dt_init = 1e-3;
  opts.dt_min = 1e-14;
  return opts;
}

Trajectory solve_g0(const SpectralField& g0_init, double t0, double t1, const ModelParams& p,
                    const Rk45Options& opts) {
  require_mean_zero(g0_init, "solve_g0");
  const Rhs rhs = [p](double t, const SpectralField& g) { return apply_L(g, t, p); };
  return run(g0_init, t0, t1, rhs, opts);
}

SpectralField g1_forcing(const SpectralField& g0, double t, const ModelParams& p) {
  return nonlinear_part(g0, t, p);
}

Trajectory solve_g1(const Trajectory& g0, const SpectralField& g1_init, double t0, double t1,
                    const ModelParams& p, const Rk45Options& opts) {
  require_mean_zero(g1_init, "solve_g1");
  const double slack = 1e-12 * std::max(1.0, std::abs(t1));
  if (g0.times.empty() || t0 < g0.t_begin() - slack || t1 > g0.t_end() + slack) {
    throw ArgumentError("solve_g1: time span is not covered by the g0 trajectory");
  }
  if (!(g0.final_state().grid() == g1_init.grid())) {
    throw ArgumentError("solve_g1: g0 and g1 live on different grids");
  }
  const Rhs rhs = [&g0, p](double t, const SpectralField& g1) {
    SpectralField out = apply_L(g1, t, p);
    out += g1_forcing(g0.at(t), t, p);
    return out;
  };
  return run(g1_init, t0, t1, rhs, opts);
}

CascadeComparison compose_and_compare(const SpectralField& f0, double epsilon, double t_end,
                                      const ModelParams& p, const Rk45Options& opts) {
  require_mean_zero(f0, "compose_and_compare");
  if (!(epsilon >= 0.0)) throw ArgumentError("compose_and_compare: epsilon must be >= 0");

  CascadeComparison out{0.0, SpectralField(f0.grid()), SpectralField(f0.grid()), {}};
  out.pair.epsilon = epsilon;
  out.pair.g0 = solve_g0(f0, 0.0, t_end, p, opts);
  out.pair.g1 = solve_g1(out.pair.g0, SpectralField(f0.grid()), 0.0, t_end, p, opts);

  const Rhs direct_rhs = [p](double t, const SpectralField& f) {
    return rhs_nonautonomous(f, t, p);
  };
  const Rk45Result direct =
      integrate_rk45(epsilon * f0, 0.0, t_end, direct_rhs, opts, project_mean_zero, {});
  if (direct.stop != Rk45Stop::reached_end) {
    throw NumericalFailure("compose_and_compare: direct solve did not reach t_end");
  }
  out.direct = direct.y;
  out.composed = epsilon * out.pair.g0.final_state();
  out.composed.add_scaled(epsilon * epsilon, out.pair.g1.final_state());
  out.err_norm = norms(out.direct - out.composed).h2;
  return out;
}

}  // namespace biofilm
