#include "biofilm/fmodel.hpp"

#include <cmath>
#include <string>

#include "biofilm/diagnostics.hpp"
#include "biofilm/errors.hpp"

namespace biofilm {
namespace {

void require_mean_zero(const SpectralField& f, const char* where) {
  if (std::abs(f.coeff(0)) > 1e-12) {
    throw ContractError(std::string(where) + ": input must have zero mean (mean = " +
                        std::to_string(f.coeff(0).real()) + ")");
  }
}

void require_autonomous(const ModelParams& p) {
  if (std::abs(p.alpha + 3.0) > 1e-12 || std::abs(p.k_over_r0() - 1.0) > 1e-12) {
    throw ArgumentError("rhs_autonomous: requires alpha = -3 and K/R0 = 1");
  }
}

void zero_mean(SpectralField& f) { f.data()[0] = Complex{}; }

}  // namespace

SpectralField nonlinear_part(const SpectralField& f, double t, const ModelParams& p) {
  const double w = p.growth_weight(t);
  const SpectralField lf = apply_L(f, t, p);
  const SpectralField fx = derivative(f);
  const SpectralField lfx = apply_L(fx, t, p);

  SpectralField inner = (1.5 * w) * derivative(multiply(fx, lf));
  inner.add_scaled(3.0 * w, derivative(multiply(lfx, f)));
  inner.add_scaled(3.0 * p.l_amplitude() * w, derivative(multiply(fx, f)));
  SpectralField out = apply_Q(inner, t, p);
  zero_mean(out);
  return out;
}

SpectralField rhs_nonautonomous(const SpectralField& f, double t, const ModelParams& p) {
  require_mean_zero(f, "rhs_nonautonomous");
  SpectralField out = apply_L(f, t, p) + nonlinear_part(f, t, p);
  zero_mean(out);
  return out;
}

SpectralField rhs_autonomous(const SpectralField& f, const ModelParams& p) {
  require_autonomous(p);
  require_mean_zero(f, "rhs_autonomous");
  const SpectralField lf = apply_L_autonomous(f);
  const SpectralField fx = derivative(f);
  const SpectralField lfx = apply_L_autonomous(fx);

  SpectralField smoothed = 1.5 * derivative(multiply(fx, lf));
  smoothed.add_scaled(3.0, derivative(multiply(lfx, f)));

  SpectralField out = lf + apply_Q_autonomous(smoothed);
  out.add_scaled(1.5, apply_L_autonomous(multiply(f, f)));
  zero_mean(out);
  return out;
}

SpectralField rhs_linearized(const SpectralField& g, double t, const ModelParams& p) {
  require_mean_zero(g, "rhs_linearized");
  const double w = p.growth_weight(t);
  const SpectralField lg = apply_L(g, t, p);
  SpectralField out = (3.0 * w) * apply_Q(derivative(lg, 2), t, p);
  out.add_scaled(4.0, lg);
  zero_mean(out);
  return out;
}

SpectralField rhs_linearized_autonomous(const SpectralField& g) {
  require_mean_zero(g, "rhs_linearized_autonomous");
  const SpectralField lg = apply_L_autonomous(g);
  SpectralField out = 3.0 * apply_L_autonomous(lg);
  out.add_scaled(4.0, lg);
  zero_mean(out);
  return out;
}

std::string_view to_string(FModelKind kind) {
  switch (kind) {
    case FModelKind::nonautonomous: return "nonautonomous";
    case FModelKind::autonomous: return "autonomous";
    case FModelKind::linearized: return "linearized";
    case FModelKind::linearized_autonomous: return "linearized_autonomous";
  }
  return "unknown";
}

FModelKind fmodel_kind_from_string(std::string_view name) {
  for (auto k : {FModelKind::nonautonomous, FModelKind::autonomous, FModelKind::linearized,
                 FModelKind::linearized_autonomous}) {
    if (to_string(k) == name) return k;
  }
  throw ArgumentError("unknown f-model kind '" + std::string(name) + "'");
}

Rhs make_rhs(FModelKind kind, const ModelParams& p) {
  switch (kind) {
    case FModelKind::nonautonomous:
      return [p](double t, const SpectralField& f) { return rhs_nonautonomous(f, t, p); };
    case FModelKind::autonomous:
      require_autonomous(p);
      return [p](double, const SpectralField& f) { return rhs_autonomous(f, p); };
    case FModelKind::linearized:
      return [p](double t, const SpectralField& g) { return rhs_linearized(g, t, p); };
    case FModelKind::linearized_autonomous:
      return [](double, const SpectralField& g) { return rhs_linearized_autonomous(g); };
  }
  throw ArgumentError("make_rhs: unknown kind");
}

void IntegratorConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw ArgumentError("integrator: tolerances must be > 0");
  if (!(dt_min < dt_init)) throw ArgumentError("integrator: dt_min must be < dt_init");
  if (!(blowup_cap > 0.0)) throw ArgumentError("integrator: blowup_cap must be > 0");
  if (!(t_end >= 0.0)) throw ArgumentError("integrator: t_end must be >= 0");
  if (snapshot_stride < 1) throw ArgumentError("integrator: snapshot_stride must be >= 1");
  if (fixed_dt && !(*fixed_dt > 0.0)) throw ArgumentError("integrator: fixed_dt must be > 0");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::reached_t_end: return "reached_t_end";
    case Termination::blowup_cap_hit: return "blowup_cap_hit";
    case Termination::dt_underflow: return "dt_underflow";
  }
  return "unknown";
}

RunRecord integrate(const SpectralField& f0, const Rhs& rhs, const IntegratorConfig& cfg,
                    const ModelParams& p) {
  cfg.validate();
  require_mean_zero(f0, "integrate");

  RunRecord rec;
  auto record_row = [&](double t, double dt, const SpectralField& f) {
    const FieldNorms n = norms(f);
    double cont = 0.0;
    if (!rec.times.empty()) {
      const double t_prev = rec.times.back();
      cont = rec.continuation_integral.back() +
             0.5 * (t - t_prev) *
                 (continuation_integrand(rec.sup_norms.back(), t_prev, p) +
                  continuation_integrand(n.linf, t, p));
    }
    rec.times.push_back(t);
    rec.dts.push_back(dt);
    rec.sup_norms.push_back(n.linf);
    rec.h2_norms.push_back(n.h2);
    rec.continuation_integral.push_back(cont);
    rec.energies.push_back(energy_E(f, t, p));
    rec.dissipations.push_back(dissipation_D(f, t, p));
    return n.linf;
  };

  SpectralField start = dealias(f0);
  start.data()[0] = Complex{};
  record_row(0.0, 0.0, start);
  rec.snapshot_times.push_back(0.0);
  rec.snapshots.push_back(start);

  Rk45Options opts;
  opts.abs_tol = cfg.abs_tol;
  opts.rel_tol = cfg.rel_tol;
  opts.dt_init = cfg.dt_init;
  opts.dt_min = cfg.dt_min;
  opts.fixed_dt = cfg.fixed_dt;

  int accepted = 0;
  bool capped = rec.sup_norms.back() > cfg.blowup_cap;

  auto project = [](SpectralField& f) {
    f = dealias(f);
    f.data()[0] = Complex{};
  };
  auto observer = [&](const AcceptedStep& s) {
    ++accepted;
    const double linf = record_row(s.t, s.dt, s.y);
    if (accepted % cfg.snapshot_stride == 0) {
      rec.snapshot_times.push_back(s.t);
      rec.snapshots.push_back(s.y);
    }
    if (linf > cfg.blowup_cap) {
      capped = true;
      return false;
    }
    return true;
  };

  if (capped) {
    rec.termination = Termination::blowup_cap_hit;
    return rec;
  }
  const Rk45Result r = integrate_rk45(start, 0.0, cfg.t_end, rhs, opts, project, observer);
  rec.rejected_steps = r.rejected;
  if (capped) {
    rec.termination = Termination::blowup_cap_hit;
  } else if (r.stop == Rk45Stop::dt_underflow) {
    rec.termination = Termination::dt_underflow;
  } else {
    rec.termination = Termination::reached_t_end;
  }
  if (rec.snapshot_times.back() != rec.times.back()) {
    rec.snapshot_times.push_back(rec.times.back());
    rec.snapshots.push_back(r.y);
  }
  return rec;
}

RunRecord integrate(const SpectralField& f0, FModelKind kind, const IntegratorConfig& cfg,
                    const ModelParams& p) {
  return integrate(f0, make_rhs(kind, p), cfg, p);
}

}  // namespace biofilm
