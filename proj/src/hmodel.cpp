#include "biofilm/hmodel.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "biofilm/errors.hpp"

namespace biofilm {

FdGrid::FdGrid(Geometry g, int n, double ext) : geometry(g), n_cells(n), extent(ext) {
  if (n < 8) throw ArgumentError("FdGrid: need at least 8 nodes");
  if (!(ext > 0.0)) throw ArgumentError("FdGrid: extent must be positive");
}

FdGrid FdGrid::with_spacing(Geometry g, double extent, double spacing) {
  if (!(spacing > 0.0)) throw ArgumentError("FdGrid: spacing must be positive");
  const double span = g == Geometry::radial ? extent : 2.0 * extent;
  const int n = static_cast<int>(std::lround(span / spacing)) + 1;
  return FdGrid(g, n, extent);
}

double FdGrid::spacing() const {
  const double span = geometry == Geometry::radial ? extent : 2.0 * extent;
  return span / (n_cells - 1);
}

double FdGrid::coord(int i) const {
  const double lo = geometry == Geometry::radial ? 0.0 : -extent;
  return lo + i * spacing();
}

std::vector<double> FdGrid::coords() const {
  std::vector<double> x(n_cells);
  for (int i = 0; i < n_cells; ++i) x[i] = coord(i);
  return x;
}

std::string_view to_string(HVariant v) {
  switch (v) {
    case HVariant::orig_radial: return "orig_radial";
    case HVariant::orig_slab: return "orig_slab";
    case HVariant::scaled_radial: return "scaled_radial";
    case HVariant::scaled_slab: return "scaled_slab";
  }
  return "unknown";
}

HVariant hvariant_from_string(std::string_view name) {
  for (auto v : {HVariant::orig_radial, HVariant::orig_slab, HVariant::scaled_radial,
                 HVariant::scaled_slab}) {
    if (to_string(v) == name) return v;
  }
  throw ArgumentError("unknown height-model variant '" + std::string(name) + "'");
}

Geometry geometry_of(HVariant v) {
  return v == HVariant::orig_radial || v == HVariant::scaled_radial ? Geometry::radial
                                                                    : Geometry::slab;
}

bool is_scaled(HVariant v) { return v == HVariant::scaled_radial || v == HVariant::scaled_slab; }

RadiusLaw RadiusLaw::self_similar(double K, double factor) {
  RadiusLaw law;
  law.kind_ = RadiusKind::self_similar;
  law.K_ = K;
  law.factor_ = factor;
  return law;
}

RadiusLaw RadiusLaw::exp_alpha(double alpha) {
  RadiusLaw law;
  law.kind_ = RadiusKind::exp_alpha;
  law.alpha_ = alpha;
  return law;
}

RadiusValue RadiusLaw::operator()(double t) const {
  if (kind_ == RadiusKind::exp_alpha) {
    const double e = std::exp(alpha_ * t);
    return {e, alpha_ * e};
  }
  const double e3 = std::exp(3.0 * t);
  const double base = 1.0 + factor_ * K_ * (e3 - 1.0);
  const double ratio = std::pow(base, 1.0 / 7.0);
  const double rate = ratio / (7.0 * base) * factor_ * K_ * 3.0 * e3;
  return {ratio, rate};
}

RadiusLaw radius_law(RadiusKind kind, double alpha, const ModelParams& p) {
  return kind == RadiusKind::self_similar ? RadiusLaw::self_similar(p.K)
                                          : RadiusLaw::exp_alpha(alpha);
}

namespace {

struct Coefficients {
  double diffusion;   // multiplies div(h^3 grad u)
  double transport;   // multiplies div(h_r h^2 u)
  double spreading;   // multiplies div(h^3 grad h) on the right side
  double capillary;   // multiplies div(h^2 grad h) on the right side
  double growth;      // multiplies h on the right side
};

Coefficients coefficients(double t, const ModelParams& p, HVariant variant,
                          const RadiusLaw& law) {
  const RadiusValue R = law(t);
  const double a = p.K * R.ratio;  // K R / R0
  const double b = p.K * R.rate;   // K R_t / R0
  if (is_scaled(variant)) {
    const double e3 = std::exp(3.0 * t);
    return {a * e3, 1.5 * a * e3, (2.5 * a + b) * e3, p.delta * p.delta * std::exp(2.0 * t),
            0.0};
  }
  return {a, 1.5 * a, b, p.delta * p.delta, 1.0};
}

}  // namespace

HtSystem assemble_ht_system(const HeightField& state, double t, const ModelParams& p,
                            HVariant variant, const RadiusLaw& law) {
  const FdGrid& g = state.grid;
  const int n = g.n_cells;
  if (static_cast<int>(state.h.size()) != n) {
    throw ArgumentError("assemble_ht_system: height array does not match the grid");
  }
  if (g.geometry != geometry_of(variant)) {
    throw ArgumentError("assemble_ht_system: grid geometry does not match the variant");
  }
  const Coefficients c = coefficients(t, p, variant, law);
  const double dr = g.spacing();
  const auto& h = state.h;
  const bool radial = g.geometry == Geometry::radial;

  // Half-node quantities between i and i+1.
  std::vector<double> h3(n - 1), h2(n - 1), slope(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    h3[i] = 0.5 * (h[i] * h[i] * h[i] + h[i + 1] * h[i + 1] * h[i + 1]);
    h2[i] = 0.5 * (h[i] * h[i] + h[i + 1] * h[i + 1]);
    slope[i] = (h[i + 1] - h[i]) / dr;
  }

  HtSystem sys{Tridiagonal(n), std::vector<double>(n, 0.0)};
  auto& m = sys.matrix;
  const int first = radial ? 0 : 1;
  for (int i = first; i < n - 1; ++i) {
    // div F_i = wp F_{i+1/2} - wm F_{i-1/2}
    double wp, wm;
    if (!radial) {
      wp = wm = 1.0 / dr;
    } else if (i == 0) {
      // (1/r)(rF)_r -> 2 F_r(0), with F odd about r = 0.
      wp = 4.0 / dr;
      wm = 0.0;
    } else {
      const double r = g.coord(i);
      wp = (r + 0.5 * dr) / (r * dr);
      wm = (r - 0.5 * dr) / (r * dr);
    }
    const double p3 = h3[i], s2p = slope[i] * h2[i];
    const double p3m = i > 0 ? h3[i - 1] : 0.0;
    const double s2m = i > 0 ? slope[i - 1] * h2[i - 1] : 0.0;

    m.diag[i] = 1.0 + c.diffusion * (wp * p3 + wm * p3m) / dr -
                c.transport * 0.5 * (wp * s2p - wm * s2m);
    m.upper[i] = -c.diffusion * wp * p3 / dr - c.transport * 0.5 * wp * s2p;
    m.lower[i] = -c.diffusion * wm * p3m / dr + c.transport * 0.5 * wm * s2m;

    const double grad_p = slope[i];
    const double grad_m = i > 0 ? slope[i - 1] : 0.0;
    const double h2m = i > 0 ? h2[i - 1] : 0.0;
    sys.rhs[i] = c.spreading * (wp * p3 * grad_p - wm * p3m * grad_m) +
                 c.capillary * (wp * h2[i] * grad_p - wm * h2m * grad_m) + c.growth * h[i];
  }
  // Far-field rows.
  for (int i : {0, n - 1}) {
    if (i == 0 && radial) continue;
    m.diag[i] = 1.0;
    m.lower[i] = m.upper[i] = 0.0;
    sys.rhs[i] = c.growth * h[i];
  }
  assert(m.diagonally_dominant());
  return sys;
}

namespace {

std::vector<double> solve_rate(const HeightField& state, const ModelParams& p, HVariant variant,
                               const RadiusLaw& law) {
  const HtSystem sys = assemble_ht_system(state, state.t, p, variant, law);
  try {
    return solve_thomas(sys.matrix, sys.rhs);
  } catch (const NumericalFailure& e) {
    throw NumericalFailure(std::string(e.what()) + " (height step at t = " +
                           std::to_string(state.t) + ")");
  }
}

HeightField advance(const HeightField& state, double dt, std::span<const double> u,
                    double h_inf) {
  HeightField next{state.grid, state.h, state.t + dt};
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = state.h[i] + dt * u[i];
    if (!std::isfinite(v)) {
      throw NumericalFailure("height step: non-finite height at node " + std::to_string(i) +
                             ", t = " + std::to_string(state.t));
    }
    next.h[i] = std::max(v, h_inf);
  }
  return next;
}

}  // namespace

HeightField step_euler(const HeightField& state, double dt, const ModelParams& p,
                       HVariant variant, const RadiusLaw& law) {
  if (!(dt > 0.0)) throw ArgumentError("step_euler: dt must be positive");
  return advance(state, dt, solve_rate(state, p, variant, law), p.h_inf);
}

HeightField step_heun(const HeightField& state, double dt, const ModelParams& p,
                      HVariant variant, const RadiusLaw& law) {
  if (!(dt > 0.0)) throw ArgumentError("step_heun: dt must be positive");
  const auto u0 = solve_rate(state, p, variant, law);
  const HeightField predictor = advance(state, dt, u0, p.h_inf);
  const auto u1 = solve_rate(predictor, p, variant, law);
  std::vector<double> mean(u0.size());
  for (std::size_t i = 0; i < mean.size(); ++i) mean[i] = 0.5 * (u0[i] + u1[i]);
  return advance(state, dt, mean, p.h_inf);
}

std::string_view to_string(TimeScheme s) { return s == TimeScheme::euler ? "euler" : "heun"; }

TimeScheme time_scheme_from_string(std::string_view name) {
  if (name == "euler") return TimeScheme::euler;
  if (name == "heun") return TimeScheme::heun;
  throw ArgumentError("unknown time scheme '" + std::string(name) + "'");
}

std::vector<double> selfsimilar_profile(std::span<const double> r, double t,
                                        const RadiusLaw& law, const ModelParams& p) {
  const RadiusValue R = law(t);
  const double radius = p.R0 * R.ratio;
  const double amp = std::exp(t) / (R.ratio * R.ratio);
  std::vector<double> h(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double s = std::max(1.0 - 1.5 * r[i] * r[i] / (radius * radius), 0.0);
    h[i] = std::max(amp * std::cbrt(s), p.h_inf);
  }
  return h;
}

std::vector<double> selfsimilar_profile_rate(std::span<const double> r, double t,
                                             const RadiusLaw& law, const ModelParams& p) {
  const RadiusValue R = law(t);
  const double radius = p.R0 * R.ratio;
  const double amp = std::exp(t) / (R.ratio * R.ratio);
  const double log_rate = R.rate / R.ratio;  // d/dt log(R/R0)
  std::vector<double> ht(r.size(), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double s = 1.0 - 1.5 * r[i] * r[i] / (radius * radius);
    if (s <= 0.0) continue;
    const double h = amp * std::cbrt(s);
    if (h <= p.h_inf) continue;
    // s_t = 3 r^2 R_t / R^3
    const double s_t = 3.0 * r[i] * r[i] * log_rate / (radius * radius);
    ht[i] = h * (1.0 - 2.0 * log_rate) + amp * s_t / (3.0 * std::cbrt(s * s));
  }
  return ht;
}

std::vector<double> selfsimilar_residual(const FdGrid& grid, double t, const RadiusLaw& law,
                                         const ModelParams& p) {
  if (grid.geometry != Geometry::radial) {
    throw ArgumentError("selfsimilar_residual: radial grid required");
  }
  if (p.delta != 0.0) throw ArgumentError("selfsimilar_residual: requires delta = 0");
  const auto r = grid.coords();
  HeightField state{grid, selfsimilar_profile(r, t, law, p), t};
  const auto ht = selfsimilar_profile_rate(r, t, law, p);
  const HtSystem sys = assemble_ht_system(state, t, p, HVariant::orig_radial, law);
  auto res = sys.matrix.apply(ht);
  for (std::size_t i = 0; i < res.size(); ++i) res[i] -= sys.rhs[i];
  res.back() = 0.0;  // boundary row is not part of the equation
  return res;
}

std::vector<double> residual_check(const FdGrid& grid, std::span<const double> times,
                                   const RadiusLaw& law, const ModelParams& p, bool scaled) {
  std::vector<double> out;
  out.reserve(times.size());
  const double dr = grid.spacing();
  for (double t : times) {
    const auto res = selfsimilar_residual(grid, t, law, p);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < res.size(); ++i) sum += res[i] * res[i];
    double norm = std::sqrt(sum * dr);
    if (scaled) norm *= std::exp(-t);
    out.push_back(norm);
  }
  return out;
}

HeightMetrics height_metrics(const HeightField& f, double threshold) {
  const FdGrid& g = f.grid;
  const double dr = g.spacing();
  const int last = g.n_cells - 1;
  HeightMetrics m;
  double sum2 = 0.0;
  int lo = -1, hi = -1;
  for (int i = 0; i <= last; ++i) {
    const double h = f.h[i];
    m.max_height = std::max(m.max_height, h);
    const double end_weight = (i == 0 || i == last) ? 0.5 : 1.0;
    sum2 += end_weight * h * h;
    // Control volume of node i; these are the weights under which the
    // discrete divergence telescopes.
    double volume = end_weight * dr;
    if (g.geometry == Geometry::radial) {
      const double r = g.coord(i);
      if (i == 0) {
        volume = dr * dr / 8.0;
      } else if (i == last) {
        volume = 0.5 * (r * dr - 0.25 * dr * dr);
      } else {
        volume = r * dr;
      }
    }
    m.mass += volume * h;
    if (h > threshold) {
      if (lo < 0) lo = i;
      hi = i;
    }
  }
  m.l2 = std::sqrt(sum2 * dr);
  if (hi >= 0) {
    if (g.geometry == Geometry::radial) {
      m.front_position = g.coord(hi);
      m.support_width = 2.0 * g.coord(hi);
    } else {
      m.front_position = std::max(std::abs(g.coord(lo)), std::abs(g.coord(hi)));
      m.support_width = g.coord(hi) - g.coord(lo);
    }
  }
  return m;
}

HeightTrajectory run_height(const HeightField& initial, const ModelParams& p,
                            const RadiusLaw& law, const HeightRunConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw ArgumentError("run_height: dt must be positive");
  if (!(cfg.t_end >= 0.0)) throw ArgumentError("run_height: t_end must be >= 0");
  if (cfg.diagnostics_stride < 1) throw ArgumentError("run_height: diagnostics_stride must be >= 1");
  if (initial.grid.geometry != geometry_of(cfg.variant)) {
    throw ArgumentError("run_height: grid geometry does not match the variant");
  }
  const double threshold = cfg.support_threshold_factor * p.h_inf;
  const long steps = std::lround(cfg.t_end / cfg.dt);

  std::vector<double> pending = cfg.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snapshot = 0;

  HeightTrajectory traj;
  HeightField state = initial;
  for (double& v : state.h) v = std::max(v, p.h_inf);

  auto record = [&](double dt_used) {
    traj.times.push_back(state.t);
    traj.metrics.push_back(height_metrics(state, threshold));
    traj.dts.push_back(dt_used);
  };
  auto maybe_snapshot = [&] {
    while (next_snapshot < pending.size() && state.t >= pending[next_snapshot] - 1e-9) {
      traj.snapshots.push_back(state);
      ++next_snapshot;
    }
  };

  record(0.0);
  maybe_snapshot();
  const double t0 = initial.t;
  for (long k = 1; k <= steps; ++k) {
    state = cfg.scheme == TimeScheme::euler ? step_euler(state, cfg.dt, p, cfg.variant, law)
                                            : step_heun(state, cfg.dt, p, cfg.variant, law);
    state.t = t0 + static_cast<double>(k) * cfg.dt;
    if (k % cfg.diagnostics_stride == 0 || k == steps) record(cfg.dt);
    maybe_snapshot();
  }
  return traj;
}

}  // namespace biofilm
