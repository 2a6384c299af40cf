// Acceptance suite: one PASS/FAIL line per criterion.
//
//   biofilm_acceptance            run every criterion
//   biofilm_acceptance 4 7        run the listed criteria
//
// Exit status is 0 when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "biofilm/cascade.hpp"
#include "biofilm/diagnostics.hpp"
#include "biofilm/fmodel.hpp"
#include "biofilm/hmodel.hpp"
#include "biofilm/multipliers.hpp"
#include "oracles.hpp"

using namespace biofilm;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string title;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1 ------------------------------------------------------------------------
Outcome operator_identity() {
  std::mt19937_64 rng(1001);
  const GridSpec g(256);
  double worst = 0.0;
  for (double alpha : {-3.0, -1.0, 0.0, 1.0}) {
    ModelParams p;
    p.alpha = alpha;
    for (double t : {0.0, 1.0, 5.0}) {
      for (int trial = 0; trial < 100; ++trial) {
        const auto f = oracle::random_field(g, rng, 85, true);
        auto d = apply_L(f, t, p);
        d.add_scaled(-(2.5 + alpha), apply_Q(f, t, p) - f);
        worst = std::max(worst, l2_norm(d) / l2_norm(f));
      }
    }
  }
  return {worst <= 1e-12, fmt("max relative L2 defect %.3e (limit 1e-12), 1200 fields", worst)};
}

// 2 ------------------------------------------------------------------------
Outcome greens_equivalence() {
  std::mt19937_64 rng(1002);
  const GridSpec g(1024);
  const ModelParams p;
  double conv_err = 0.0, mass_err = 0.0;
  for (double t : {0.0, 0.5}) {
    const auto G = greens_function(t, p, g);
    const double lambda_sq = p.growth_weight(t);
    const double h = g.spacing();
    mass_err = std::max(mass_err, std::abs(oracle::periodic_trapezoid(G) -
                                           h * h / (12.0 * lambda_sq) - 1.0));
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = oracle::random_field(g, rng, 32, true);
      const auto conv = oracle::convolve_kernel(G, to_physical(f), lambda_sq);
      const auto ref = to_physical(apply_Q(f, t, p));
      for (int j = 0; j < 1024; ++j) conv_err = std::max(conv_err, std::abs(conv[j] - ref[j]));
    }
  }
  return {conv_err <= 1e-6 && mass_err <= 1e-8,
          fmt("convolution vs multiplier Linf %.3e (limit 1e-6); |int G - 1| %.3e (limit 1e-8)",
              conv_err, mass_err)};
}

// 3 ------------------------------------------------------------------------
Outcome dispersion() {
  const GridSpec g(64);
  const auto p = ModelParams::autonomous();
  double worst = 0.0;
  std::ostringstream rates;
  for (int n : {1, 2, 3, 5}) {
    SpectralField f0(g);
    f0.set_mode(n, {0.5, 0.0});
    IntegratorConfig cfg;
    cfg.t_end = 0.1;
    const auto rec = integrate(f0, FModelKind::linearized_autonomous, cfg, p);
    const double ratio = rec.final_state().coeff(n).real() / 0.5;
    const double expect = std::exp(dispersion_lambda(n) * 0.1);
    worst = std::max(worst, std::abs(ratio / expect - 1.0));
    rates << " lambda(" << n << ")=" << dispersion_lambda(n);
  }
  const bool values_ok = std::abs(dispersion_lambda(1) - 1.1875) < 1e-15 &&
                         std::abs(dispersion_lambda(2) - (3.0 * 16.0 / 100.0 + 8.0 / 5.0)) < 1e-15;
  return {values_ok && worst <= 1e-6,
          fmt("max rel error vs exp(lambda t) at t=0.1: %.3e (limit 1e-6);", worst) + rates.str()};
}

// 4 ------------------------------------------------------------------------
Outcome blowup_run() {
  const GridSpec g(4096);
  SpectralField f0(g);
  f0.set_mode(2, {0.0, -0.5});  // sin(2x)
  IntegratorConfig cfg;
  cfg.abs_tol = 1e-10;
  cfg.rel_tol = 1e-8;
  cfg.t_end = 10.0;
  cfg.snapshot_stride = 1000000;
  const auto rec = integrate(f0, FModelKind::autonomous, cfg, ModelParams::autonomous());
  const double t = rec.final_time();
  const double sup = rec.sup_norms.back();
  const bool stopped = rec.termination != Termination::reached_t_end;
  const bool pass = stopped && t >= 0.25 && t <= 0.45 && sup >= 10.0;
  return {pass, fmt("termination %s at t = %.4f (window [0.25, 0.45]), sup norm %.3e (>= 10), "
                    "%zu steps",
                    std::string(to_string(rec.termination)).c_str(), t, sup, rec.times.size() - 1)};
}

// 5 ------------------------------------------------------------------------
Outcome small_data_global() {
  const GridSpec g(128);
  SpectralField f0(g);
  f0.set_mode(1, {0.0, -0.5e-3});  // 1e-3 sin x
  IntegratorConfig cfg;
  cfg.t_end = 5.0;
  const auto rec = integrate(f0, FModelKind::nonautonomous, cfg, ModelParams{});
  double worst_rise = 0.0;
  for (std::size_t i = 1; i < rec.energies.size(); ++i) {
    worst_rise = std::max(worst_rise, rec.energies[i] / rec.energies[i - 1] - 1.0);
  }
  const double cont = rec.continuation_integral.back();
  const bool pass = rec.termination == Termination::reached_t_end && worst_rise <= 1e-12 &&
                    std::isfinite(cont);
  return {pass, fmt("reached t = %.3f (%s); max relative E increase %.3e (limit 1e-12); "
                    "continuation integral %.6e",
                    rec.final_time(), std::string(to_string(rec.termination)).c_str(), worst_rise,
                    cont)};
}

// 6 ------------------------------------------------------------------------
Outcome cascade_order() {
  const GridSpec g(64);
  SpectralField f0(g);
  f0.set_mode(1, {0.0, -0.5});
  const auto p = ModelParams::autonomous();
  const double e1 = compose_and_compare(f0, 1e-2, 0.5, p).err_norm;
  const double e2 = compose_and_compare(f0, 5e-3, 0.5, p).err_norm;
  const double e3 = compose_and_compare(f0, 2.5e-3, 0.5, p).err_norm;
  const double r1 = e1 / e2, r2 = e2 / e3;
  const bool pass = r1 >= 6.0 && r1 <= 10.0 && r2 >= 6.0 && r2 <= 10.0;
  return {pass, fmt("err(1e-2)=%.3e err(5e-3)=%.3e err(2.5e-3)=%.3e; ratios %.3f, %.3f "
                    "(window [6, 10])",
                    e1, e2, e3, r1, r2)};
}

// 7 ------------------------------------------------------------------------
Outcome hmodel_constants() {
  const ModelParams p;
  const auto law = RadiusLaw::self_similar(1e-5);
  double scaled_err = 0.0, orig_err = 0.0, euler_err = 0.0;
  for (HVariant v : {HVariant::orig_radial, HVariant::orig_slab, HVariant::scaled_radial,
                     HVariant::scaled_slab}) {
    const FdGrid grid(geometry_of(v), 201, 20.0);
    const double c = 0.8;
    HeightField h0{grid, std::vector<double>(grid.n_cells, c), 0.0};
    for (TimeScheme s : {TimeScheme::heun, TimeScheme::euler}) {
      HeightRunConfig cfg;
      cfg.variant = v;
      cfg.scheme = s;
      cfg.dt = 5e-4;
      cfg.t_end = 1.0;
      for (int k = 1; k <= 20; ++k) cfg.snapshot_times.push_back(0.05 * k);
      const auto traj = run_height(h0, p, law, cfg);
      for (const auto& snap : traj.snapshots) {
        for (double x : snap.h) {
          if (is_scaled(v)) {
            if (s == TimeScheme::heun) scaled_err = std::max(scaled_err, std::abs(x - c));
          } else {
            const double rel = std::abs(x / (c * std::exp(snap.t)) - 1.0);
            (s == TimeScheme::heun ? orig_err : euler_err) =
                std::max(s == TimeScheme::heun ? orig_err : euler_err, rel);
          }
        }
      }
    }
  }
  return {scaled_err <= 1e-10 && orig_err <= 1e-4,
          fmt("scaled |h - c| %.3e (limit 1e-10); orig rel. error vs c e^t %.3e (limit 1e-4) "
              "with the default Heun step [forward Euler: %.3e]",
              scaled_err, orig_err, euler_err)};
}

// 8 ------------------------------------------------------------------------
Outcome residual_decay() {
  ModelParams p;
  p.K = 1e-5;
  const auto law = RadiusLaw::self_similar(p.K);
  const auto grid = FdGrid::with_spacing(Geometry::radial, 20.0, 0.05);
  const std::vector<double> times{1.0, 2.0, 3.0};
  const auto res = residual_check(grid, times, law, p);
  const bool pass = res[1] < res[0] && res[2] < res[1];
  return {pass, fmt("residual L2 at t=1,2,3: %.4e, %.4e, %.4e (must strictly decrease)", res[0],
                    res[1], res[2])};
}

// 9 ------------------------------------------------------------------------
Outcome bump_spreading() {
  ModelParams p;
  p.K = 1e-5;
  p.h_inf = 1e-3;
  const FdGrid grid(Geometry::radial, 201, 20.0);
  HeightField h0{grid, {}, 0.0};
  for (double r : grid.coords()) h0.h.push_back(std::max(std::exp(-r * r), p.h_inf));

  struct Case {
    const char* name;
    RadiusLaw law;
    double dt;
  };
  const Case cases[] = {{"R_s", RadiusLaw::self_similar(p.K), 5e-4},
                        {"e^t", RadiusLaw::exp_alpha(1.0), 2e-4},
                        {"e^-t", RadiusLaw::exp_alpha(-1.0), 5e-4}};
  bool pass = true;
  std::ostringstream detail;
  for (const auto& c : cases) {
    HeightRunConfig cfg;
    cfg.variant = HVariant::scaled_radial;
    cfg.dt = c.dt;
    cfg.t_end = 4.0;
    cfg.diagnostics_stride = static_cast<int>(std::lround(0.1 / c.dt));
    const auto traj = run_height(h0, p, c.law, cfg);
    const auto& m = traj.metrics;
    if (std::string(c.name) != "e^-t") {
      bool monotone = true;
      for (std::size_t i = 1; i < m.size(); ++i) {
        monotone = monotone && m[i].support_width >= m[i - 1].support_width;
      }
      pass = pass && monotone;
      detail << c.name << ": width " << m.front().support_width << " -> "
             << m.back().support_width << (monotone ? " nondecreasing; " : " NOT monotone; ");
    } else {
      double lo = m.front().front_position, hi = lo;
      bool grows = true;
      for (std::size_t i = 0; i < m.size(); ++i) {
        lo = std::min(lo, m[i].front_position);
        hi = std::max(hi, m[i].front_position);
        if (i > 0) {
          grows = grows && std::exp(traj.times[i]) * m[i].max_height >
                               std::exp(traj.times[i - 1]) * m[i - 1].max_height;
        }
      }
      const double move = (hi - lo) / grid.extent;
      pass = pass && move < 0.05 && grows;
      detail << c.name << ": front moves " << 100.0 * move << "% of domain (limit 5%), max height "
             << std::exp(traj.times.front()) * m.front().max_height << " -> "
             << std::exp(traj.times.back()) * m.back().max_height
             << (grows ? " increasing" : " NOT increasing");
    }
  }
  return {pass, detail.str()};
}

// 10 -----------------------------------------------------------------------
Outcome planewave() {
  std::vector<double> as;
  for (double a = 0.1; a <= 100.0 * (1.0 + 1e-12); a *= std::pow(10.0, 0.05)) as.push_back(a);
  double min_beta0 = 1e300, max_beta1 = -1e300;
  StabilityQuery q;
  q.c = 1.0;
  q.t = 0.0;
  for (double a : as) {
    q.wavenumber = a;
    q.delta = 0.0;
    min_beta0 = std::min(min_beta0, planewave_beta(q));
    if (a >= 2.0) {
      q.delta = 1.0;
      max_beta1 = std::max(max_beta1, planewave_beta(q));
    }
  }
  return {min_beta0 > 0.0 && max_beta1 < 0.0,
          fmt("delta=0: min beta %.4e (> 0) over %zu wavenumbers in [0.1, 100]; "
              "delta=1, a>=2: max beta %.4e (< 0)",
              min_beta0, as.size(), max_beta1)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, Criterion> criteria{
      {1, {"operator identity L = (5/2+alpha)(Q - I)", 5.0, operator_identity}},
      {2, {"Green's function equivalence", 5.0, greens_equivalence}},
      {3, {"dispersion reproduction", 5.0, dispersion}},
      {4, {"blow-up run, sin(2x), N = 4096", 600.0, blowup_run}},
      {5, {"global small-data regime", 60.0, small_data_global}},
      {6, {"cascade order", 120.0, cascade_order}},
      {7, {"h-model constants", 60.0, hmodel_constants}},
      {8, {"self-similar residual decay", 60.0, residual_decay}},
      {9, {"bump spreading", 600.0, bump_spreading}},
      {10, {"plane-wave instability", 1.0, planewave}},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    char* end = nullptr;
    const long id = std::strtol(argv[i], &end, 10);
    if (*end != '\0' || !criteria.count(static_cast<int>(id))) {
      std::fprintf(stderr, "unknown criterion '%s' (expected 1-10)\n", argv[i]);
      return 1;
    }
    selected.push_back(static_cast<int>(id));
  }
  if (selected.empty()) {
    for (const auto& [id, c] : criteria) selected.push_back(id);
  }

  int failures = 0;
  for (int id : selected) {
    const Criterion& c = criteria.at(id);
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs <= c.budget_seconds;
    const bool pass = out.pass && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] criterion %d: %s | %s | %.2fs (budget %.0fs%s)\n", pass ? "PASS" : "FAIL",
                id, c.title.c_str(), out.detail.c_str(), secs, c.budget_seconds,
                in_budget ? "" : ", EXCEEDED");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
