#include "experiment.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <set>
#include <sstream>

#include "biofilm/cascade.hpp"
#include "biofilm/diagnostics.hpp"
#include "biofilm/errors.hpp"
#include "biofilm/version.hpp"

namespace biofilm::cli {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// YAML access with strict key checking

class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      throw ArgumentError("config: '" + display() + "' must be a mapping");
    }
  }

  bool present() const { return node_ && node_.IsMap(); }

  bool has(const std::string& key) {
    used_.insert(key);
    return present() && node_[key] && !node_[key].IsNull();
  }

  template <class T>
  T get(const std::string& key, const T& fallback) {
    if (!has(key)) return fallback;
    return convert<T>(node_[key], key);
  }

  template <class T>
  T require(const std::string& key) {
    if (!has(key)) throw ArgumentError("config: missing required key '" + qualified(key) + "'");
    return convert<T>(node_[key], key);
  }

  Section child(const std::string& key) {
    used_.insert(key);
    return Section(present() ? node_[key] : YAML::Node(), qualified(key));
  }

  /// Rejects keys that were never looked up.
  void finish() const {
    if (!present()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!used_.count(key)) throw ArgumentError("config: unknown key '" + qualified(key) + "'");
    }
  }

  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    if (present()) {
      for (const auto& kv : node_) out.push_back(kv.first.as<std::string>());
    }
    return out;
  }

 private:
  std::string qualified(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }
  std::string display() const { return path_.empty() ? "<root>" : path_; }

  template <class T>
  T convert(const YAML::Node& n, const std::string& key) const {
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      throw ArgumentError("config: key '" + qualified(key) + "' has the wrong type (line " +
                          std::to_string(n.Mark().line + 1) + ")");
    }
  }

  YAML::Node node_;
  std::string path_;
  std::set<std::string> used_;
};

bool uses_spectral_grid(ExperimentKind k) {
  return k == ExperimentKind::fmodel_run || k == ExperimentKind::fmodel_linear ||
         k == ExperimentKind::cascade_check;
}

std::set<std::string> sections_for(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::fmodel_run:
    case ExperimentKind::fmodel_linear:
      return {"params", "grid", "model", "integrator", "initial_condition"};
    case ExperimentKind::cascade_check:
      return {"params", "grid", "initial_condition", "cascade"};
    case ExperimentKind::hmodel_bump:
      return {"params", "height", "initial_condition"};
    case ExperimentKind::hmodel_selfsimilar:
      return {"params", "height", "selfsimilar"};
    case ExperimentKind::stability_scan:
      return {"params", "stability"};
    case ExperimentKind::dispersion_table:
      return {"dispersion"};
  }
  return {};
}

InitialKind initial_from_string(const std::string& s) {
  for (auto k : {InitialKind::sine, InitialKind::gaussian_bump, InitialKind::constant,
                 InitialKind::selfsimilar_matched, InitialKind::custom_samples}) {
    if (to_string(k) == s) return k;
  }
  throw ArgumentError("config: unknown initial_condition.type '" + s + "'");
}

RadiusKind radius_from_string(const std::string& s) {
  if (s == "self_similar") return RadiusKind::self_similar;
  if (s == "exp_alpha") return RadiusKind::exp_alpha;
  throw ArgumentError("config: unknown height.radius.kind '" + s + "'");
}

std::string_view to_string(RadiusKind k) {
  return k == RadiusKind::self_similar ? "self_similar" : "exp_alpha";
}

void parse_params(Section s, ModelParams& p) {
  p.K = s.get("K", p.K);
  p.R0 = s.get("R0", p.R0);
  p.alpha = s.get("alpha", p.alpha);
  p.delta = s.get("delta", p.delta);
  p.epsilon = s.get("epsilon", p.epsilon);
  p.h_inf = s.get("h_inf", p.h_inf);
  s.finish();
  p.validate();
}

void parse_integrator(Section s, IntegratorConfig& c) {
  c.abs_tol = s.get("abs_tol", c.abs_tol);
  c.rel_tol = s.get("rel_tol", c.rel_tol);
  c.dt_init = s.get("dt_init", c.dt_init);
  c.dt_min = s.get("dt_min", c.dt_min);
  c.blowup_cap = s.get("blowup_cap", c.blowup_cap);
  c.t_end = s.get("t_end", c.t_end);
  c.snapshot_stride = s.get("snapshot_stride", c.snapshot_stride);
  if (s.has("fixed_dt")) c.fixed_dt = s.require<double>("fixed_dt");
  s.finish();
  c.validate();
}

void parse_initial(Section s, InitialCondition& ic, const fs::path& base_dir) {
  ic.kind = initial_from_string(s.require<std::string>("type"));
  switch (ic.kind) {
    case InitialKind::sine:
      ic.k = s.get("k", ic.k);
      ic.amplitude = s.get("amplitude", ic.amplitude);
      ic.base = s.get("base", ic.base);
      if (ic.k == 0) throw ArgumentError("config: initial_condition.k must be a nonzero integer");
      break;
    case InitialKind::gaussian_bump:
      ic.amplitude = s.get("amplitude", ic.amplitude);
      ic.center = s.get("center", ic.center);
      ic.width = s.get("width", ic.width);
      if (!(ic.width > 0.0)) throw ArgumentError("config: initial_condition.width must be > 0");
      break;
    case InitialKind::constant:
      ic.c = s.require<double>("c");
      break;
    case InitialKind::selfsimilar_matched:
      ic.t0 = s.get("t0", ic.t0);
      break;
    case InitialKind::custom_samples: {
      fs::path file = s.require<std::string>("file");
      ic.file = file.is_absolute() ? file : base_dir / file;
      break;
    }
  }
  s.finish();
}

void parse_height(Section s, HeightSettings& h, bool run) {
  if (run) {
    h.variant = hvariant_from_string(s.get<std::string>("variant", std::string(to_string(h.variant))));
    h.scheme = time_scheme_from_string(s.get<std::string>("scheme", std::string(to_string(h.scheme))));
    h.dt = s.get("dt", h.dt);
    h.t_end = s.get("t_end", h.t_end);
    h.snapshot_times = s.get("snapshot_times", h.snapshot_times);
    h.diagnostics_stride = s.get("diagnostics_stride", h.diagnostics_stride);
    h.support_threshold_factor = s.get("support_threshold_factor", h.support_threshold_factor);
  }
  h.extent = s.get("extent", h.extent);
  h.spacing = s.get("spacing", h.spacing);
  Section r = s.child("radius");
  h.radius = radius_from_string(r.get<std::string>("kind", std::string(to_string(h.radius))));
  h.radius_alpha = r.get("alpha", h.radius_alpha);
  h.radius_factor = r.get("factor", h.radius_factor);
  r.finish();
  s.finish();

  if (!(h.extent > 0.0) || !(h.spacing > 0.0) || h.spacing >= h.extent) {
    throw ArgumentError("config: height.extent and height.spacing must satisfy 0 < spacing < extent");
  }
  if (run) {
    if (!(h.dt > 0.0)) throw ArgumentError("config: height.dt must be > 0");
    if (!(h.t_end >= 0.0)) throw ArgumentError("config: height.t_end must be >= 0");
    if (h.diagnostics_stride < 1) throw ArgumentError("config: height.diagnostics_stride must be >= 1");
  }
}

// ---------------------------------------------------------------------------
// Output helpers

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header) : path_(path) {
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw IoError("cannot open '" + path.string() + "' for writing");
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }
  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      out_ << (first ? "" : ",") << num(v);
      first = false;
    }
    out_ << '\n';
  }
  void close() {
    out_.close();
    if (!out_) throw IoError("failed writing '" + path_.string() + "'");
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

std::vector<double> read_samples(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot read initial samples from '" + file.string() + "'");
  std::vector<double> v;
  std::string token;
  while (in >> token) {
    std::stringstream split(token);
    std::string piece;
    while (std::getline(split, piece, ',')) {
      if (piece.empty()) continue;
      try {
        v.push_back(std::stod(piece));
      } catch (const std::exception&) {
        throw ArgumentError("'" + file.string() + "': not a number: '" + piece + "'");
      }
    }
  }
  return v;
}

std::vector<double> initial_samples(const InitialCondition& ic, const std::vector<double>& x,
                                    bool height, const ModelParams& p, const RadiusLaw* law) {
  std::vector<double> v(x.size());
  switch (ic.kind) {
    case InitialKind::sine:
      for (std::size_t i = 0; i < x.size(); ++i) {
        v[i] = (height ? ic.base : 0.0) + ic.amplitude * std::sin(ic.k * x[i]);
      }
      break;
    case InitialKind::gaussian_bump:
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double z = (x[i] - ic.center) / ic.width;
        v[i] = ic.amplitude * std::exp(-z * z);
        if (height) v[i] = std::max(v[i], p.h_inf);
      }
      break;
    case InitialKind::constant:
      std::fill(v.begin(), v.end(), ic.c);
      break;
    case InitialKind::selfsimilar_matched: {
      std::vector<double> r(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) r[i] = std::abs(x[i]);
      v = selfsimilar_profile(r, ic.t0, *law, p);
      break;
    }
    case InitialKind::custom_samples:
      v = read_samples(ic.file);
      if (v.size() != x.size()) {
        throw ArgumentError("'" + ic.file.string() + "' holds " + std::to_string(v.size()) +
                            " samples, the grid has " + std::to_string(x.size()) + " nodes");
      }
      break;
  }
  return v;
}

SpectralField spectral_initial(const ExperimentConfig& cfg) {
  const GridSpec grid(cfg.n_nodes);
  SpectralField f = to_spectral(initial_samples(cfg.initial, grid.nodes(), false, cfg.params, nullptr),
                                grid);
  f.data()[0] = Complex{};  // the f-models evolve mean-zero data
  return f;
}

RadiusLaw make_law(const HeightSettings& h, const ModelParams& p) {
  return h.radius == RadiusKind::self_similar ? RadiusLaw::self_similar(p.K, h.radius_factor)
                                              : RadiusLaw::exp_alpha(h.radius_alpha);
}

ordered_json config_json(const ExperimentConfig& c) {
  ordered_json j;
  j["experiment"] = to_string(c.experiment);
  j["output_dir"] = c.output_dir.string();
  const auto sections = sections_for(c.experiment);
  if (sections.count("params")) {
    j["params"] = {{"K", c.params.K},         {"R0", c.params.R0},
                   {"alpha", c.params.alpha}, {"delta", c.params.delta},
                   {"epsilon", c.params.epsilon}, {"h_inf", c.params.h_inf}};
  }
  if (sections.count("grid")) j["grid"] = {{"n_nodes", c.n_nodes}};
  if (sections.count("model")) j["model"] = to_string(c.model);
  if (sections.count("integrator")) {
    const auto& i = c.integrator;
    j["integrator"] = {{"abs_tol", i.abs_tol},       {"rel_tol", i.rel_tol},
                       {"dt_init", i.dt_init},       {"dt_min", i.dt_min},
                       {"blowup_cap", i.blowup_cap}, {"t_end", i.t_end},
                       {"snapshot_stride", i.snapshot_stride}};
    j["integrator"]["fixed_dt"] = i.fixed_dt ? ordered_json(*i.fixed_dt) : ordered_json(nullptr);
  }
  if (sections.count("initial_condition")) {
    const auto& ic = c.initial;
    ordered_json o{{"type", to_string(ic.kind)}};
    switch (ic.kind) {
      case InitialKind::sine:
        o["k"] = ic.k;
        o["amplitude"] = ic.amplitude;
        if (!uses_spectral_grid(c.experiment)) o["base"] = ic.base;
        break;
      case InitialKind::gaussian_bump:
        o["amplitude"] = ic.amplitude;
        o["center"] = ic.center;
        o["width"] = ic.width;
        break;
      case InitialKind::constant: o["c"] = ic.c; break;
      case InitialKind::selfsimilar_matched: o["t0"] = ic.t0; break;
      case InitialKind::custom_samples: o["file"] = ic.file.string(); break;
    }
    j["initial_condition"] = o;
  }
  if (sections.count("height")) {
    const auto& h = c.height;
    ordered_json o;
    if (c.experiment == ExperimentKind::hmodel_bump) {
      o["variant"] = to_string(h.variant);
      o["scheme"] = to_string(h.scheme);
      o["dt"] = h.dt;
      o["t_end"] = h.t_end;
      o["snapshot_times"] = h.snapshot_times;
      o["diagnostics_stride"] = h.diagnostics_stride;
      o["support_threshold_factor"] = h.support_threshold_factor;
    }
    o["extent"] = h.extent;
    o["spacing"] = h.spacing;
    o["radius"] = {{"kind", to_string(h.radius)}, {"alpha", h.radius_alpha}, {"factor", h.radius_factor}};
    j["height"] = o;
  }
  if (sections.count("cascade")) {
    j["cascade"] = {{"epsilons", c.cascade.epsilons}, {"t_end", c.cascade.t_end}};
  }
  if (sections.count("stability")) {
    const auto& s = c.stability;
    j["stability"] = {{"c", s.c},         {"deltas", s.deltas}, {"t", s.t},
                      {"a_min", s.a_min}, {"a_max", s.a_max},   {"count", s.count},
                      {"capillary_time_factor", s.capillary_time_factor}};
  }
  if (sections.count("selfsimilar")) j["selfsimilar"] = {{"times", c.selfsimilar.times}};
  if (sections.count("dispersion")) j["dispersion"] = {{"n_max", c.dispersion_n_max}};
  return j;
}

struct Outcome {
  std::string termination = "completed";
  double final_time = 0.0;
  int exit_code = 0;
  std::vector<std::string> files;
};

// ---------------------------------------------------------------------------
// Experiments

Outcome run_fmodel(const ExperimentConfig& cfg, const fs::path& dir) {
  const SpectralField f0 = spectral_initial(cfg);
  const RunRecord rec = integrate(f0, cfg.model, cfg.integrator, cfg.params);

  CsvWriter snaps(dir / "snapshots.csv", {"t", "x", "value"});
  const auto x = f0.grid().nodes();
  for (std::size_t s = 0; s < rec.snapshots.size(); ++s) {
    const auto v = to_physical(rec.snapshots[s]);
    for (std::size_t j = 0; j < v.size(); ++j) snaps.row({rec.snapshot_times[s], x[j], v[j]});
  }
  snaps.close();

  CsvWriter diag(dir / "diagnostics.csv", {"t", "linf", "h2", "energy_E", "dissipation_D",
                                           "continuation_integral", "dt"});
  for (std::size_t i = 0; i < rec.times.size(); ++i) {
    diag.row({rec.times[i], rec.sup_norms[i], rec.h2_norms[i], rec.energies[i],
              rec.dissipations[i], rec.continuation_integral[i], rec.dts[i]});
  }
  diag.close();

  Outcome o;
  o.termination = std::string(to_string(rec.termination));
  o.final_time = rec.final_time();
  o.exit_code = rec.termination == Termination::reached_t_end ? 0 : 2;
  o.files = {"snapshots.csv", "diagnostics.csv"};
  return o;
}

Outcome run_cascade(const ExperimentConfig& cfg, const fs::path& dir) {
  const SpectralField f0 = spectral_initial(cfg);
  CsvWriter out(dir / "cascade.csv", {"epsilon", "err_norm", "ratio_to_previous"});
  double previous = std::nan("");
  for (double eps : cfg.cascade.epsilons) {
    const double err = compose_and_compare(f0, eps, cfg.cascade.t_end, cfg.params).err_norm;
    out.row({eps, err, previous / err});
    previous = err;
  }
  out.close();
  Outcome o;
  o.final_time = cfg.cascade.t_end;
  o.files = {"cascade.csv"};
  return o;
}

Outcome run_bump(const ExperimentConfig& cfg, const fs::path& dir) {
  const auto& h = cfg.height;
  const FdGrid grid = FdGrid::with_spacing(geometry_of(h.variant), h.extent, h.spacing);
  const RadiusLaw law = make_law(h, cfg.params);
  HeightField h0{grid, initial_samples(cfg.initial, grid.coords(), true, cfg.params, &law), 0.0};

  HeightRunConfig run;
  run.variant = h.variant;
  run.scheme = h.scheme;
  run.dt = h.dt;
  run.t_end = h.t_end;
  run.snapshot_times = h.snapshot_times;
  run.diagnostics_stride = h.diagnostics_stride;
  run.support_threshold_factor = h.support_threshold_factor;
  const HeightTrajectory traj = run_height(h0, cfg.params, law, run);

  CsvWriter snaps(dir / "snapshots.csv", {"t", "x", "value"});
  const auto x = grid.coords();
  for (const auto& s : traj.snapshots) {
    for (std::size_t i = 0; i < x.size(); ++i) snaps.row({s.t, x[i], s.h[i]});
  }
  snaps.close();

  CsvWriter diag(dir / "diagnostics.csv", {"t", "max_height", "l2", "support_width",
                                           "front_position", "mass", "dt"});
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto& m = traj.metrics[i];
    diag.row({traj.times[i], m.max_height, m.l2, m.support_width, m.front_position, m.mass,
              traj.dts[i]});
  }
  diag.close();

  Outcome o;
  o.termination = "reached_t_end";
  o.final_time = traj.times.back();
  o.files = {"snapshots.csv", "diagnostics.csv"};
  return o;
}

Outcome run_selfsimilar(const ExperimentConfig& cfg, const fs::path& dir) {
  const auto& h = cfg.height;
  const FdGrid grid = FdGrid::with_spacing(Geometry::radial, h.extent, h.spacing);
  const RadiusLaw law = make_law(h, cfg.params);
  const auto& times = cfg.selfsimilar.times;
  const auto res = residual_check(grid, times, law, cfg.params, false);
  const auto res_scaled = residual_check(grid, times, law, cfg.params, true);

  CsvWriter out(dir / "residual.csv", {"t", "residual", "residual_scaled"});
  for (std::size_t i = 0; i < times.size(); ++i) out.row({times[i], res[i], res_scaled[i]});
  out.close();

  CsvWriter snaps(dir / "snapshots.csv", {"t", "x", "value"});
  const auto r = grid.coords();
  for (double t : times) {
    const auto prof = selfsimilar_profile(r, t, law, cfg.params);
    for (std::size_t i = 0; i < r.size(); ++i) snaps.row({t, r[i], prof[i]});
  }
  snaps.close();

  Outcome o;
  o.final_time = times.empty() ? 0.0 : times.back();
  o.files = {"residual.csv", "snapshots.csv"};
  return o;
}

Outcome run_stability(const ExperimentConfig& cfg, const fs::path& dir) {
  const auto& s = cfg.stability;
  CsvWriter out(dir / "stability.csv", {"delta", "wavenumber", "beta"});
  for (double delta : s.deltas) {
    for (int i = 0; i < s.count; ++i) {
      const double a = s.count == 1 ? s.a_min
                                    : s.a_min * std::pow(s.a_max / s.a_min, double(i) / (s.count - 1));
      StabilityQuery q;
      q.c = s.c;
      q.wavenumber = a;
      q.delta = delta;
      q.t = s.t;
      q.params = cfg.params;
      q.capillary_time_factor = s.capillary_time_factor;
      out.row({delta, a, planewave_beta(q)});
    }
  }
  out.close();
  Outcome o;
  o.files = {"stability.csv"};
  return o;
}

Outcome run_dispersion(const ExperimentConfig& cfg, const fs::path& dir) {
  CsvWriter out(dir / "dispersion.csv", {"n", "lambda"});
  for (int n = 0; n <= cfg.dispersion_n_max; ++n) out.row({double(n), dispersion_lambda(n)});
  out.close();
  Outcome o;
  o.files = {"dispersion.csv"};
  return o;
}

}  // namespace

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::fmodel_run: return "fmodel_run";
    case ExperimentKind::fmodel_linear: return "fmodel_linear";
    case ExperimentKind::cascade_check: return "cascade_check";
    case ExperimentKind::hmodel_bump: return "hmodel_bump";
    case ExperimentKind::hmodel_selfsimilar: return "hmodel_selfsimilar";
    case ExperimentKind::stability_scan: return "stability_scan";
    case ExperimentKind::dispersion_table: return "dispersion_table";
  }
  return "unknown";
}

ExperimentKind experiment_from_string(std::string_view name) {
  for (auto k : {ExperimentKind::fmodel_run, ExperimentKind::fmodel_linear,
                 ExperimentKind::cascade_check, ExperimentKind::hmodel_bump,
                 ExperimentKind::hmodel_selfsimilar, ExperimentKind::stability_scan,
                 ExperimentKind::dispersion_table}) {
    if (to_string(k) == name) return k;
  }
  throw ArgumentError("config: unknown experiment '" + std::string(name) + "'");
}

std::string_view to_string(InitialKind k) {
  switch (k) {
    case InitialKind::sine: return "sine";
    case InitialKind::gaussian_bump: return "gaussian_bump";
    case InitialKind::constant: return "constant";
    case InitialKind::selfsimilar_matched: return "selfsimilar_matched";
    case InitialKind::custom_samples: return "custom_samples";
  }
  return "unknown";
}

ExperimentConfig parse_config(const std::string& yaml_text, const fs::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ArgumentError(std::string("config: YAML syntax error: ") + e.what());
  }
  Section top(root, "");
  if (!top.present()) throw ArgumentError("config: expected a mapping at the top level");

  ExperimentConfig cfg;
  cfg.experiment = experiment_from_string(top.require<std::string>("experiment"));
  cfg.output_dir = top.require<std::string>("output_dir");
  if (cfg.output_dir.empty()) throw ArgumentError("config: output_dir must not be empty");

  const auto allowed = sections_for(cfg.experiment);
  for (const auto& key : top.keys()) {
    if (key == "experiment" || key == "output_dir") continue;
    if (!allowed.count(key)) {
      throw ArgumentError("config: section '" + key + "' is not used by experiment '" +
                          std::string(to_string(cfg.experiment)) + "'");
    }
  }

  if (allowed.count("params")) parse_params(top.child("params"), cfg.params);

  if (allowed.count("grid")) {
    Section g = top.child("grid");
    cfg.n_nodes = g.get("n_nodes", cfg.n_nodes);
    g.finish();
    if (cfg.n_nodes < 4 || cfg.n_nodes % 2) {
      throw ArgumentError("config: grid.n_nodes must be even and >= 4");
    }
  }

  if (allowed.count("model")) {
    const bool linear = cfg.experiment == ExperimentKind::fmodel_linear;
    cfg.model = linear ? FModelKind::linearized : FModelKind::nonautonomous;
    if (top.has("model")) cfg.model = fmodel_kind_from_string(top.require<std::string>("model"));
    const bool is_linear_kind =
        cfg.model == FModelKind::linearized || cfg.model == FModelKind::linearized_autonomous;
    if (linear != is_linear_kind) {
      throw ArgumentError("config: model '" + std::string(to_string(cfg.model)) +
                          "' does not belong to experiment '" +
                          std::string(to_string(cfg.experiment)) + "'");
    }
    if (cfg.model == FModelKind::autonomous &&
        (cfg.params.alpha != -3.0 || cfg.params.k_over_r0() != 1.0)) {
      throw ArgumentError("config: the autonomous model needs params alpha = -3 and K/R0 = 1");
    }
  }

  if (allowed.count("integrator")) parse_integrator(top.child("integrator"), cfg.integrator);

  if (allowed.count("initial_condition")) {
    if (!top.has("initial_condition")) {
      throw ArgumentError("config: missing required section 'initial_condition'");
    }
    parse_initial(top.child("initial_condition"), cfg.initial, base_dir);
    if (uses_spectral_grid(cfg.experiment) &&
        cfg.initial.kind == InitialKind::selfsimilar_matched) {
      throw ArgumentError("config: selfsimilar_matched initial data needs a height experiment");
    }
  }

  if (allowed.count("height")) {
    parse_height(top.child("height"), cfg.height, cfg.experiment == ExperimentKind::hmodel_bump);
  }

  if (allowed.count("cascade")) {
    Section c = top.child("cascade");
    cfg.cascade.epsilons = c.get("epsilons", cfg.cascade.epsilons);
    cfg.cascade.t_end = c.get("t_end", cfg.cascade.t_end);
    c.finish();
    if (cfg.cascade.epsilons.empty()) throw ArgumentError("config: cascade.epsilons is empty");
    for (double e : cfg.cascade.epsilons) {
      if (!(e >= 0.0)) throw ArgumentError("config: cascade.epsilons must be >= 0");
    }
    if (!(cfg.cascade.t_end > 0.0)) throw ArgumentError("config: cascade.t_end must be > 0");
  }

  if (allowed.count("stability")) {
    Section s = top.child("stability");
    auto& st = cfg.stability;
    st.c = s.get("c", st.c);
    st.deltas = s.get("deltas", st.deltas);
    st.t = s.get("t", st.t);
    st.a_min = s.get("a_min", st.a_min);
    st.a_max = s.get("a_max", st.a_max);
    st.count = s.get("count", st.count);
    st.capillary_time_factor = s.get("capillary_time_factor", st.capillary_time_factor);
    s.finish();
    if (!(st.c > 0.0)) throw ArgumentError("config: stability.c must be > 0");
    if (!(st.a_min > 0.0) || !(st.a_max >= st.a_min) || st.count < 1) {
      throw ArgumentError("config: stability needs 0 < a_min <= a_max and count >= 1");
    }
    for (double d : st.deltas) {
      if (!(d >= 0.0)) throw ArgumentError("config: stability.deltas must be >= 0");
    }
  }

  if (allowed.count("selfsimilar")) {
    Section s = top.child("selfsimilar");
    cfg.selfsimilar.times = s.get("times", cfg.selfsimilar.times);
    s.finish();
    if (cfg.params.delta != 0.0) {
      throw ArgumentError("config: hmodel_selfsimilar requires params.delta = 0");
    }
  }

  if (allowed.count("dispersion")) {
    Section d = top.child("dispersion");
    cfg.dispersion_n_max = d.get("n_max", cfg.dispersion_n_max);
    d.finish();
    if (cfg.dispersion_n_max < 0) throw ArgumentError("config: dispersion.n_max must be >= 0");
  }
  top.finish();
  return cfg;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    ExperimentConfig cfg = parse_config(buf.str(), path.parent_path());
    cfg.source = path;
    return cfg;
  } catch (const ArgumentError& e) {
    throw ArgumentError(path.string() + ": " + e.what());
  }
}

fs::path resolve_output_dir(const ExperimentConfig& cfg, const fs::path& root) {
  return cfg.output_dir.is_absolute() ? cfg.output_dir : root / cfg.output_dir;
}

fs::path default_output_root() {
  const char* env = std::getenv("BIOFILM_OUTPUT_ROOT");
  return env && *env ? fs::path(env) : fs::current_path();
}

RunSummary run_experiment(const ExperimentConfig& cfg, const fs::path& output_root) {
  const fs::path dir = resolve_output_dir(cfg, output_root);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  switch (cfg.experiment) {
    case ExperimentKind::fmodel_run:
    case ExperimentKind::fmodel_linear: o = run_fmodel(cfg, dir); break;
    case ExperimentKind::cascade_check: o = run_cascade(cfg, dir); break;
    case ExperimentKind::hmodel_bump: o = run_bump(cfg, dir); break;
    case ExperimentKind::hmodel_selfsimilar: o = run_selfsimilar(cfg, dir); break;
    case ExperimentKind::stability_scan: o = run_stability(cfg, dir); break;
    case ExperimentKind::dispersion_table: o = run_dispersion(cfg, dir); break;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  ordered_json meta;
  meta["experiment"] = to_string(cfg.experiment);
  meta["config_path"] = cfg.source.string();
  meta["config"] = config_json(cfg);
  meta["termination"] = o.termination;
  meta["final_time"] = o.final_time;
  meta["exit_code"] = o.exit_code;
  meta["outputs"] = o.files;
  meta["versions"] = {{"biofilm", version()},
                      {"fft_backend", fft_backend_version()},
                      {"compiler", __VERSION__}};
  meta["wall_time_seconds"] = wall;

  const fs::path json_path = dir / "run.json";
  std::ofstream js(json_path, std::ios::binary | std::ios::trunc);
  if (!js) throw IoError("cannot open '" + json_path.string() + "' for writing");
  js << meta.dump(2) << '\n';
  js.close();
  if (!js) throw IoError("failed writing '" + json_path.string() + "'");

  return {o.exit_code, o.termination, o.final_time, dir};
}

}  // namespace biofilm::cli
