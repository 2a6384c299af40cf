#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "biofilm/fmodel.hpp"
#include "biofilm/hmodel.hpp"
#include "biofilm/multipliers.hpp"

namespace biofilm::cli {

enum class ExperimentKind {
  fmodel_run,
  fmodel_linear,
  cascade_check,
  hmodel_bump,
  hmodel_selfsimilar,
  stability_scan,
  dispersion_table,
};

std::string_view to_string(ExperimentKind k);
ExperimentKind experiment_from_string(std::string_view name);

enum class InitialKind { sine, gaussian_bump, constant, selfsimilar_matched, custom_samples };

std::string_view to_string(InitialKind k);

struct InitialCondition {
  InitialKind kind = InitialKind::sine;
  int k = 1;               // sine wavenumber (nonzero)
  double amplitude = 1.0;  // sine and gaussian_bump
  double base = 1.0;       // constant offset under a sine on height grids
  double center = 0.0;
  double width = 1.0;
  double c = 1.0;          // constant
  double t0 = 0.0;         // selfsimilar_matched
  std::filesystem::path file;  // custom_samples, resolved against the config directory
};

struct HeightSettings {
  HVariant variant = HVariant::scaled_radial;
  TimeScheme scheme = TimeScheme::heun;
  double extent = 20.0;
  double spacing = 0.1;
  double dt = 5e-4;
  double t_end = 1.0;
  RadiusKind radius = RadiusKind::self_similar;
  double radius_alpha = 0.0;
  double radius_factor = 35.0 / 6.0;
  std::vector<double> snapshot_times;
  int diagnostics_stride = 1;
  double support_threshold_factor = 2.0;
};

struct CascadeSettings {
  std::vector<double> epsilons{1e-2, 5e-3};
  double t_end = 0.5;
};

struct StabilitySettings {
  double c = 1.0;
  std::vector<double> deltas{0.0, 1.0};
  double t = 0.0;
  double a_min = 0.1;
  double a_max = 100.0;
  int count = 61;  // log-spaced wavenumbers
  bool capillary_time_factor = true;
};

struct SelfSimilarSettings {
  std::vector<double> times{1.0, 2.0, 3.0};
};

/// Everything one run needs, after defaults are filled in and the input
/// has been validated.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::fmodel_run;
  std::filesystem::path source;      // config file, empty when parsed from text
  std::filesystem::path output_dir;  // as written in the config
  ModelParams params;
  int n_nodes = 256;
  FModelKind model = FModelKind::nonautonomous;
  IntegratorConfig integrator;
  InitialCondition initial;
  HeightSettings height;
  CascadeSettings cascade;
  StabilitySettings stability;
  SelfSimilarSettings selfsimilar;
  int dispersion_n_max = 64;
};

/// Parses YAML text. Unknown keys and missing required fields throw
/// ArgumentError naming the offending key. `base_dir` anchors relative paths.
ExperimentConfig parse_config(const std::string& yaml_text,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Relative output directories are placed under `root`.
std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg,
                                         const std::filesystem::path& root);

/// Default output root: $BIOFILM_OUTPUT_ROOT when set, else the working directory.
std::filesystem::path default_output_root();

struct RunSummary {
  int exit_code = 0;  // 0 completed, 2 blow-up termination
  std::string termination;
  double final_time = 0.0;
  std::filesystem::path output_dir;
};

/// Runs the experiment and writes its CSV files and run.json.
RunSummary run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& output_root);

}  // namespace biofilm::cli
