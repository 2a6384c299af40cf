// Command-line driver: run, validate and sweep experiment configs.
//
// Exit codes: 0 success, 2 a run stopped early (blow-up cap or step-size
// underflow), 1 any error.

#include <glob.h>

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <iostream>
#include <mutex>
#include <thread>

#include "biofilm/version.hpp"
#include "experiment.hpp"

namespace fs = std::filesystem;
using namespace biofilm::cli;

namespace {

std::mutex g_print;

void report(const std::string& line, bool error = false) {
  std::lock_guard lock(g_print);
  (error ? std::cerr : std::cout) << line << std::endl;
}

int run_one(const fs::path& config, const fs::path& root) {
  try {
    const ExperimentConfig cfg = load_config(config);
    const RunSummary s = run_experiment(cfg, root);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", s.final_time);
    report(config.string() + ": " + s.termination + " at t = " + buf + " -> " +
           s.output_dir.string());
    return s.exit_code;
  } catch (const std::exception& e) {
    report("error: " + std::string(e.what()), true);
    return 1;
  }
}

std::vector<fs::path> expand(const std::vector<std::string>& patterns) {
  std::vector<fs::path> out;
  for (const auto& pattern : patterns) {
    glob_t g{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
    if (rc == 0) {
      for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
    }
    globfree(&g);
    if (rc == GLOB_NOMATCH) report("warning: pattern '" + pattern + "' matched nothing", true);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Worst code wins: any error (1) dominates, then early stops (2).
int combine(int a, int b) {
  if (a == 1 || b == 1) return 1;
  return std::max(a, b);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thin-film biofilm growth experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", biofilm::version());

  std::string output_root;
  auto add_root = [&](CLI::App* sub) {
    sub->add_option("--output-root", output_root,
                    "Directory for relative output_dir entries (default: $BIOFILM_OUTPUT_ROOT or cwd)");
  };

  std::string run_config;
  auto* run = app.add_subcommand("run", "Run one experiment config");
  run->add_option("config", run_config, "YAML config file")->required()->check(CLI::ExistingFile);
  add_root(run);

  std::vector<std::string> validate_configs;
  auto* validate = app.add_subcommand("validate", "Check configs without running them");
  validate->add_option("configs", validate_configs, "YAML config files")->required();

  std::vector<std::string> patterns;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* sweep = app.add_subcommand("sweep", "Run every config matching the glob patterns");
  sweep->add_option("patterns", patterns, "Glob patterns, e.g. 'configs/*.yaml'")->required();
  sweep->add_option("-j,--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);
  add_root(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const fs::path root = output_root.empty() ? default_output_root() : fs::path(output_root);

  if (*run) return run_one(run_config, root);

  if (*validate) {
    int rc = 0;
    for (const auto& c : validate_configs) {
      try {
        const ExperimentConfig cfg = load_config(c);
        report(c + ": ok (" + std::string(to_string(cfg.experiment)) + ")");
      } catch (const std::exception& e) {
        report("error: " + std::string(e.what()), true);
        rc = 1;
      }
    }
    return rc;
  }

  const auto configs = expand(patterns);
  if (configs.empty()) {
    report("error: no config files matched", true);
    return 1;
  }
  std::atomic<std::size_t> next{0};
  std::vector<int> codes(configs.size(), 0);
  std::vector<std::thread> pool;
  const unsigned n_workers = std::min<std::size_t>(jobs, configs.size());
  for (unsigned w = 0; w < n_workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < configs.size();) {
        codes[i] = run_one(configs[i], root);
      }
    });
  }
  for (auto& t : pool) t.join();
  int rc = 0;
  for (int c : codes) rc = combine(rc, c);
  return rc;
}
