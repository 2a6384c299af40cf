#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "biofilm/multipliers.hpp"
#include "biofilm/tridiagonal.hpp"

namespace biofilm {

enum class Geometry { radial, slab };

/// Uniform finite-difference grid: r in [0, extent] (radial) or
/// x in [-extent, extent] (slab), n_cells nodes including both ends.
struct FdGrid {
  Geometry geometry = Geometry::radial;
  int n_cells = 201;
  double extent = 20.0;

  FdGrid() = default;
  FdGrid(Geometry g, int n, double ext);
  /// Grid with (approximately) the requested spacing.
  static FdGrid with_spacing(Geometry g, double extent, double spacing);

  double spacing() const;
  double coord(int i) const;
  std::vector<double> coords() const;
};

struct HeightField {
  FdGrid grid;
  std::vector<double> h;
  double t = 0.0;
};

/// Which height equation is stepped. The orig variants carry the growth
/// term +h; the scaled variants are the same equations after h = e^t h~.
enum class HVariant { orig_radial, orig_slab, scaled_radial, scaled_slab };

std::string_view to_string(HVariant v);
HVariant hvariant_from_string(std::string_view name);
Geometry geometry_of(HVariant v);
bool is_scaled(HVariant v);

/// R(t)/R0 and its time derivative.
struct RadiusValue {
  double ratio = 1.0;
  double rate = 0.0;
};

enum class RadiusKind { self_similar, exp_alpha };

/// Prescribed biofilm radius.
///  self_similar: R/R0 = (1 + factor K (e^{3t} - 1))^{1/7}, factor = 35/6 by default
///  exp_alpha:    R/R0 = e^{alpha t}
class RadiusLaw {
 public:
  static RadiusLaw self_similar(double K, double factor = 35.0 / 6.0);
  static RadiusLaw exp_alpha(double alpha);

  RadiusValue operator()(double t) const;
  RadiusKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double factor() const { return factor_; }

 private:
  RadiusKind kind_ = RadiusKind::exp_alpha;
  double alpha_ = 0.0;
  double K_ = 0.0;
  double factor_ = 35.0 / 6.0;
};

/// radius_law(kind, alpha, p): self_similar uses p.K; exp_alpha uses alpha.
RadiusLaw radius_law(RadiusKind kind, double alpha, const ModelParams& p);

/// M(h) u = b(h) for u = h_t.
struct HtSystem {
  Tridiagonal matrix;
  std::vector<double> rhs;
};

/// Assembles the linear system for h_t. Fluxes live on half nodes with
/// arithmetic means of h^3 and h^2; the radial centre uses a symmetry ghost
/// node. Boundary nodes (outer radial node, both slab ends) follow the
/// far-field equation h_t = h (orig) or h_t = 0 (scaled).
HtSystem assemble_ht_system(const HeightField& state, double t, const ModelParams& p,
                            HVariant variant, const RadiusLaw& law);

/// One semi-implicit step: exact solve for h_t, then h += dt h_t, floored at h_inf.
HeightField step_euler(const HeightField& state, double dt, const ModelParams& p,
                       HVariant variant, const RadiusLaw& law);

/// Heun predictor-corrector on the same h_t solve: two solves per step,
/// second order in dt. Each stage is floored at h_inf.
HeightField step_heun(const HeightField& state, double dt, const ModelParams& p,
                      HVariant variant, const RadiusLaw& law);

enum class TimeScheme { euler, heun };

std::string_view to_string(TimeScheme s);
TimeScheme time_scheme_from_string(std::string_view name);

/// e^t / (R/R0)^2 * max(1 - (3/2) r^2 / R^2, 0)^{1/3}, floored at h_inf.
std::vector<double> selfsimilar_profile(std::span<const double> r, double t,
                                        const RadiusLaw& law, const ModelParams& p);
/// Time derivative of the unfloored profile; 0 where the floor is active.
std::vector<double> selfsimilar_profile_rate(std::span<const double> r, double t,
                                             const RadiusLaw& law, const ModelParams& p);

/// Discrete L2 norm (interior nodes) of the residual of the radial equation
/// on the self-similar profile, one entry per time. With `scaled` the
/// residual is divided by e^t, i.e. evaluated for the scaled equation.
std::vector<double> residual_check(const FdGrid& grid, std::span<const double> times,
                                   const RadiusLaw& law, const ModelParams& p,
                                   bool scaled = false);

/// Pointwise residual M(h) h_t - b(h) of the radial orig equation.
std::vector<double> selfsimilar_residual(const FdGrid& grid, double t, const RadiusLaw& law,
                                         const ModelParams& p);

/// Summary of one height profile.
struct HeightMetrics {
  double max_height = 0.0;
  double l2 = 0.0;
  double support_width = 0.0;   ///< extent of {h > threshold} (diameter for radial)
  double front_position = 0.0;  ///< outermost |coordinate| with h > threshold
  double mass = 0.0;            ///< int h r dr (radial) or int h dx (slab), cell volumes
};

HeightMetrics height_metrics(const HeightField& f, double threshold);

struct HeightRunConfig {
  HVariant variant = HVariant::scaled_radial;
  TimeScheme scheme = TimeScheme::heun;
  double dt = 5e-4;
  double t_end = 1.0;
  std::vector<double> snapshot_times;  ///< snapshots are taken at the first step reaching each
  int diagnostics_stride = 1;          ///< metrics every n steps (plus the final one)
  double support_threshold_factor = 2.0;  ///< support is {h > factor * h_inf}
};

struct HeightTrajectory {
  std::vector<double> times;
  std::vector<HeightMetrics> metrics;
  std::vector<double> dts;
  std::vector<HeightField> snapshots;
};

/// Fixed-step run with the configured time scheme, metrics and snapshots.
HeightTrajectory run_height(const HeightField& initial, const ModelParams& p,
                            const RadiusLaw& law, const HeightRunConfig& cfg);

}  // namespace biofilm
