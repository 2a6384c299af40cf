#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "biofilm/field.hpp"
#include "biofilm/multipliers.hpp"
#include "biofilm/rk45.hpp"

namespace biofilm {

/// Quadratic part of the non-autonomous f-model:
/// Q_t[(3/2) w (f_x L_t f)_x + 3 w ((L_t f_x) f)_x + 3 (5/2 + alpha) w (f_x f)_x].
/// Also the forcing of the first-order cascade equation with f = g0.
SpectralField nonlinear_part(const SpectralField& f, double t, const ModelParams& p);

/// f_t = L_t f + Q_t[(3/2) w (f_x L_t f)_x + 3 w ((L_t f_x) f)_x
///                  + 3 (5/2 + alpha) w (f_x f)_x],  w = (K/R0) e^{(3+alpha)t}.
/// Requires |mean(f)| <= 1e-12; the returned mean is exactly zero.
SpectralField rhs_nonautonomous(const SpectralField& f, double t, const ModelParams& p);

/// f_t = L f + (3/2) Q(f_x L f)_x + 3 Q((L f_x) f)_x + (3/2) L(f^2).
/// `p` must be the autonomous parameter set (alpha = -3, K/R0 = 1).
SpectralField rhs_autonomous(const SpectralField& f, const ModelParams& p);

/// Linearization about the constant state 1:
/// g_t = 3 w Q_t L_t g_xx + 4 L_t g.
SpectralField rhs_linearized(const SpectralField& g, double t, const ModelParams& p);

/// The autonomous linear model in its printed form g_t = 3 L^2 g + 4 L g,
/// with growth rate lambda(n) = 3n^4/(4(1+n^2)^2) + 2n^2/(1+n^2).
/// Note this is not the alpha = -3 specialization of rhs_linearized, which
/// evaluates to -6 L^2 g + 4 L g.
SpectralField rhs_linearized_autonomous(const SpectralField& g);

enum class FModelKind { nonautonomous, autonomous, linearized, linearized_autonomous };

std::string_view to_string(FModelKind kind);
FModelKind fmodel_kind_from_string(std::string_view name);

Rhs make_rhs(FModelKind kind, const ModelParams& p);

struct IntegratorConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  double blowup_cap = 1e3;  ///< threshold on the sup norm
  double t_end = 1.0;
  int snapshot_stride = 100;
  std::optional<double> fixed_dt;

  void validate() const;
};

enum class Termination { reached_t_end, blowup_cap_hit, dt_underflow };

std::string_view to_string(Termination t);

/// Trajectory of an f-model run with per-step diagnostics.
///
/// Per-step arrays (times ... dts) start with the initial state and hold one
/// entry per accepted step; dts[0] is 0.
struct RunRecord {
  std::vector<double> times;
  std::vector<double> sup_norms;
  std::vector<double> h2_norms;
  std::vector<double> continuation_integral;
  std::vector<double> energies;
  std::vector<double> dissipations;
  std::vector<double> dts;

  std::vector<double> snapshot_times;
  std::vector<SpectralField> snapshots;

  Termination termination = Termination::reached_t_end;
  int rejected_steps = 0;

  double final_time() const { return times.back(); }
  const SpectralField& final_state() const { return snapshots.back(); }
};

/// Adaptive Dormand-Prince integration of an f-model from f0 (mean zero).
/// After every accepted step the zero mode is set to 0 and the state is
/// dealiased. Stops at t_end, when the sup norm exceeds blowup_cap, or when
/// the step size falls below dt_min.
RunRecord integrate(const SpectralField& f0, const Rhs& rhs, const IntegratorConfig& cfg,
                    const ModelParams& p);

RunRecord integrate(const SpectralField& f0, FModelKind kind, const IntegratorConfig& cfg,
                    const ModelParams& p);

}  // namespace biofilm
