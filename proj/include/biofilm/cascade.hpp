#pragma once

#include <vector>

#include "biofilm/field.hpp"
#include "biofilm/multipliers.hpp"
#include "biofilm/rk45.hpp"

namespace biofilm {

/// Accepted states of an RK run with their time derivatives; evaluates
/// between steps by cubic Hermite interpolation.
struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;
  std::vector<SpectralField> derivatives;

  double t_begin() const { return times.front(); }
  double t_end() const { return times.back(); }
  const SpectralField& final_state() const { return states.back(); }
  /// Throws ArgumentError outside [t_begin, t_end].
  SpectralField at(double t) const;
};

/// The two cascade levels and the expansion parameter they are combined with.
struct CascadePair {
  Trajectory g0;
  Trajectory g1;
  double epsilon = 0.0;
};

/// Tolerances tight enough that the O(eps^3) remainder dominates the
/// integration error for eps down to ~1e-3.
Rk45Options cascade_default_options();

/// g0_t = L_t g0, integrated mode-wise by the shared RK machinery.
Trajectory solve_g0(const SpectralField& g0_init, double t0, double t1, const ModelParams& p,
                    const Rk45Options& opts = cascade_default_options());

/// Forcing of the first-order level: the f-model quadratic part evaluated on g0.
SpectralField g1_forcing(const SpectralField& g0, double t, const ModelParams& p);

/// g1_t = L_t g1 + g1_forcing(g0(t)), with g0 read from its trajectory.
Trajectory solve_g1(const Trajectory& g0, const SpectralField& g1_init, double t0, double t1,
                    const ModelParams& p, const Rk45Options& opts = cascade_default_options());

struct CascadeComparison {
  double err_norm = 0.0;  ///< ||f_direct - (eps g0 + eps^2 g1)||_{H^2} at t_end
  SpectralField direct;
  SpectralField composed;
  CascadePair pair;
};

/// Solves the f-model from eps f0 directly and compares with eps g0 + eps^2 g1,
/// where g0(0) = f0 and g1(0) = 0.
CascadeComparison compose_and_compare(const SpectralField& f0, double epsilon, double t_end,
                                      const ModelParams& p,
                                      const Rk45Options& opts = cascade_default_options());

}  // namespace biofilm
