#pragma once

#include <functional>
#include <optional>

#include "biofilm/field.hpp"

namespace biofilm {

/// Right-hand side f(t, y) of y' = f(t, y).
using Rhs = std::function<SpectralField(double t, const SpectralField& y)>;

struct Rk45Options {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  /// When set, every step has this size and no error control is done.
  std::optional<double> fixed_dt;
};

/// Information handed to the observer after every accepted step.
struct AcceptedStep {
  double t;
  double dt;
  const SpectralField& y;
  const SpectralField& dydt;  ///< f(t, y) at the accepted point
};

enum class Rk45Stop { reached_end, dt_underflow, observer };

struct Rk45Result {
  Rk45Stop stop;
  double t;
  SpectralField y;
  int accepted = 0;
  int rejected = 0;
};

/// Dormand-Prince 5(4) with FSAL and a PI step-size controller.
///
/// `project` (optional) is applied to every accepted state before the
/// observer sees it. The observer returns false to stop the run. The error
/// norm is the max over coefficients of |err| / (abs_tol + rel_tol * |y|);
/// a step is accepted when it is <= 1. Non-finite trial errors count as
/// rejections; a non-finite accepted state throws NumericalFailure.
Rk45Result integrate_rk45(SpectralField y0, double t0, double t_end, const Rhs& rhs,
                          const Rk45Options& opts,
                          const std::function<void(SpectralField&)>& project,
                          const std::function<bool(const AcceptedStep&)>& observer);

}  // namespace biofilm
