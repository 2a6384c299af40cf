#pragma once

#include <vector>

#include "biofilm/field.hpp"

namespace biofilm {

/// Physical and model constants shared by the f-model and the height model.
struct ModelParams {
  double K = 1.0;        ///< rheology constant
  double R0 = 1.0;       ///< reference radius
  double alpha = 0.0;    ///< radius law R(t) = R0 exp(alpha t)
  double delta = 0.0;    ///< aspect ratio; 0 drops the capillary term
  double epsilon = 1.0;  ///< perturbation amplitude of h = 1 + epsilon g
  double h_inf = 1e-3;   ///< precursor film height

  /// K/R0 = 1, alpha = -3: the f-model coefficients become time independent.
  static ModelParams autonomous();

  /// Throws ArgumentError when an invariant is broken.
  void validate() const;

  double k_over_r0() const { return K / R0; }
  /// (K/R0) exp((3 + alpha) t)
  double growth_weight(double t) const;
  /// 5/2 + alpha
  double l_amplitude() const { return 2.5 + alpha; }
};

/// Symbol of the smoothing operator Q_t = (1 - w(t) d_xx)^{-1} at wavenumber k.
double q_symbol(double k, double t, const ModelParams& p);
/// Symbol of L_t = -(5/2 + alpha) w k^2 / (1 + w k^2).
double l_symbol(double k, double t, const ModelParams& p);

SpectralField apply_Q(const SpectralField& f, double t, const ModelParams& p);
SpectralField apply_L(const SpectralField& f, double t, const ModelParams& p);

/// Autonomous operators: Q = (1 - d_xx)^{-1}, L = k^2 / (2 (1 + k^2)).
SpectralField apply_Q_autonomous(const SpectralField& f);
SpectralField apply_L_autonomous(const SpectralField& f);

/// Kernel of Q_t on the 2*pi torus, evaluated at any real x.
double greens_value(double x, double t, const ModelParams& p);
/// Samples of the kernel on the grid nodes. Requires period 2*pi.
std::vector<double> greens_function(double t, const ModelParams& p, const GridSpec& grid);

}  // namespace biofilm
