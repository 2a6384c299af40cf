#include <doctest.h>

#include <cmath>
#include <vector>

#include "biofilm/diagnostics.hpp"
#include "biofilm/errors.hpp"
#include "biofilm/fmodel.hpp"
#include "oracles.hpp"

using namespace biofilm;
using oracle::pi;

TEST_CASE("dispersion relation values and limit") {
  CHECK(dispersion_lambda(0) == 0.0);
  CHECK(dispersion_lambda(1) == doctest::Approx(1.1875).epsilon(1e-15));
  CHECK(dispersion_lambda(2) == doctest::Approx(2.08).epsilon(1e-15));
  double prev = 0.0;
  for (int n = 1; n <= 5000; ++n) {
    const double l = dispersion_lambda(n);
    CHECK(l > prev);
    CHECK(l < 2.75);
    prev = l;
  }
  CHECK(std::abs(dispersion_lambda(1e6) - 2.75) < 1e-6);
}

TEST_CASE("dispersion relation matches the linearized model on single modes") {
  const GridSpec g(128);
  for (int n = 1; n <= 40; ++n) {
    SpectralField f(g);
    f.set_mode(n, {1.0, 0.0});
    CHECK(std::abs(rhs_linearized_autonomous(f).coeff(n).real() - dispersion_lambda(n)) < 1e-12);
  }
}

TEST_CASE("plane-wave exponent") {
  StabilityQuery q;
  q.wavenumber = 0.0;
  CHECK(planewave_beta(q) == 0.0);
  q.wavenumber = 1.0;
  CHECK(planewave_beta(q) == doctest::Approx(0.25).epsilon(1e-15));

  for (double a = 0.1; a <= 100.0; a *= 1.1) {
    q.wavenumber = a;
    q.delta = 0.0;
    CHECK(planewave_beta(q) > 0.0);
    q.delta = 1.0;
    if (a >= 2.0) CHECK(planewave_beta(q) < 0.0);
  }

  // c = 2, K/R0 = 1, delta = 0.5, a = 3, t = 1: hand evaluation.
  q.c = 2.0;
  q.delta = 0.5;
  q.wavenumber = 3.0;
  q.t = 1.0;
  const double num = 8.0 / 2.0 * 9.0 - 0.25 * std::exp(2.0) * 4.0 * 9.0;
  CHECK(planewave_beta(q) == doctest::Approx(num / (1.0 + 8.0 * 9.0)).epsilon(1e-14));
  q.capillary_time_factor = false;
  CHECK(planewave_beta(q) == doctest::Approx((36.0 - 9.0) / 73.0).epsilon(1e-14));
}

TEST_CASE("continuation integrand and integral") {
  const auto a = ModelParams::autonomous();
  ModelParams p;
  CHECK(continuation_integrand(0.0, 3.0, a) == 1.0);
  CHECK(continuation_integrand(2.0, 0.0, p) == 3.0);
  for (double t = -3.0; t <= 3.0; t += 0.5) CHECK(continuation_integrand(0.0, t, p) > 0.0);
  CHECK_THROWS_AS(continuation_integrand(-1.0, 0.0, p), ArgumentError);

  std::vector<double> times, zeros;
  for (int i = 0; i <= 10000; ++i) {
    times.push_back(i * 1e-4);
    zeros.push_back(0.0);
  }
  const auto ia = continuation_integral(times, zeros, a);
  CHECK(ia.back() == doctest::Approx(1.0).epsilon(1e-14));
  const auto ip = continuation_integral(times, zeros, p);
  CHECK(ia.front() == 0.0);
  CHECK(ip.back() == doctest::Approx((std::exp(3.0) - 1.0) / 3.0).epsilon(1e-7));
  CHECK((std::exp(3.0) - 1.0) / 3.0 == doctest::Approx(6.3618).epsilon(1e-5));
  for (std::size_t i = 1; i < ip.size(); ++i) CHECK(ip[i] >= ip[i - 1]);

  CHECK_THROWS_AS(continuation_integral(times, std::vector<double>(3), p), ArgumentError);
}

TEST_CASE("energy and dissipation") {
  const GridSpec g(64);
  const ModelParams p;
  CHECK(energy_E(SpectralField(g), 0.0, p) == 0.0);
  CHECK(dissipation_D(SpectralField(g), 0.0, p) == 0.0);
  SpectralField s(g);
  s.set_mode(1, {0.0, -0.5});
  CHECK(energy_E(s, 0.0, p) == doctest::Approx(2.0 * pi).epsilon(1e-14));
  CHECK(dissipation_D(s, 0.0, p) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(dissipation_D(s, 1.0, p) == doctest::Approx(pi * std::exp(3.0)).epsilon(1e-14));
}

TEST_CASE("gamma threshold") {
  ModelParams p;
  p.alpha = -2.0;
  CHECK(gamma_threshold(p) == 0.0);
  p.alpha = -3.0;
  p.K = 2.0;
  CHECK(gamma_threshold(p) == doctest::Approx(-1.0));
  p.alpha = 0.0;
  CHECK(gamma_threshold(p) > 0.0);
}

TEST_CASE("small data: energy is nonincreasing along the f-model") {
  const GridSpec g(64);
  SpectralField f0(g);
  f0.set_mode(1, {0.0, -0.5e-3});
  IntegratorConfig cfg;
  cfg.t_end = 2.0;
  const auto rec = integrate(f0, FModelKind::nonautonomous, cfg, ModelParams{});
  REQUIRE(rec.termination == Termination::reached_t_end);
  for (std::size_t i = 1; i < rec.energies.size(); ++i) {
    CHECK(rec.energies[i] <= rec.energies[i - 1] * (1.0 + 1e-12));
  }
}

TEST_CASE("continuation integral accelerates along a capped run") {
  const GridSpec g(128);
  SpectralField f0(g);
  f0.set_mode(2, {0.0, -0.5});
  IntegratorConfig cfg;
  cfg.t_end = 10.0;
  cfg.blowup_cap = 50.0;
  cfg.abs_tol = 1e-8;
  cfg.rel_tol = 1e-6;
  const auto rec = integrate(f0, FModelKind::autonomous, cfg, ModelParams::autonomous());
  REQUIRE(rec.termination == Termination::blowup_cap_hit);
  const auto& I = rec.continuation_integral;
  const auto& t = rec.times;
  const std::size_t n = I.size();
  REQUIRE(n > 10);
  const double slope_first = (I[1] - I[0]) / (t[1] - t[0]);
  const double slope_last = (I[n - 1] - I[n - 2]) / (t[n - 1] - t[n - 2]);
  CHECK(slope_last > 10.0 * slope_first);
  for (std::size_t i = 1; i < n; ++i) CHECK(I[i] >= I[i - 1]);
}
