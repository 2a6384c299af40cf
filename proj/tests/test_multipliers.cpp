#include <doctest.h>

#include <cmath>
#include <random>

#include "biofilm/errors.hpp"
#include "biofilm/multipliers.hpp"
#include "oracles.hpp"

using namespace biofilm;
using oracle::pi;

namespace {

ModelParams with_alpha(double alpha) {
  ModelParams p;
  p.alpha = alpha;
  return p;
}

SpectralField sine(const GridSpec& g) {
  SpectralField s(g);
  s.set_mode(1, {0.0, -0.5});
  return s;
}

}  // namespace

TEST_CASE("model params validation") {
  CHECK_NOTHROW(ModelParams{}.validate());
  ModelParams p;
  p.K = 0.0;
  CHECK_THROWS_AS(p.validate(), ArgumentError);
  p = {};
  p.h_inf = -1.0;
  CHECK_THROWS_AS(p.validate(), ArgumentError);
  p = {};
  p.delta = -0.1;
  CHECK_THROWS_AS(p.validate(), ArgumentError);
  const auto a = ModelParams::autonomous();
  CHECK(a.alpha == -3.0);
  CHECK(a.growth_weight(7.0) == 1.0);
}

TEST_CASE("q_symbol examples") {
  const auto a = ModelParams::autonomous();
  CHECK(q_symbol(0.0, 3.0, ModelParams{}) == 1.0);
  CHECK(q_symbol(1.0, 0.7, a) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q_symbol(3.0, 0.0, a) == doctest::Approx(0.1).epsilon(1e-15));
  // Overflowing weight: the limit is exact.
  CHECK(q_symbol(1.0, 400.0, ModelParams{}) == 0.0);
  CHECK(l_symbol(1.0, 400.0, ModelParams{}) == -2.5);
}

TEST_CASE("q_symbol lies in (0, 1] and decreases in |n|") {
  for (double alpha : {-3.0, -1.0, 0.0, 1.0}) {
    const auto p = with_alpha(alpha);
    for (double t : {-5.0, -1.0, 0.0, 1.0, 5.0}) {
      double prev = 1.0;
      for (int n = 0; n <= 2000; ++n) {
        const double q = q_symbol(n, t, p);
        CHECK(q > 0.0);
        CHECK(q <= 1.0);
        CHECK(q <= prev);
        prev = q;
      }
    }
  }
}

TEST_CASE("q_symbol is smoothing of order -2 uniformly in t") {
  // (1 + n^2) q <= max(1, 1/w) and w = e^{(3+alpha) t} is bounded below on
  // t in [-5, 5]; the bound is checked against that explicit constant.
  for (double alpha : {-1.0, 0.0, 1.0}) {
    const auto p = with_alpha(alpha);
    const double w_min = std::exp(-(3.0 + alpha) * 5.0);
    const double C = std::max(1.0, 1.0 / w_min);
    for (double t = -5.0; t <= 5.0; t += 0.25) {
      for (int n = 0; n <= 100000; n += 97) {
        const double v = (1.0 + double(n) * n) * q_symbol(n, t, p);
        CHECK(v * v <= C * C * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("l_symbol examples and bound") {
  const auto a = ModelParams::autonomous();
  CHECK(l_symbol(0.0, 1.0, ModelParams{}) == 0.0);
  CHECK(l_symbol(1.0, 0.0, a) == doctest::Approx(0.25).epsilon(1e-15));
  for (int n = 1; n <= 20; ++n) {
    CHECK(l_symbol(n, 2.0, a) == doctest::Approx(n * n / (2.0 * (1.0 + n * n))).epsilon(1e-14));
  }
  for (double alpha : {-3.0, -1.0, 0.0, 1.0}) {
    const auto p = with_alpha(alpha);
    for (double t : {0.0, 1.0, 5.0}) {
      for (double n = 1.0; n <= 1e6; n *= 1.37) {
        CHECK(std::abs(l_symbol(n, t, p)) <= 2.5 + std::abs(alpha));
      }
    }
  }
}

TEST_CASE("apply_Q and apply_L examples") {
  const GridSpec g(32);
  const auto a = ModelParams::autonomous();
  SpectralField c(g);
  c.set_mode(0, 4.0);
  CHECK(apply_Q(c, 1.0, ModelParams{}) == c);
  CHECK(apply_L(c, 1.0, ModelParams{}) == SpectralField(g));

  const auto s = sine(g);
  const auto qs = apply_Q(s, 0.3, a);
  const auto ls = apply_L(s, 0.3, a);
  CHECK(qs.coeff(1).imag() == doctest::Approx(-0.25));
  CHECK(ls.coeff(1).imag() == doctest::Approx(-0.125));
  CHECK(apply_Q_autonomous(s) == qs);
  CHECK(apply_L_autonomous(s) == ls);
}

TEST_CASE("L_t = (5/2 + alpha)(Q_t - I) on random fields") {
  std::mt19937_64 rng(101);
  const GridSpec g(256);
  for (double alpha : {-3.0, -1.0, 0.0, 1.0}) {
    const auto p = with_alpha(alpha);
    for (double t : {0.0, 1.0, 5.0}) {
      for (int trial = 0; trial < 10; ++trial) {
        const auto f = oracle::random_field(g, rng, 80, true);
        auto diff = apply_L(f, t, p);
        diff.add_scaled(-(2.5 + alpha), apply_Q(f, t, p) - f);
        CHECK(l2_norm(diff) <= 1e-12 * l2_norm(f));
      }
    }
  }
}

TEST_CASE("Q_t contracts and L_t is bounded on L2") {
  std::mt19937_64 rng(103);
  const GridSpec g(128);
  for (double alpha : {-3.0, -1.0, 0.0, 1.0}) {
    const auto p = with_alpha(alpha);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = oracle::random_field(g, rng, 60, true);
      const double t = 0.25 * trial - 2.0;
      CHECK(l2_norm(apply_Q(f, t, p)) <= l2_norm(f));
      CHECK(l2_norm(apply_L(f, t, p)) <= (2.5 + std::abs(alpha)) * l2_norm(f));
      CHECK(apply_L(f, t, p).coeff(0) == Complex{});
    }
  }
}

TEST_CASE("Green's function: sign, symmetry, normalization") {
  const GridSpec g(1024);
  for (double t : {0.0, 0.5}) {
    const ModelParams p;
    const auto G = greens_function(t, p, g);
    const auto x = g.nodes();
    for (int j = 0; j < 1024; ++j) {
      CHECK(G[j] > 0.0);
      CHECK(std::abs(greens_value(x[j], t, p) - greens_value(2.0 * pi - x[j], t, p)) < 1e-12);
    }
    const double lambda_sq = p.growth_weight(t);
    const double h = g.spacing();

    // Plain nodal sum equals the aliased symbol sum sum_m q(mN), exactly.
    double aliased = 1.0;
    const int M = 100000;
    for (int m = 1; m < M; ++m) aliased += 2.0 / (1.0 + lambda_sq * double(m) * m * 1024.0 * 1024.0);
    aliased += 2.0 / (lambda_sq * 1024.0 * 1024.0 * (M - 0.5));  // integral tail
    CHECK(std::abs(oracle::periodic_trapezoid(G) - aliased) < 1e-11);

    // Kink-corrected trapezoid, and Gauss-Legendre on the smooth cells.
    CHECK(std::abs(oracle::periodic_trapezoid(G) - h * h / (12.0 * lambda_sq) - 1.0) < 1e-8);
    const double gl = oracle::gauss_legendre([&](double y) { return greens_value(y, t, p); }, 0.0,
                                             2.0 * pi, 64);
    CHECK(std::abs(gl - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(greens_function(0.0, ModelParams{}, GridSpec(64, 1.0)), UnsupportedConfiguration);
}

TEST_CASE("Green's function closed form solves (1 - w d_xx) G = 0 away from 0") {
  const ModelParams p;
  for (double t : {0.0, 0.5, -1.0}) {
    const double w = p.growth_weight(t);
    for (double x : {0.3, 1.0, 2.5, 4.0, 6.0}) {
      const double e = 1e-4;
      const double gxx = (greens_value(x + e, t, p) - 2.0 * greens_value(x, t, p) +
                          greens_value(x - e, t, p)) / (e * e);
      CHECK(std::abs(greens_value(x, t, p) - w * gxx) < 1e-5);
    }
  }
}

TEST_CASE("convolution with G_t equals apply_Q over 50 random fields") {
  const GridSpec g(1024);
  std::mt19937_64 rng(107);
  const ModelParams p;
  for (int trial = 0; trial < 50; ++trial) {
    const double t = (trial % 2) ? 0.5 : 0.0;
    const auto f = oracle::random_field(g, rng, 24, true);
    const auto conv = oracle::convolve_kernel(greens_function(t, p, g), to_physical(f),
                                              p.growth_weight(t));
    const auto ref = to_physical(apply_Q(f, t, p));
    double err = 0.0;
    for (int j = 0; j < 1024; ++j) err = std::max(err, std::abs(conv[j] - ref[j]));
    CHECK(err < 1e-6);
  }
}

TEST_CASE("convolution spot check by Gauss-Legendre") {
  const GridSpec g(1024);
  std::mt19937_64 rng(109);
  const ModelParams p;
  const auto f = oracle::random_field(g, rng, 6, false);
  std::vector<std::pair<int, oracle::cplx>> modes;
  for (int n = -6; n <= 6; ++n) modes.emplace_back(n, f.coeff(n));
  const auto ref = to_physical(apply_Q(f, 0.0, p));
  const auto x = g.nodes();
  for (int j : {0, 100, 511, 777}) {
    // Cells split at y = x_j, where the kernel has its kink.
    const auto integrand = [&](double y) {
      return greens_value(x[j] - y, 0.0, p) * oracle::evaluate(modes, y);
    };
    const double v = oracle::gauss_legendre(integrand, x[j], x[j] + 2.0 * pi, 128);
    CHECK(std::abs(v - ref[j]) < 1e-10);
  }
}
