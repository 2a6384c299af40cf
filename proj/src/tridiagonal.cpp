#include "biofilm/tridiagonal.hpp"

#include <cmath>
#include <string>

#include "biofilm/errors.hpp"

namespace biofilm {

bool Tridiagonal::diagonally_dominant() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    const double off = (i > 0 ? std::abs(lower[i]) : 0.0) + (i + 1 < n ? std::abs(upper[i]) : 0.0);
    if (std::abs(diag[i]) < off) return false;
  }
  return true;
}

std::vector<double> Tridiagonal::apply(std::span<const double> x) const {
  const std::size_t n = size();
  if (x.size() != n) throw ArgumentError("Tridiagonal::apply: size mismatch");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = diag[i] * x[i];
    if (i > 0) y[i] += lower[i] * x[i - 1];
    if (i + 1 < n) y[i] += upper[i] * x[i + 1];
  }
  return y;
}

std::vector<double> solve_thomas(const Tridiagonal& a, std::span<const double> rhs) {
  const std::size_t n = a.size();
  if (rhs.size() != n) throw ArgumentError("solve_thomas: size mismatch");
  if (n == 0) return {};
  std::vector<double> c(n), d(n);
  double pivot = a.diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) pivot = a.diag[i] - a.lower[i] * c[i - 1];
    if (!(std::abs(pivot) > 1e-300) || !std::isfinite(pivot)) {
      throw NumericalFailure("solve_thomas: singular pivot in row " + std::to_string(i));
    }
    c[i] = i + 1 < n ? a.upper[i] / pivot : 0.0;
    d[i] = ((i > 0 ? rhs[i] - a.lower[i] * d[i - 1] : rhs[i])) / pivot;
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

}  // namespace biofilm
