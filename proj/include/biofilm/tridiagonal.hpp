#pragma once

#include <span>
#include <vector>

namespace biofilm {

/// Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1];
/// lower[0] and upper[n-1] are ignored.
struct Tridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  explicit Tridiagonal(std::size_t n = 0) : lower(n), diag(n), upper(n) {}
  std::size_t size() const { return diag.size(); }

  /// |diag[i]| >= |lower[i]| + |upper[i]| for every row.
  bool diagonally_dominant() const;
  /// y = A x
  std::vector<double> apply(std::span<const double> x) const;
};

/// Thomas algorithm, no pivoting. Throws NumericalFailure on a vanishing pivot.
std::vector<double> solve_thomas(const Tridiagonal& a, std::span<const double> rhs);

}  // namespace biofilm
