#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace biofilm {

using Complex = std::complex<double>;

/// Collocation grid on the periodic interval [0, period).
///
/// Wavenumber index n maps to the physical wavenumber 2*pi*n/period, so with
/// the default period 2*pi the index and the wavenumber coincide.
class GridSpec {
 public:
  explicit GridSpec(int n_nodes, double period = 2.0 * std::numbers::pi);

  int n_nodes() const { return n_nodes_; }
  double period() const { return period_; }
  /// Largest wavenumber index kept by the 2/3 rule.
  int dealias_cutoff() const { return n_nodes_ / 3; }
  double wavenumber(int n) const { return 2.0 * std::numbers::pi * n / period_; }
  double spacing() const { return period_ / n_nodes_; }
  std::vector<double> nodes() const;

  /// Wavenumber index of storage slot k (FFT order).
  int index_of_slot(int k) const { return k < n_nodes_ / 2 ? k : k - n_nodes_; }
  int slot_of_index(int n) const { return n >= 0 ? n : n + n_nodes_; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int n_nodes_;
  double period_;
};

/// Real periodic function held as its complex Fourier coefficients.
///
/// Coefficients are stored in FFT order and normalized so that
/// f(x_j) = sum_n c_n exp(i k_n x_j); coeff(0) is therefore the mean.
/// Every operation in this module keeps c(-n) == conj(c(n)) exactly.
class SpectralField {
 public:
  explicit SpectralField(GridSpec grid);
  SpectralField(GridSpec grid, std::vector<Complex> coeffs);

  const GridSpec& grid() const { return grid_; }
  int size() const { return grid_.n_nodes(); }

  /// Coefficient of wavenumber index n, n in [-N/2, N/2).
  Complex coeff(int n) const;
  /// Sets c(n) and c(-n) = conj(c(n)); for n == 0 or n == -N/2 only the
  /// real part is kept.
  void set_mode(int n, Complex value);

  std::span<const Complex> data() const { return coeffs_; }
  std::span<Complex> data() { return coeffs_; }

  bool is_mean_zero() const { return coeffs_[0] == Complex{}; }
  /// Largest |c(-n) - conj(c(n))| over all n (0 for a real field).
  double hermitian_defect() const;
  double max_abs_coeff() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);
  /// this += s * other
  SpectralField& add_scaled(double s, const SpectralField& other);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  friend bool operator==(const SpectralField&, const SpectralField&) = default;

 private:
  void require_same_grid(const SpectralField& other) const;

  GridSpec grid_;
  std::vector<Complex> coeffs_;
};

SpectralField to_spectral(std::span<const double> samples, const GridSpec& grid);
std::vector<double> to_physical(const SpectralField& f);

/// d^order f / dx^order. The Nyquist coefficient is dropped for every order.
SpectralField derivative(const SpectralField& f, int order = 1);
SpectralField dealias(const SpectralField& f);
/// Pseudo-spectral product followed by 2/3-rule truncation.
SpectralField multiply(const SpectralField& f, const SpectralField& g);

struct FieldNorms {
  double l2 = 0.0;
  double linf = 0.0;
  double hdot1 = 0.0;
  double hdot2 = 0.0;
  double h2 = 0.0;
};

FieldNorms norms(const SpectralField& f);
double l2_norm(const SpectralField& f);
double hdot_norm(const SpectralField& f, int s);
double linf_norm(const SpectralField& f);

/// Applies a real even symbol m(k) coefficient-wise, k the physical wavenumber.
template <class Symbol>
SpectralField apply_symbol(const SpectralField& f, Symbol&& symbol) {
  SpectralField out = f;
  auto c = out.data();
  const GridSpec& g = f.grid();
  for (int k = 0; k < g.n_nodes(); ++k) {
    const int n = g.index_of_slot(k);
    const double kn = g.wavenumber(n < 0 ? -n : n);
    c[k] *= symbol(kn);
  }
  return out;
}

}  // namespace biofilm
