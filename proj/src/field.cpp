#include "biofilm/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "biofilm/errors.hpp"
#include "fft.hpp"

namespace biofilm {

GridSpec::GridSpec(int n_nodes, double period) : n_nodes_(n_nodes), period_(period) {
  if (n_nodes < 4 || n_nodes % 2 != 0) {
    throw ArgumentError("GridSpec: n_nodes must be even and >= 4, got " + std::to_string(n_nodes));
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ArgumentError("GridSpec: period must be positive and finite");
  }
}

std::vector<double> GridSpec::nodes() const {
  std::vector<double> x(n_nodes_);
  for (int j = 0; j < n_nodes_; ++j) x[j] = period_ * j / n_nodes_;
  return x;
}

SpectralField::SpectralField(GridSpec grid) : grid_(grid), coeffs_(grid.n_nodes()) {}

SpectralField::SpectralField(GridSpec grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != grid_.n_nodes()) {
    throw ArgumentError("SpectralField: expected " + std::to_string(grid_.n_nodes()) +
                        " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

Complex SpectralField::coeff(int n) const {
  const int half = grid_.n_nodes() / 2;
  if (n < -half || n >= half) {
    throw ArgumentError("SpectralField::coeff: index " + std::to_string(n) + " out of range");
  }
  return coeffs_[grid_.slot_of_index(n)];
}

void SpectralField::set_mode(int n, Complex value) {
  const int half = grid_.n_nodes() / 2;
  if (n < -half || n >= half) {
    throw ArgumentError("SpectralField::set_mode: index " + std::to_string(n) + " out of range");
  }
  if (n == 0 || n == -half) {
    coeffs_[grid_.slot_of_index(n)] = Complex{value.real(), 0.0};
    return;
  }
  coeffs_[grid_.slot_of_index(n)] = value;
  coeffs_[grid_.slot_of_index(-n)] = std::conj(value);
}

double SpectralField::hermitian_defect() const {
  const int half = grid_.n_nodes() / 2;
  double defect = std::max(std::abs(coeffs_[0].imag()), std::abs(coeff(-half).imag()));
  for (int n = 1; n < half; ++n) {
    defect = std::max(defect, std::abs(coeff(-n) - std::conj(coeff(n))));
  }
  return defect;
}

double SpectralField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

void SpectralField::require_same_grid(const SpectralField& other) const {
  if (!(grid_ == other.grid_)) throw ArgumentError("SpectralField: grid mismatch");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::add_scaled(double s, const SpectralField& other) {
  require_same_grid(other);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += s * other.coeffs_[k];
  return *this;
}

SpectralField to_spectral(std::span<const double> samples, const GridSpec& grid) {
  const int n = grid.n_nodes();
  if (static_cast<int>(samples.size()) != n) {
    throw ArgumentError("to_spectral: expected " + std::to_string(n) + " samples, got " +
                        std::to_string(samples.size()));
  }
  std::vector<Complex> half(n / 2 + 1);
  detail::forward_r2c(samples, half);
  std::vector<Complex> full(n);
  const double scale = 1.0 / n;
  for (int k = 0; k <= n / 2; ++k) full[k] = half[k] * scale;
  for (int k = 1; k < n / 2; ++k) full[n - k] = std::conj(full[k]);
  // Slot n/2 holds index -N/2; for real data it is real.
  full[n / 2] = Complex{full[n / 2].real(), 0.0};
  full[0] = Complex{full[0].real(), 0.0};
  return SpectralField(grid, std::move(full));
}

std::vector<double> to_physical(const SpectralField& f) {
  const int n = f.size();
  const auto c = f.data();
  // Imaginary part of the inverse transform is bounded by the summed
  // anti-Hermitian part of the coefficients.
  double residue = std::abs(c[0].imag()) + std::abs(c[n / 2].imag());
  double scale = std::abs(c[0]);
  for (int k = 1; k < n / 2; ++k) {
    residue += std::abs(c[n - k] - std::conj(c[k]));
    scale += 2.0 * std::abs(c[k]);
  }
  if (residue > 1e-10 * std::max(1.0, scale)) {
    throw StateError("to_physical: coefficients are not Hermitian (imaginary residue " +
                     std::to_string(residue) + ")");
  }
  std::vector<Complex> half(c.begin(), c.begin() + n / 2 + 1);
  std::vector<double> out(n);
  detail::inverse_c2r(half, out);
  return out;
}

SpectralField derivative(const SpectralField& f, int order) {
  if (order < 1) throw ArgumentError("derivative: order must be >= 1");
  SpectralField out = f;
  const GridSpec& g = f.grid();
  auto c = out.data();
  for (int k = 0; k < g.n_nodes(); ++k) {
    const int n = g.index_of_slot(k);
    if (n == -g.n_nodes() / 2) {
      c[k] = Complex{};
      continue;
    }
    const double kn = g.wavenumber(n);
    for (int r = 0; r < order; ++r) c[k] = Complex{-kn * c[k].imag(), kn * c[k].real()};
  }
  return out;
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  const GridSpec& g = f.grid();
  const int cutoff = g.dealias_cutoff();
  auto c = out.data();
  for (int k = 0; k < g.n_nodes(); ++k) {
    if (std::abs(g.index_of_slot(k)) > cutoff) c[k] = Complex{};
  }
  return out;
}

SpectralField multiply(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw ArgumentError("multiply: grid mismatch");
  auto a = to_physical(f);
  const auto b = to_physical(g);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] *= b[j];
  return dealias(to_spectral(a, f.grid()));
}

double hdot_norm(const SpectralField& f, int s) {
  const GridSpec& g = f.grid();
  const auto c = f.data();
  double sum = 0.0;
  for (int k = 0; k < g.n_nodes(); ++k) {
    const double kn = std::abs(g.wavenumber(g.index_of_slot(k)));
    sum += std::pow(kn, 2 * s) * std::norm(c[k]);
  }
  return std::sqrt(g.period() * sum);
}

double l2_norm(const SpectralField& f) { return hdot_norm(f, 0); }

double linf_norm(const SpectralField& f) {
  double m = 0.0;
  for (double v : to_physical(f)) m = std::max(m, std::abs(v));
  return m;
}

FieldNorms norms(const SpectralField& f) {
  FieldNorms out;
  out.l2 = l2_norm(f);
  out.linf = linf_norm(f);
  out.hdot1 = hdot_norm(f, 1);
  out.hdot2 = hdot_norm(f, 2);
  out.h2 = std::sqrt(out.l2 * out.l2 + out.hdot2 * out.hdot2);
  return out;
}

}  // namespace biofilm
