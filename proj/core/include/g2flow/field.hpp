#pragma once

#include <complex>
#include <span>
#include <vector>

#include "g2flow/grid.hpp"

namespace g2flow {

using Complex = std::complex<double>;

/// A set of spectral coefficient arrays over one grid.
///
/// Convention: u(x) = sum_k u_hat(k) e^{i k.x}. Real-valued fields carry
/// Hermitian-symmetric coefficients, u_hat(-k) = conj(u_hat(k)). Velocity
/// fields have ncomp == dim; scalar fields (2D vorticity) have ncomp == 1.
class Field {
 public:
  Field() = default;
  Field(GridPtr grid, int ncomp);

  static Field vector(GridPtr grid);
  static Field scalar(GridPtr grid);

  bool empty() const { return data_.empty(); }
  int ncomp() const { return ncomp_; }
  const SpectralGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

  Complex* data(int c) { return data_.data() + static_cast<std::size_t>(c) * grid_->mode_count(); }
  const Complex* data(int c) const {
    return data_.data() + static_cast<std::size_t>(c) * grid_->mode_count();
  }
  std::span<Complex> component(int c) { return {data(c), grid_->mode_count()}; }
  std::span<const Complex> component(int c) const { return {data(c), grid_->mode_count()}; }

  std::span<Complex> flat() { return {data_.data(), data_.size()}; }
  std::span<const Complex> flat() const { return {data_.data(), data_.size()}; }

  bool same_shape(const Field& other) const {
    return grid_.get() == other.grid_.get() && ncomp_ == other.ncomp_;
  }

  void set_zero();

 private:
  GridPtr grid_;
  int ncomp_ = 0;
  std::vector<Complex> data_;
};

/// u_k <- (u_k + conj(u_{-k}))/2 on every component; makes the physical field
/// exactly real. Applied after every nonlinear product.
void symmetrize_hermitian(Field& f);

/// max_k |u_k - conj(u_{-k})| normalized by max_k |u_k| (0 for the zero field).
double hermitian_defect(const Field& f);

/// sup_k |k.u_k| normalized by sup_k |k||u_k| (0 for the zero field).
double divergence_defect(const Field& f);

/// Zeroes the k = 0 coefficient of every component.
void zero_mean_mode(Field& f);

double max_abs_coefficient(const Field& f);
bool all_finite(const Field& f);

/// y += a*x (shapes must match).
void axpy(double a, const Field& x, Field& y);
void scale(Field& f, double a);

/// Compensated (Kahan) accumulation; the spectral sums behind the energy
/// identities need absolute errors near machine epsilon, not n*epsilon.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace g2flow
