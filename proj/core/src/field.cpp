#include "g2flow/field.hpp"

#include <cmath>
#include <stdexcept>

namespace g2flow {

Field::Field(GridPtr grid, int ncomp) : grid_(std::move(grid)), ncomp_(ncomp) {
  if (!grid_) throw std::invalid_argument("Field: null grid");
  if (ncomp_ < 1) throw std::invalid_argument("Field: ncomp must be >= 1");
  data_.assign(static_cast<std::size_t>(ncomp_) * grid_->mode_count(), Complex{0.0, 0.0});
}

Field Field::vector(GridPtr grid) {
  const int d = grid->dim;
  return Field(std::move(grid), d);
}

Field Field::scalar(GridPtr grid) { return Field(std::move(grid), 1); }

void Field::set_zero() { std::fill(data_.begin(), data_.end(), Complex{0.0, 0.0}); }

void symmetrize_hermitian(Field& f) {
  const auto& g = f.grid();
  const std::size_t nm = g.mode_count();
  for (int c = 0; c < f.ncomp(); ++c) {
    Complex* a = f.data(c);
    for (std::size_t idx = 0; idx < nm; ++idx) {
      const std::size_t j = g.conjugate_index(idx);
      if (j < idx) continue;
      const Complex avg = 0.5 * (a[idx] + std::conj(a[j]));
      a[idx] = avg;
      a[j] = std::conj(avg);
    }
  }
}

double hermitian_defect(const Field& f) {
  const auto& g = f.grid();
  const std::size_t nm = g.mode_count();
  double defect = 0.0;
  double scale = 0.0;
  for (int c = 0; c < f.ncomp(); ++c) {
    const Complex* a = f.data(c);
    for (std::size_t idx = 0; idx < nm; ++idx) {
      scale = std::max(scale, std::abs(a[idx]));
      defect = std::max(defect, std::abs(a[idx] - std::conj(a[g.conjugate_index(idx)])));
    }
  }
  return scale > 0.0 ? defect / scale : 0.0;
}

double divergence_defect(const Field& f) {
  const auto& g = f.grid();
  if (f.ncomp() != g.dim) throw std::invalid_argument("divergence_defect: not a vector field");
  double defect = 0.0;
  double scale = 0.0;
  for_each_mode(g, [&](std::size_t idx, int k0, int k1, int k2) {
    Complex dot{0.0, 0.0};
    double mag = 0.0;
    const double kk[3] = {static_cast<double>(k0), static_cast<double>(k1),
                          static_cast<double>(k2)};
    for (int c = 0; c < g.dim; ++c) {
      dot += kk[c] * f.data(c)[idx];
      mag += std::norm(f.data(c)[idx]);
    }
    const double knorm = std::sqrt(g.k_squared[idx]);
    defect = std::max(defect, std::abs(dot));
    scale = std::max(scale, knorm * std::sqrt(mag));
  });
  return scale > 0.0 ? defect / scale : 0.0;
}

void zero_mean_mode(Field& f) {
  for (int c = 0; c < f.ncomp(); ++c) f.data(c)[0] = Complex{0.0, 0.0};
}

double max_abs_coefficient(const Field& f) {
  double m = 0.0;
  for (const Complex& z : f.flat()) m = std::max(m, std::abs(z));
  return m;
}

bool all_finite(const Field& f) {
  for (const Complex& z : f.flat()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void axpy(double a, const Field& x, Field& y) {
  if (!x.same_shape(y)) throw std::invalid_argument("axpy: shape mismatch");
  auto xs = x.flat();
  auto ys = y.flat();
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] += a * xs[i];
}

void scale(Field& f, double a) {
  for (Complex& z : f.flat()) z *= a;
}

}  // namespace g2flow
