#include "g2flow/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace g2flow {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Field gradient(const Field& f) {
  const auto& g = f.grid();
  Field out(f.grid_ptr(), f.ncomp() * g.dim);
  for (int c = 0; c < f.ncomp(); ++c) {
    const Complex* src = f.data(c);
    Complex* d0 = out.data(c * g.dim + 0);
    Complex* d1 = out.data(c * g.dim + 1);
    Complex* d2 = g.dim == 3 ? out.data(c * g.dim + 2) : nullptr;
    for_each_mode(g, [&](std::size_t idx, int k0, int k1, int k2) {
      const Complex v = kI * src[idx];
      d0[idx] = static_cast<double>(k0) * v;
      d1[idx] = static_cast<double>(k1) * v;
      if (d2) d2[idx] = static_cast<double>(k2) * v;
    });
  }
  return out;
}

Field divergence(const Field& f) {
  const auto& g = f.grid();
  if (f.ncomp() != g.dim) throw std::invalid_argument("divergence: needs a vector field");
  Field out = Field::scalar(f.grid_ptr());
  Complex* d = out.data(0);
  for_each_mode(g, [&](std::size_t idx, int k0, int k1, int k2) {
    Complex dot = static_cast<double>(k0) * f.data(0)[idx] +
                  static_cast<double>(k1) * f.data(1)[idx];
    if (g.dim == 3) dot += static_cast<double>(k2) * f.data(2)[idx];
    d[idx] = kI * dot;
  });
  return out;
}

Field curl(const Field& f) {
  const auto& g = f.grid();
  if (f.ncomp() != g.dim) {
    throw std::invalid_argument("curl: needs a vector field matching the grid dimension");
  }
  if (g.dim == 2) {
    // scalar curl: i k1 u2 - i k2 u1
    Field out = Field::scalar(f.grid_ptr());
    Complex* d = out.data(0);
    for_each_mode(g, [&](std::size_t idx, int k0, int k1, int) {
      d[idx] = kI * (static_cast<double>(k0) * f.data(1)[idx] -
                     static_cast<double>(k1) * f.data(0)[idx]);
    });
    return out;
  }
  Field out = Field::vector(f.grid_ptr());
  for_each_mode(g, [&](std::size_t idx, int k0, int k1, int k2) {
    const Complex u0 = f.data(0)[idx], u1 = f.data(1)[idx], u2 = f.data(2)[idx];
    out.data(0)[idx] = kI * (static_cast<double>(k1) * u2 - static_cast<double>(k2) * u1);
    out.data(1)[idx] = kI * (static_cast<double>(k2) * u0 - static_cast<double>(k0) * u2);
    out.data(2)[idx] = kI * (static_cast<double>(k0) * u1 - static_cast<double>(k1) * u0);
  });
  return out;
}

Field laplacian(const Field& f) {
  const auto& g = f.grid();
  Field out(f.grid_ptr(), f.ncomp());
  const std::size_t nm = g.mode_count();
  for (int c = 0; c < f.ncomp(); ++c) {
    const Complex* src = f.data(c);
    Complex* dst = out.data(c);
    for (std::size_t idx = 0; idx < nm; ++idx) dst[idx] = -g.k_squared[idx] * src[idx];
  }
  return out;
}

Field differentiate(const Field& f, Derivative kind) {
  switch (kind) {
    case Derivative::grad:
      return gradient(f);
    case Derivative::divergence:
      return divergence(f);
    case Derivative::curl:
      return curl(f);
    case Derivative::laplacian:
      return laplacian(f);
  }
  throw std::invalid_argument("differentiate: unknown kind");
}

Field leray_project(const Field& f) {
  const auto& g = f.grid();
  if (f.ncomp() != g.dim) throw std::invalid_argument("leray_project: needs a vector field");
  Field out = f;
  for_each_mode(g, [&](std::size_t idx, int k0, int k1, int k2) {
    const double k2sum = g.k_squared[idx];
    if (k2sum == 0.0) return;  // mean mode passes through
    const double kk[3] = {static_cast<double>(k0), static_cast<double>(k1),
                          static_cast<double>(k2)};
    Complex dot{0.0, 0.0};
    for (int c = 0; c < g.dim; ++c) dot += kk[c] * f.data(c)[idx];
    dot /= k2sum;
    for (int c = 0; c < g.dim; ++c) out.data(c)[idx] -= kk[c] * dot;
  });
  return out;
}

Field helmholtz_solve(const Field& f, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("helmholtz_solve: alpha must be >= 0");
  const auto& g = f.grid();
  Field out(f.grid_ptr(), f.ncomp());
  const std::size_t nm = g.mode_count();
  for (int c = 0; c < f.ncomp(); ++c) {
    const Complex* src = f.data(c);
    Complex* dst = out.data(c);
    for (std::size_t idx = 0; idx < nm; ++idx) dst[idx] = src[idx] / (1.0 + alpha * g.k_squared[idx]);
  }
  return out;
}

Field helmholtz_apply(const Field& f, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("helmholtz_apply: alpha must be >= 0");
  const auto& g = f.grid();
  Field out(f.grid_ptr(), f.ncomp());
  const std::size_t nm = g.mode_count();
  for (int c = 0; c < f.ncomp(); ++c) {
    const Complex* src = f.data(c);
    Complex* dst = out.data(c);
    for (std::size_t idx = 0; idx < nm; ++idx) dst[idx] = (1.0 + alpha * g.k_squared[idx]) * src[idx];
  }
  return out;
}

Field dealias(const Field& f) {
  Field out = f;
  dealias_in_place(out);
  return out;
}

void dealias_in_place(Field& f) {
  const auto& g = f.grid();
  const std::size_t nm = g.mode_count();
  for (int c = 0; c < f.ncomp(); ++c) {
    Complex* a = f.data(c);
    for (std::size_t idx = 0; idx < nm; ++idx) {
      if (!g.dealias_mask[idx]) a[idx] = Complex{0.0, 0.0};
    }
  }
}

double l2_inner_product(const Field& f, const Field& g) {
  if (!f.same_shape(g)) throw std::invalid_argument("l2_inner_product: shape mismatch");
  KahanSum sum;
  auto fs = f.flat();
  auto gs = g.flat();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    sum.add(fs[i].real() * gs[i].real() + fs[i].imag() * gs[i].imag());
  }
  return f.grid().volume * sum.value();
}

}  // namespace g2flow
