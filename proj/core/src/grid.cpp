#include "g2flow/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

namespace g2flow {

std::size_t SpectralGrid::conjugate_index(std::size_t flat) const {
  const int nn = n;
  auto neg = [nn](int i) { return i == 0 ? 0 : nn - i; };
  if (dim == 2) {
    const int i1 = static_cast<int>(flat % nn);
    const int i0 = static_cast<int>(flat / nn);
    return flat_index(neg(i0), neg(i1));
  }
  const int i2 = static_cast<int>(flat % nn);
  const int i1 = static_cast<int>((flat / nn) % nn);
  const int i0 = static_cast<int>(flat / (static_cast<std::size_t>(nn) * nn));
  return flat_index(neg(i0), neg(i1), neg(i2));
}

void SpectralGrid::wavevector(std::size_t flat, int out[3]) const {
  const int nn = n;
  if (dim == 2) {
    out[0] = axis_wavenumbers[flat / nn];
    out[1] = axis_wavenumbers[flat % nn];
    out[2] = 0;
    return;
  }
  out[2] = axis_wavenumbers[flat % nn];
  out[1] = axis_wavenumbers[(flat / nn) % nn];
  out[0] = axis_wavenumbers[flat / (static_cast<std::size_t>(nn) * nn)];
}

GridPtr make_grid(int dim, int n) {
  if (dim != 2 && dim != 3) {
    throw std::invalid_argument("make_grid: dim must be 2 or 3, got " + std::to_string(dim));
  }
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument("make_grid: n must be even and >= 8, got " + std::to_string(n));
  }

  auto grid = std::make_shared<SpectralGrid>();
  grid->dim = dim;
  grid->n = n;
  grid->volume = std::pow(2.0 * std::numbers::pi, dim);

  grid->axis_wavenumbers.resize(n);
  for (int i = 0; i < n; ++i) grid->axis_wavenumbers[i] = (i <= n / 2) ? i : i - n;

  const std::size_t modes = (dim == 2) ? static_cast<std::size_t>(n) * n
                                       : static_cast<std::size_t>(n) * n * n;
  grid->dealias_mask.assign(modes, 0);
  grid->k_squared.assign(modes, 0.0);

  // 2/3 rule with strict cut 3|k_i| < n: quadratic products of retained
  // modes are then alias-free on the n-point grid.
  for_each_mode(*grid, [&](std::size_t idx, int k0, int k1, int k2) {
    const bool keep = 3 * std::abs(k0) < n && 3 * std::abs(k1) < n && 3 * std::abs(k2) < n;
    grid->dealias_mask[idx] = keep ? 1 : 0;
    grid->k_squared[idx] =
        static_cast<double>(k0) * k0 + static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
  });

  return grid;
}

}  // namespace g2flow
