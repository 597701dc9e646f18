#include "g2flow/initial.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "g2flow/norms.hpp"
#include "g2flow/operators.hpp"

namespace g2flow {

namespace {
// Engine output mapped to [0,1) directly; avoids distribution objects whose
// streams are implementation-defined.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
}  // namespace

Field random_divfree_field(GridPtr grid, std::uint64_t seed, double spectrum_slope,
                           int k_max, double amplitude) {
  const SpectralGrid& g = *grid;
  if (k_max < 1 || 3 * k_max >= g.n) {
    throw std::invalid_argument("random_divfree_field: k_max outside the dealias mask");
  }

  Field u = Field::vector(grid);
  std::mt19937_64 rng(seed);

  // Populate modes in fixed lattice order for determinism; only the
  // representative of each (k, -k) pair is drawn, the partner mirrors it.
  for_each_mode(g, [&](std::size_t idx, int k0, int k1, int k2) {
    const double k2sum = g.k_squared[idx];
    if (k2sum == 0.0) return;
    if (k2sum > static_cast<double>(k_max) * k_max) return;
    const std::size_t conj_idx = g.conjugate_index(idx);
    if (conj_idx < idx) return;
    const double mag = std::pow(std::sqrt(k2sum), spectrum_slope);
    for (int c = 0; c < g.dim; ++c) {
      const double phase = 2.0 * std::numbers::pi * next_uniform(rng);
      const Complex z = mag * Complex{std::cos(phase), std::sin(phase)};
      u.data(c)[idx] = z;
      u.data(c)[conj_idx] = std::conj(z);
    }
    (void)k0; (void)k1; (void)k2;
  });

  u = leray_project(u);
  symmetrize_hermitian(u);
  zero_mean_mode(u);

  const double norm = l2_norm(u);
  if (amplitude == 0.0 || norm == 0.0) {
    u.set_zero();
    return u;
  }
  scale(u, amplitude / norm);
  return u;
}

Field taylor_green(GridPtr grid, double amplitude) {
  const SpectralGrid& g = *grid;
  Field u = Field::vector(grid);

  // sin x cos y = ( e^{i(x+y)} + e^{i(x-y)} - e^{-i(x-y)} - e^{-i(x+y)} ) / (4i)
  // cos x sin y = ( e^{i(x+y)} - e^{i(x-y)} + e^{-i(x-y)} - e^{-i(x+y)} ) / (4i)
  const Complex quarter_over_i = amplitude * Complex{0.0, -0.25};  // 1/(4i) scaled

  auto set = [&](int kx, int ky, int comp, Complex value) {
    const int i0 = kx >= 0 ? kx : kx + g.n;
    const int i1 = ky >= 0 ? ky : ky + g.n;
    u.data(comp)[g.flat_index(i0, i1, 0)] = value;
  };

  // u1 = amplitude sin x cos y
  set(1, 1, 0, quarter_over_i);
  set(1, -1, 0, quarter_over_i);
  set(-1, 1, 0, -quarter_over_i);
  set(-1, -1, 0, -quarter_over_i);
  // u2 = -amplitude cos x sin y
  set(1, 1, 1, -quarter_over_i);
  set(1, -1, 1, quarter_over_i);
  set(-1, 1, 1, -quarter_over_i);
  set(-1, -1, 1, quarter_over_i);

  return u;
}

}  // namespace g2flow
