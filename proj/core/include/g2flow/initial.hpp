#pragma once

#include <cstdint>

#include "g2flow/field.hpp"

namespace g2flow {

/// Mean-zero, divergence-free, Hermitian-symmetric random field.
/// |u_k| ~ |k|^spectrum_slope with per-component uniform random phases,
/// Leray-projected and rescaled so ||u||_L2 == amplitude. Deterministic for a
/// fixed seed. k_max counts the Euclidean shell radius and must sit inside
/// the dealias mask (3*k_max < n).
Field random_divfree_field(GridPtr grid, std::uint64_t seed, double spectrum_slope,
                           int k_max, double amplitude);

/// u = amplitude (sin x cos y, -cos x sin y); divergence-free by construction.
/// On a 3D grid the field is embedded z-independent with zero third component.
Field taylor_green(GridPtr grid, double amplitude);

}  // namespace g2flow
