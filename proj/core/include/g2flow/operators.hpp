#pragma once

#include "g2flow/field.hpp"

namespace g2flow {

// Exact Fourier-multiplier operators. All are pure functions of immutable
// inputs and need no transform plan.

enum class Derivative { grad, divergence, curl, laplacian };

/// Jacobian: component c*dim + a holds d(f_c)/dx_a.
Field gradient(const Field& f);

/// ik . u_hat; input must be a vector field (ncomp == dim).
Field divergence(const Field& f);

/// 3D: vector -> vector (ik x u). 2D: vector -> scalar (ik1*u2 - ik2*u1).
Field curl(const Field& f);

/// -|k|^2 componentwise.
Field laplacian(const Field& f);

/// Dispatch form of the above.
Field differentiate(const Field& f, Derivative kind);

/// Leray projection u_k - k (k.u_k)/|k|^2; the k = 0 mode passes through.
Field leray_project(const Field& f);

/// Inverts (1 - alpha*Laplacian): multiplier 1/(1 + alpha |k|^2). alpha >= 0.
Field helmholtz_solve(const Field& f, double alpha);

/// Applies (1 - alpha*Laplacian): multiplier (1 + alpha |k|^2).
Field helmholtz_apply(const Field& f, double alpha);

/// Zeroes every mode outside the 2/3-rule mask.
Field dealias(const Field& f);
void dealias_in_place(Field& f);

/// L2 inner product (2pi)^dim sum_k re(f_k conj(g_k)) over components.
double l2_inner_product(const Field& f, const Field& g);

}  // namespace g2flow
