#pragma once

#include <cstdint>

#include "g2flow/transform.hpp"

namespace g2flow {

/// All norms use the integral (unnormalized) convention:
/// ||u||_L2^2 = (2pi)^dim sum_k |u_k|^2.
struct NormReport {
  double l2 = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
  double l3 = 0.0;
  double l6 = 0.0;
  double lip = 0.0;  // max over collocation points of |grad u|_Frobenius
};

/// H^m norm with Bessel weight (1 + |k|^2)^m, m in 0..3, summed over
/// components. The Bessel weight makes h1 <= sqrt(l2*h2) and
/// h2 <= sqrt(h1*h3) exact Cauchy-Schwarz identities.
double sobolev_norm(const Field& f, int m);

enum class LebesgueExponent { p2, p3, p6, inf_grad };

/// L^p by collocation quadrature ((2pi/n)^dim sum_x |u(x)|^p)^{1/p} on the
/// field's own grid; inf_grad is the grid max of the Frobenius norm of grad u.
double lebesgue_norm(const Field& f, LebesgueExponent p, TransformPlan& plan);

NormReport compute_norms(const Field& f, TransformPlan& plan);

// Homogeneous seminorms used by the energy-estimate chain.
double l2_norm(const Field& f);            // == sobolev_norm(f, 0)
double l2_distance(const Field& f, const Field& g);  // ||f - g||_L2
double grad_l2(const Field& f);            // ||grad u||_L2 = (|k|^2 weight)
double projected_laplacian_l2(const Field& f);  // ||P Lap u||; on the torus ||Lap u|| for div-free u
double omega_alpha_l2(const Field& u, double alpha);  // ||(1 - alpha Lap) curl u||

/// Empirical Gagliardo-Nirenberg ratios over a seeded random-field suite.
/// Suite maxima; used to calibrate the monitor constants' defaults.
struct GagliardoNirenbergEstimates {
  double l3_interp = 0.0;   // ||u||_L3 / (||u||_L2^{1/2} ||u||_H1^{1/2})
  double grad_l6 = 0.0;     // ||grad u||_L6 / ||grad u||_H1
  double lip_interp = 0.0;  // Lip(u) / (||u||_H1^{1/4} ||u||_H3^{3/4})
  double linf_interp = 0.0; // ||u||_Linf / (||u||_H1^{1/2} ||u||_H2^{1/2})
};

GagliardoNirenbergEstimates estimate_gn_constants(int dim, int n, int n_fields,
                                                  std::uint64_t seed);

}  // namespace g2flow
