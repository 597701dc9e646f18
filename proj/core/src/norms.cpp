#include "g2flow/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "g2flow/initial.hpp"
#include "g2flow/operators.hpp"

namespace g2flow {

namespace {

double weighted_l2(const Field& f, double (*weight)(double k2, double p), double p) {
  const auto& g = f.grid();
  KahanSum sum;
  const std::size_t nm = g.mode_count();
  for (int c = 0; c < f.ncomp(); ++c) {
    const Complex* a = f.data(c);
    for (std::size_t idx = 0; idx < nm; ++idx) sum.add(weight(g.k_squared[idx], p) * std::norm(a[idx]));
  }
  return std::sqrt(g.volume * sum.value());
}

double lp_quadrature(const PhysicalField& phys, double p) {
  const auto& g = *phys.grid;
  const std::size_t nm = g.mode_count();
  const double cell = g.volume / static_cast<double>(nm);  // (2pi/n)^dim
  KahanSum sum;
  for (std::size_t x = 0; x < nm; ++x) {
    double mag2 = 0.0;
    for (int c = 0; c < phys.ncomp; ++c) {
      const double v = phys.data(c)[x];
      mag2 += v * v;
    }
    sum.add(std::pow(mag2, 0.5 * p));
  }
  return std::pow(cell * sum.value(), 1.0 / p);
}

}  // namespace

double sobolev_norm(const Field& f, int m) {
  if (m < 0 || m > 3) throw std::invalid_argument("sobolev_norm: m must be in 0..3");
  return weighted_l2(
      f, [](double k2, double mm) { return std::pow(1.0 + k2, mm); }, static_cast<double>(m));
}

double l2_norm(const Field& f) {
  return weighted_l2(f, [](double, double) { return 1.0; }, 0.0);
}

double l2_distance(const Field& f, const Field& g) {
  if (!f.same_shape(g)) throw std::invalid_argument("l2_distance: shape mismatch");
  KahanSum sum;
  auto fs = f.flat();
  auto gs = g.flat();
  for (std::size_t i = 0; i < fs.size(); ++i) sum.add(std::norm(fs[i] - gs[i]));
  return std::sqrt(f.grid().volume * sum.value());
}

double grad_l2(const Field& f) {
  return weighted_l2(f, [](double k2, double) { return k2; }, 0.0);
}

double projected_laplacian_l2(const Field& f) {
  // P Lap = Lap P on the torus; callers pass divergence-free fields, for
  // which ||P Lap u|| = ||Lap u|| = (|k|^4 weight).
  return weighted_l2(f, [](double k2, double) { return k2 * k2; }, 0.0);
}

double omega_alpha_l2(const Field& u, double alpha) {
  const Field omega = curl(u);
  const auto& g = omega.grid();
  KahanSum sum;
  const std::size_t nm = g.mode_count();
  for (int c = 0; c < omega.ncomp(); ++c) {
    const Complex* a = omega.data(c);
    for (std::size_t idx = 0; idx < nm; ++idx) {
      const double w = 1.0 + alpha * g.k_squared[idx];
      sum.add(w * w * std::norm(a[idx]));
    }
  }
  return std::sqrt(g.volume * sum.value());
}

double lebesgue_norm(const Field& f, LebesgueExponent p, TransformPlan& plan) {
  switch (p) {
    case LebesgueExponent::p2:
      return lp_quadrature(to_physical(f, plan), 2.0);
    case LebesgueExponent::p3:
      return lp_quadrature(to_physical(f, plan), 3.0);
    case LebesgueExponent::p6:
      return lp_quadrature(to_physical(f, plan), 6.0);
    case LebesgueExponent::inf_grad: {
      const PhysicalField jac = to_physical(gradient(f), plan);
      const std::size_t nm = f.grid().mode_count();
      double mx = 0.0;
      for (std::size_t x = 0; x < nm; ++x) {
        double frob2 = 0.0;
        for (int c = 0; c < jac.ncomp; ++c) {
          const double v = jac.data(c)[x];
          frob2 += v * v;
        }
        mx = std::max(mx, frob2);
      }
      return std::sqrt(mx);
    }
  }
  throw std::invalid_argument("lebesgue_norm: unsupported exponent");
}

NormReport compute_norms(const Field& f, TransformPlan& plan) {
  NormReport r;
  r.l2 = sobolev_norm(f, 0);
  r.h1 = sobolev_norm(f, 1);
  r.h2 = sobolev_norm(f, 2);
  r.h3 = sobolev_norm(f, 3);
  r.l3 = lebesgue_norm(f, LebesgueExponent::p3, plan);
  r.l6 = lebesgue_norm(f, LebesgueExponent::p6, plan);
  r.lip = lebesgue_norm(f, LebesgueExponent::inf_grad, plan);
  return r;
}

GagliardoNirenbergEstimates estimate_gn_constants(int dim, int n, int n_fields,
                                                  std::uint64_t seed) {
  GridPtr grid = make_grid(dim, n);
  TransformPlan plan(grid);
  GagliardoNirenbergEstimates est;
  const int k_max = std::min(grid->max_retained_wavenumber(), 8);
  for (int i = 0; i < n_fields; ++i) {
    // vary slope across the suite to probe rough and smooth spectra alike
    const double slope = -1.0 - 0.25 * (i % 7);
    const Field u = random_divfree_field(grid, seed + static_cast<std::uint64_t>(i), slope,
                                         1 + (i % k_max), 1.0);
    const double l2 = sobolev_norm(u, 0);
    const double h1 = sobolev_norm(u, 1);
    const double h2 = sobolev_norm(u, 2);
    const double h3 = sobolev_norm(u, 3);
    const double l3 = lebesgue_norm(u, LebesgueExponent::p3, plan);
    const double lip = lebesgue_norm(u, LebesgueExponent::inf_grad, plan);
    const Field grad_u = gradient(u);
    const double g_l6 = lebesgue_norm(grad_u, LebesgueExponent::p6, plan);
    const double g_h1 = sobolev_norm(grad_u, 1);

    // ||u||_Linf by grid max of the vector magnitude
    const PhysicalField phys = to_physical(u, plan);
    double linf2 = 0.0;
    for (std::size_t x = 0; x < grid->mode_count(); ++x) {
      double m2 = 0.0;
      for (int c = 0; c < phys.ncomp; ++c) m2 += phys.data(c)[x] * phys.data(c)[x];
      linf2 = std::max(linf2, m2);
    }

    est.l3_interp = std::max(est.l3_interp, l3 / std::sqrt(l2 * h1));
    est.grad_l6 = std::max(est.grad_l6, g_l6 / g_h1);
    est.lip_interp = std::max(est.lip_interp, lip / (std::pow(h1, 0.25) * std::pow(h3, 0.75)));
    est.linf_interp = std::max(est.linf_interp, std::sqrt(linf2) / std::sqrt(h1 * h2));
  }
  return est;
}

}  // namespace g2flow
