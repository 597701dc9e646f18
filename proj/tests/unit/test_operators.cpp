#include <doctest.h>

#include <cmath>

#include "g2flow/norms.hpp"
#include "g2flow/operators.hpp"
#include "oracles.hpp"

using namespace g2flow;

namespace {

Field sin_x_field_3d(const GridPtr& g) {
  // u = (0, sin x, 0)
  Field u = Field::vector(g);
  u.data(1)[g->flat_index(1, 0, 0)] = Complex{0.0, -0.5};
  u.data(1)[g->flat_index(g->n - 1, 0, 0)] = Complex{0.0, 0.5};
  return u;
}

}  // namespace

TEST_CASE("laplacian multiplies mode (1,2,0) by -5") {
  GridPtr g = make_grid(3, 16);
  Field f = Field::scalar(g);
  const Complex c{0.3, -0.7};
  f.data(0)[g->flat_index(1, 2, 0)] = c;
  Field lap = differentiate(f, Derivative::laplacian);
  CHECK(std::abs(lap.data(0)[g->flat_index(1, 2, 0)] - (-5.0) * c) < 1e-15);
}

TEST_CASE("div of (0, sin x, 0) vanishes identically") {
  GridPtr g = make_grid(3, 16);
  Field u = sin_x_field_3d(g);
  Field d = differentiate(u, Derivative::divergence);
  CHECK(max_abs_coefficient(d) < 1e-15);
}

TEST_CASE("curl of (0, sin x, 0) is (0, 0, cos x)") {
  GridPtr g = make_grid(3, 16);
  Field u = sin_x_field_3d(g);
  Field w = differentiate(u, Derivative::curl);
  CHECK(std::abs(w.data(2)[g->flat_index(1, 0, 0)] - Complex{0.5, 0.0}) < 1e-15);
  CHECK(std::abs(w.data(2)[g->flat_index(g->n - 1, 0, 0)] - Complex{0.5, 0.0}) < 1e-15);
  CHECK(max_abs_coefficient(differentiate(w, Derivative::divergence)) < 1e-15);
  // only the cos x modes of the z-component are populated
  Field w_expected = Field::vector(g);
  w_expected.data(2)[g->flat_index(1, 0, 0)] = Complex{0.5, 0.0};
  w_expected.data(2)[g->flat_index(g->n - 1, 0, 0)] = Complex{0.5, 0.0};
  CHECK(l2_distance(w, w_expected) < 1e-14);
}

TEST_CASE("curl rejects a 2D scalar input") {
  GridPtr g = make_grid(2, 8);
  Field s = Field::scalar(g);
  CHECK_THROWS_AS(curl(s), std::invalid_argument);
}

TEST_CASE("leray annihilates gradients and fixes divergence-free fields") {
  GridPtr g = make_grid(3, 16);
  // (cos x, 0, 0): u_hat parallel to k = (1,0,0)
  Field grad_field = Field::vector(g);
  grad_field.data(0)[g->flat_index(1, 0, 0)] = Complex{0.5, 0.0};
  grad_field.data(0)[g->flat_index(g->n - 1, 0, 0)] = Complex{0.5, 0.0};
  CHECK(max_abs_coefficient(leray_project(grad_field)) < 1e-15);

  Field u = sin_x_field_3d(g);
  CHECK(l2_distance(leray_project(u), u) < 1e-15);
}

TEST_CASE("leray projection properties on randomized fields") {
  for (int dim : {2, 3}) {
    GridPtr g = make_grid(dim, 16);
    for (int trial = 0; trial < 25; ++trial) {
      Field f = oracle::random_hermitian_field(g, dim, 4000 + trial, 5);
      Field pf = leray_project(f);
      CHECK(divergence_defect(pf) <= 1e-12);
      // idempotent
      CHECK(l2_distance(leray_project(pf), pf) <= 1e-13 * std::max(1.0, l2_norm(pf)));
      // self-adjoint: <Pf, h> == <f, Ph>
      Field h = oracle::random_hermitian_field(g, dim, 8000 + trial, 5);
      const double lhs = l2_inner_product(pf, h);
      const double rhs = l2_inner_product(f, leray_project(h));
      CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("helmholtz_solve: single mode, alpha = 0.5 gives 2/3") {
  GridPtr g = make_grid(3, 16);
  Field f = Field::scalar(g);
  f.data(0)[g->flat_index(1, 0, 0)] = Complex{1.0, 0.0};
  Field sol = helmholtz_solve(f, 0.5);
  CHECK(sol.data(0)[g->flat_index(1, 0, 0)].real() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("helmholtz_solve: alpha = 0 is the identity, negative alpha rejected") {
  GridPtr g = make_grid(2, 16);
  Field f = oracle::random_hermitian_field(g, 55, 1, 5);
  CHECK(l2_distance(helmholtz_solve(f, 0.0), f) == 0.0);
  CHECK_THROWS_AS(helmholtz_solve(f, -0.1), std::invalid_argument);
}

TEST_CASE("helmholtz apply/solve round trip to 1e-13") {
  for (int trial = 0; trial < 10; ++trial) {
    GridPtr g = make_grid(2, 32);
    Field f = oracle::random_hermitian_field(g, 31 + trial, 2, 10);
    const double alpha = 0.05 + 0.1 * trial;
    Field rt = helmholtz_solve(helmholtz_apply(f, alpha), alpha);
    CHECK(l2_distance(rt, f) <= 1e-13 * std::max(1.0, l2_norm(f)));
  }
}

TEST_CASE("dealias zeroes masked modes and keeps retained ones") {
  GridPtr g8 = make_grid(2, 8);
  Field f = Field::scalar(g8);
  f.data(0)[g8->flat_index(3, 0)] = Complex{1.0, 0.0};  // |k1| = 3 masked on n=8
  f.data(0)[g8->flat_index(1, 1)] = Complex{2.0, 0.0};
  Field d = dealias(f);
  CHECK(std::abs(d.data(0)[g8->flat_index(3, 0)]) == 0.0);
  CHECK(std::abs(d.data(0)[g8->flat_index(1, 1)] - Complex{2.0, 0.0}) == 0.0);

  GridPtr g32 = make_grid(3, 32);
  Field f32 = Field::scalar(g32);
  f32.data(0)[g32->flat_index(1, 1, 1)] = Complex{1.0, -2.0};
  CHECK(l2_distance(dealias(f32), f32) == 0.0);

  // projection: energy never increases
  GridPtr g = make_grid(2, 16);
  for (int trial = 0; trial < 10; ++trial) {
    Field r = oracle::random_hermitian_field(g, 600 + trial, 1, 7);
    CHECK(l2_norm(dealias(r)) <= l2_norm(r) * (1.0 + 1e-14));
  }
}

TEST_CASE("Fourier multipliers commute; P Lap = Lap P holds exactly") {
  for (int dim : {2, 3}) {
    GridPtr g = make_grid(dim, 16);
    for (int trial = 0; trial < 20; ++trial) {
      Field f = oracle::random_hermitian_field(g, dim, 7100 + trial, 5);
      const double alpha = 0.3;
      const double scale = std::max(1.0, l2_norm(f));

      Field a = laplacian(helmholtz_solve(f, alpha));
      Field b = helmholtz_solve(laplacian(f), alpha);
      CHECK(l2_distance(a, b) <= 1e-12 * scale);

      Field c = leray_project(helmholtz_solve(f, alpha));
      Field d = helmholtz_solve(leray_project(f), alpha);
      CHECK(l2_distance(c, d) <= 1e-12 * scale);

      Field pl = leray_project(laplacian(f));
      Field lp = laplacian(leray_project(f));
      CHECK(l2_distance(pl, lp) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("hermitian symmetrization fixes perturbed fields") {
  GridPtr g = make_grid(2, 16);
  Field f = oracle::random_hermitian_field(g, 12, 1, 5);
  f.data(0)[g->flat_index(1, 2)] += Complex{1e-3, 1e-3};
  CHECK(hermitian_defect(f) > 1e-5);
  symmetrize_hermitian(f);
  CHECK(hermitian_defect(f) < 1e-15);
}
