#include <doctest.h>

#include <cmath>

#include "g2flow/initial.hpp"
#include "g2flow/norms.hpp"
#include "g2flow/operators.hpp"
#include "oracles.hpp"

using namespace g2flow;

TEST_CASE("random_divfree_field: determinism, divergence, amplitude") {
  GridPtr g = make_grid(2, 32);
  Field a = random_divfree_field(g, 77, -2.0, 8, 1.5);
  Field b = random_divfree_field(g, 77, -2.0, 8, 1.5);
  // determinism contract: bit-identical
  for (std::size_t i = 0; i < a.flat().size(); ++i) {
    CHECK(a.flat()[i].real() == b.flat()[i].real());
    CHECK(a.flat()[i].imag() == b.flat()[i].imag());
  }
  CHECK(divergence_defect(a) <= 1e-12);
  CHECK(hermitian_defect(a) <= 1e-12);
  CHECK(l2_norm(a) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(std::abs(a.data(0)[0]) == 0.0);

  Field c = random_divfree_field(g, 78, -2.0, 8, 1.5);
  CHECK(l2_distance(a, c) > 1e-3);  // different seeds differ

  CHECK(max_abs_coefficient(random_divfree_field(g, 77, -2.0, 8, 0.0)) == 0.0);
  CHECK_THROWS_AS(random_divfree_field(g, 1, -2.0, 11, 1.0), std::invalid_argument);
}

TEST_CASE("random_divfree_field stays inside the dealias mask") {
  GridPtr g = make_grid(3, 16);
  Field u = random_divfree_field(g, 5, -2.0, 5, 1.0);
  CHECK(l2_distance(dealias(u), u) == 0.0);
  CHECK(divergence_defect(u) <= 1e-12);
}

TEST_CASE("taylor_green: L2 norm against the 2D quadrature oracle") {
  // int sin^2 x cos^2 y over the 2D torus = pi^2 (oracle); two components
  const double comp = oracle::integrate_2d(
      [](double x, double y) { return std::pow(std::sin(x) * std::cos(y), 2.0); }, 128);
  CHECK(comp == doctest::Approx(oracle::kPi * oracle::kPi).epsilon(1e-10));
  const double expected_l2 = std::sqrt(2.0 * comp);

  GridPtr g = make_grid(2, 32);
  const double amplitude = 0.75;
  Field u = taylor_green(g, amplitude);
  CHECK(l2_norm(u) == doctest::Approx(amplitude * expected_l2).epsilon(1e-12));
}

TEST_CASE("taylor_green is divergence-free with scalar curl 2 a sin x sin y") {
  GridPtr g = make_grid(2, 32);
  TransformPlan plan(g);
  const double a = 1.3;
  Field u = taylor_green(g, a);
  CHECK(max_abs_coefficient(divergence(u)) < 1e-15);

  Field w = curl(u);
  PhysicalField wp = to_physical(w, plan);
  const double h = 2.0 * oracle::kPi / g->n;
  std::size_t idx = 0;
  for (int i0 = 0; i0 < g->n; ++i0) {
    for (int i1 = 0; i1 < g->n; ++i1, ++idx) {
      const double expected = 2.0 * a * std::sin(i0 * h) * std::sin(i1 * h);
      CHECK(wp.data(0)[idx] == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("taylor_green embeds z-independent on a 3D grid") {
  GridPtr g = make_grid(3, 16);
  Field u = taylor_green(g, 1.0);
  CHECK(u.ncomp() == 3);
  CHECK(max_abs_coefficient(divergence(u)) < 1e-15);
  // third component identically zero
  for (const Complex& z : u.component(2)) CHECK(std::abs(z) == 0.0);
  // matches the 2D norm: an extra 2pi of volume in z
  GridPtr g2 = make_grid(2, 16);
  Field u2 = taylor_green(g2, 1.0);
  CHECK(l2_norm(u) == doctest::Approx(std::sqrt(2.0 * oracle::kPi) * l2_norm(u2)).epsilon(1e-12));
}
