#include <doctest.h>

#include <cstdlib>

#include "g2flow/grid.hpp"

using namespace g2flow;

TEST_CASE("make_grid wavenumber lattice for n=8") {
  GridPtr g = make_grid(2, 8);
  const std::vector<int> expected{0, 1, 2, 3, 4, -3, -2, -1};
  CHECK(g->axis_wavenumbers == expected);
  CHECK(g->volume == doctest::Approx(4.0 * 9.869604401089358).epsilon(1e-14));
  CHECK(g->mode_count() == 64);
}

TEST_CASE("2/3-rule mask: n=8 drops |k|=3,4, keeps |k|<=2") {
  GridPtr g = make_grid(2, 8);
  for_each_mode(*g, [&](std::size_t idx, int k0, int k1, int) {
    const bool expect = std::abs(k0) <= 2 && std::abs(k1) <= 2;
    CHECK(static_cast<bool>(g->dealias_mask[idx]) == expect);
  });
  CHECK(g->dealias_mask[0] == 1);  // mean mode always retained
}

TEST_CASE("2/3-rule mask: n=32 retains |k_i| <= 10") {
  GridPtr g = make_grid(3, 32);
  CHECK(g->max_retained_wavenumber() == 10);
  CHECK(g->dealias_mask[g->flat_index(10, 0, 0)] == 1);
  CHECK(g->dealias_mask[g->flat_index(11, 0, 0)] == 0);
  CHECK(g->dealias_mask[g->flat_index(10, 10, 10)] == 1);
  CHECK(g->dealias_mask[g->flat_index(0, 0, 32 - 10)] == 1);  // k = -10
  CHECK(g->dealias_mask[g->flat_index(0, 0, 32 - 11)] == 0);  // k = -11
}

TEST_CASE("make_grid rejects bad sizes") {
  CHECK_THROWS_AS(make_grid(2, 7), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 6), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 9), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 16), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 16), std::invalid_argument);
}

TEST_CASE("conjugate index pairs k with -k") {
  GridPtr g = make_grid(2, 8);
  // k = (1, 2) lives at (1, 2); -k = (-1, -2) at (7, 6)
  CHECK(g->conjugate_index(g->flat_index(1, 2)) == g->flat_index(7, 6));
  CHECK(g->conjugate_index(g->flat_index(0, 0)) == g->flat_index(0, 0));
  // Nyquist is its own partner
  CHECK(g->conjugate_index(g->flat_index(4, 0)) == g->flat_index(4, 0));
}
