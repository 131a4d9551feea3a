#include <doctest.h>

#include "loopflow/grid.hpp"
#include "oracles.hpp"

using namespace loopflow;

namespace {

LatticeCurve square(int x, int y, int side) {
  std::vector<Node> n;
  for (int k = 0; k < side; ++k) n.push_back({x, y + k});
  for (int k = 0; k < side; ++k) n.push_back({x + k, y + side});
  for (int k = 0; k < side; ++k) n.push_back({x + side, y + side - k});
  for (int k = 0; k <= side; ++k) n.push_back({x + side - k, y});
  return LatticeCurve(n, true);
}

}  // namespace

TEST_CASE("single pixel maps to its clockwise loop") {
  CellField<Rational> f(GridSpec(1, 1));
  f.at(0, 0) = 1;
  const auto mu = perp_gradient(f);
  CHECK(mu == curve_measure<Rational>(f.grid(), square(0, 0, 1)));
  CHECK(mu.h(0, 0) == Rational(-1));
  CHECK(mu.h(0, 1) == Rational(1));
  CHECK(mu.v(0, 0) == Rational(1));
  CHECK(mu.v(1, 0) == Rational(-1));
  CHECK(total_variation(mu) == Rational(4));
}

TEST_CASE("edge_between orientation") {
  CHECK(edge_between({0, 0}, {1, 0}).orientation == 1);
  CHECK(edge_between({1, 0}, {0, 0}).orientation == -1);
  CHECK(edge_between({2, 3}, {2, 2}).edge == EdgeId{EdgeKind::V, 2, 2});
  CHECK_THROWS_AS(edge_between({0, 0}, {1, 1}), InvalidCurve);
}

TEST_CASE("lattice curve validation") {
  CHECK_THROWS_AS(LatticeCurve({{0, 0}}, false), InvalidCurve);
  CHECK_THROWS_AS(LatticeCurve({{0, 0}, {2, 0}}, false), InvalidCurve);
  CHECK_THROWS_AS(LatticeCurve({{0, 0}, {1, 0}}, true), InvalidCurve);
  CHECK(square(0, 0, 2).is_simple());
  CHECK(LatticeCurve({{0, 0}, {1, 0}, {1, 1}}, false).is_simple());
  CHECK_FALSE(LatticeCurve({{0, 0}, {1, 0}, {0, 0}}, false).is_simple());
  CHECK_THROWS_AS(curve_measure<Rational>(GridSpec(1, 1), square(0, 0, 2)), OutOfGrid);
}

TEST_CASE("reversal negates the measure") {
  const GridSpec g(3, 3);
  const auto a = curve_measure<Rational>(g, square(0, 1, 2));
  CHECK(curve_measure<Rational>(g, square(0, 1, 2).reversed()) == Rational(-1) * a);
  CHECK(curve_length(square(0, 1, 2)) == 8);
}

TEST_CASE("figure eight splits into two simple loops") {
  // Two unit squares sharing the node (1, 1).
  const LatticeCurve eight({{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 1}, {1, 1}, {1, 0}, {0, 0}}, true);
  CHECK_FALSE(eight.is_simple());
  const auto loops = split_into_simple_loops(eight);
  REQUIRE(loops.size() == 2);
  EdgeFlux<Rational> sum(GridSpec(2, 2));
  for (const auto& l : loops) {
    CHECK(l.is_simple());
    CHECK(l.closed());
    sum += curve_measure<Rational>(sum.grid(), l);
  }
  CHECK(sum == curve_measure<Rational>(sum.grid(), eight));
  CHECK_THROWS_AS(split_into_simple_loops(LatticeCurve({{0, 0}, {1, 0}}, false)), InvalidCurve);
}

TEST_CASE("superposition rejects non-positive weights") {
  CurveSuperposition<Rational> eta;
  CHECK_THROWS_AS(eta.add(Rational(0), square(0, 0, 1)), Error);
  CHECK_THROWS_AS(eta.add(Rational(-1), square(0, 0, 1)), Error);
  eta.add(Rational(1, 2), square(0, 0, 1));
  eta.add(Rational(1, 2), square(0, 0, 1));
  CellField<Rational> f(GridSpec(1, 1));
  f.at(0, 0) = 1;
  CHECK(superpose(GridSpec(1, 1), eta) == perp_gradient(f));
}

TEST_CASE("divergence of a source edge") {
  EdgeFlux<Rational> mu(GridSpec(2, 1));
  mu.h(0, 0) = Rational(3, 2);
  const auto d = divergence(mu);
  CHECK(d.at(0, 0) == Rational(3, 2));
  CHECK(d.at(1, 0) == Rational(-3, 2));
  CHECK_FALSE(is_divergence_free(mu));
  try {
    require_divergence_free(mu);
    FAIL("expected NotDivergenceFree");
  } catch (const NotDivergenceFree& e) {
    CHECK(e.node == Node{0, 0});
    CHECK(e.residual == doctest::Approx(1.5));
  }
  CHECK_THROWS_AS(integrate_potential(mu), NotDivergenceFree);
}

TEST_CASE("property: rotated gradient is an isometry onto divergence-free fluxes") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = oracle::random_grid(rng, 7);
    const auto f = oracle::random_field<Rational>(rng, g);
    const auto mu = perp_gradient(f);
    CHECK(total_variation(mu) == oracle::variation(f));
    CHECK(is_divergence_free(mu));
    for (const auto& d : oracle::node_divergence(mu)) CHECK(d == Rational(0));
    CHECK(integrate_potential(mu) == f);
  }
}

TEST_CASE("property: float mode agrees with exact mode") {
  oracle::Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_grid(rng, 6);
    const auto f = oracle::random_field<Rational>(rng, g);
    CellField<double> fd(g);
    for (std::size_t k = 0; k < f.values().size(); ++k) fd.values()[k] = to_double(f.values()[k]);
    const auto back = integrate_potential(perp_gradient(fd));
    for (std::size_t k = 0; k < f.values().size(); ++k)
      CHECK(back.values()[k] == doctest::Approx(fd.values()[k]).epsilon(1e-12));
    CHECK(total_variation(perp_gradient(fd)) == doctest::Approx(to_double(oracle::variation(f))));
  }
}

TEST_CASE("arithmetic on fluxes and fields") {
  const GridSpec g(2, 2);
  EdgeFlux<Rational> a(g), b(g);
  a.v(1, 0) = 2;
  b.v(1, 0) = -2;
  CHECK((a + b).is_zero());
  CHECK((a - b).v(1, 0) == Rational(4));
  CHECK(a.magnitude() == doctest::Approx(2.0));
  CHECK_THROWS_AS(a += EdgeFlux<Rational>(GridSpec(1, 2)), GridMismatch);
  CHECK_THROWS_AS(GridSpec(0, 3), Error);
}
