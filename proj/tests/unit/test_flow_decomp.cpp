#include <doctest.h>

#include "loopflow/coarea_loops.hpp"
#include "loopflow/flow_decomp.hpp"
#include "oracles.hpp"

using namespace loopflow;

namespace {

template <class S>
EdgeFlux<S> random_flux(oracle::Rng& rng, const GridSpec& g) {
  EdgeFlux<S> mu(g);
  const int den = oracle::uniform(rng, 1, 4);
  for (const auto& e : mu.edges())
    if (oracle::uniform(rng, 0, 2) > 0) mu.at(e) = S(oracle::uniform(rng, -3 * den, 3 * den)) / S(den);
  return mu;
}

EdgeFlux<Rational> unit_loop() {
  CellField<Rational> f(GridSpec(1, 1));
  f.at(0, 0) = 1;
  return perp_gradient(f);
}

}  // namespace

TEST_CASE("directed cycles") {
  const auto loop = find_directed_cycle(unit_loop());
  REQUIRE(loop.has_value());
  CHECK(loop->closed());
  CHECK(loop->steps() == 4);
  CHECK(curve_measure<Rational>(GridSpec(1, 1), *loop) == unit_loop());

  EdgeFlux<Rational> line(GridSpec(3, 1));
  for (int i = 0; i < 3; ++i) line.h(i, 0) = 1;
  CHECK_FALSE(find_directed_cycle(line).has_value());

  try {
    acyclic_to_paths(unit_loop());
    FAIL("expected NotAcyclic");
  } catch (const NotAcyclic& e) {
    CHECK(e.cycle.closed());
  }
}

TEST_CASE("subcurrents") {
  EdgeFlux<Rational> mu(GridSpec(2, 1)), sigma(GridSpec(2, 1));
  mu.h(0, 0) = 2;
  mu.h(1, 0) = -1;
  sigma.h(0, 0) = 1;
  CHECK(is_subcurrent(sigma, mu));
  sigma.h(1, 0) = Rational(-1, 2);
  CHECK(is_subcurrent(sigma, mu));
  sigma.h(1, 0) = Rational(1, 2);
  CHECK_FALSE(is_subcurrent(sigma, mu));
  sigma.h(1, 0) = -2;
  CHECK_FALSE(is_subcurrent(sigma, mu));
  CHECK_THROWS_AS(is_subcurrent(EdgeFlux<Rational>(GridSpec(1, 1)), mu), GridMismatch);
}

TEST_CASE("source to sink path") {
  EdgeFlux<Rational> mu(GridSpec(2, 2));
  mu.h(0, 0) = Rational(1, 2);
  mu.v(1, 0) = Rational(1, 2);
  const auto eta = acyclic_to_paths(mu);
  REQUIRE(eta.size() == 1);
  CHECK(eta.items()[0].weight == Rational(1, 2));
  CHECK(eta.items()[0].curve.nodes() == std::vector<Node>{{0, 0}, {1, 0}, {1, 1}});
  CHECK_FALSE(eta.items()[0].curve.closed());
}

TEST_CASE("acyclicity shortcut") {
  EdgeFlux<Rational> east(GridSpec(3, 2));
  east.h(0, 0) = 1;
  east.h(2, 1) = 2;
  CHECK(is_acyclic_fast(east).fired == AcyclicityTest::Corollary);

  EdgeFlux<Rational> stair(GridSpec(2, 2));
  stair.h(0, 0) = 1;
  stair.v(1, 0) = 1;
  const auto r = is_acyclic_fast(stair);
  CHECK(r.acyclic);
  CHECK(r.fired == AcyclicityTest::General);

  const auto c = is_acyclic_fast(unit_loop());
  CHECK_FALSE(c.acyclic);
  CHECK(c.fired == AcyclicityTest::None);
}

TEST_CASE("mixed flux: loop plus path") {
  EdgeFlux<Rational> mu = unit_loop();
  EdgeFlux<Rational> path(GridSpec(1, 1));
  path.h(0, 0) = 3;  // against the loop's -1 on the bottom edge
  mu += path;
  const auto split = cycle_acyclic_split(mu);
  CHECK(split.cycle + split.acyclic == mu);
  CHECK(is_divergence_free(split.cycle));
  CHECK(oracle::support_is_dag(split.acyclic));
  const auto eta = decompose_general(mu);
  CHECK(verify_decomposition(mu, eta).clean());
  CHECK_FALSE(eta.items().front().curve.closed());
}

TEST_CASE_TEMPLATE("property: general decomposition of random fluxes", S, Rational, double) {
  oracle::Rng rng(51);
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = oracle::random_grid(rng, 6);
    const auto mu = random_flux<S>(rng, g);

    const auto split = cycle_acyclic_split(mu);
    CHECK(is_subcurrent(split.cycle, mu));
    CHECK(is_subcurrent(split.acyclic, mu));
    CHECK(is_divergence_free(split.cycle));
    CHECK(oracle::support_is_dag(split.acyclic));
    CHECK(is_acyclic_fast(split.acyclic).acyclic);
    CHECK(is_acyclic_fast(mu).acyclic == oracle::support_is_dag(mu));

    const auto eta = decompose_general(mu);
    CHECK(verify_decomposition(mu, eta).clean());
    bool loops = false;
    for (const auto& item : eta.items()) {
      CHECK(item.curve.is_simple());
      if (item.curve.closed()) loops = true;
      else CHECK_FALSE(loops);  // paths come first
    }
  }
}
