#include <doctest.h>

#include "loopflow/monotone.hpp"
#include "oracles.hpp"

using namespace loopflow;

namespace {

template <class S>
bool edgewise_additive(const CellField<S>& f, const std::vector<MonotoneComponent<S>>& parts) {
  const auto mu = perp_gradient(f);
  EdgeFlux<S> abs_sum(f.grid());
  for (const auto& p : parts) {
    const auto d = perp_gradient(p.field);
    for (const auto& e : d.edges()) abs_sum.at(e) += abs_value(d.at(e));
  }
  for (const auto& e : mu.edges())
    if (abs_sum.at(e) != abs_value(mu.at(e))) return false;
  return true;
}

// 7x7 block with four isolated single-cell holes.
CellField<Rational> block_with_holes() {
  CellField<Rational> f(GridSpec(7, 7));
  for (auto& x : f.values()) x = 1;
  for (const Cell c : {Cell{1, 1}, Cell{3, 1}, Cell{1, 3}, Cell{3, 3}}) f.at(c.i, c.j) = 0;
  return f;
}

}  // namespace

TEST_CASE("is_monotone on small examples") {
  const GridSpec g(3, 3);
  CellField<Rational> f(g);
  CHECK(is_monotone(f));
  f.at(1, 1) = 1;
  CHECK(is_monotone(f));
  CHECK(is_monotone(Rational(-2) * f));
  for (auto& x : f.values()) x += Rational(1);
  CHECK(is_monotone(f));  // pyramid 1 / 2
  CellField<Rational> ring(g);
  for (auto& x : ring.values()) x = 1;
  ring.at(1, 1) = 0;
  CHECK_FALSE(is_monotone(ring));
  CellField<Rational> two(g);
  two.at(0, 0) = 1;
  two.at(2, 2) = 1;
  CHECK_FALSE(is_monotone(two));
}

TEST_CASE("build_from_superlevels") {
  const GridSpec g(3, 1);
  const PixelSet all = PixelSet::full(g), mid(g, {{1, 0}});
  const auto w = build_from_superlevels<Rational>(g, {{Rational(1), all}, {Rational(3), mid}});
  CHECK(w.at(0, 0) == Rational(1));
  CHECK(w.at(1, 0) == Rational(3));
  CHECK_THROWS_AS(build_from_superlevels<Rational>(g, {{Rational(1), mid}, {Rational(3), all}}), NotNested);
  CHECK_THROWS_AS(build_from_superlevels<Rational>(g, {{Rational(3), all}, {Rational(1), mid}}), Error);
  CHECK_THROWS_AS(build_from_superlevels<Rational>(g, {{Rational(1), PixelSet(GridSpec(1, 3))}}), GridMismatch);
}

TEST_CASE("extractions reject bad input") {
  CellField<Rational> f(GridSpec(2, 2));
  CHECK_THROWS_AS(extract_indecomposable(f), IdenticallyZero);
  f.at(0, 0) = -1;
  CHECK_THROWS_AS(extract_indecomposable(f), NotNonNegative);
}

TEST_CASE("extract_indecomposable takes the largest component at its minimum") {
  CellField<Rational> f(GridSpec(5, 1));
  f.at(0, 0) = 9;
  f.at(2, 0) = 3;
  f.at(3, 0) = 5;
  const auto g = extract_indecomposable(f);
  CHECK(g.values() == std::vector<Rational>{0, 0, 3, 3, 0});
}

TEST_CASE("extract_simple fills holes") {
  const auto f = block_with_holes();
  const auto h = extract_simple(f);
  for (const auto& x : h.values()) CHECK(x == Rational(1));
  CHECK(variation(f) == variation(f - h) + variation(h));
}

TEST_CASE("a values-times-components bound is too small for four holes") {
  const auto f = block_with_holes();
  const auto levels = level_values(f);
  std::size_t widest = 0;
  for (const auto& t : levels)
    widest = std::max(widest, components(superlevel_set(f, t), Connectivity::Four).components.size());
  const std::size_t naive = levels.size() * widest * 2;

  const auto d = decompose_monotone_with_stats(f);
  CHECK(d.iterations == 5);
  CHECK(naive < d.iterations);
  CHECK(d.iterations <= d.iteration_cap);
  CHECK(d.components.size() == 5);
}

TEST_CASE("a pyramid peels into one layer per level") {
  CellField<Rational> f(GridSpec(4, 4));
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) f.at(i, j) = Rational(std::min({i + 1, j + 1, 4 - i, 4 - j}));
  const auto parts = decompose_monotone(f);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].sign == 1);
  for (const auto& x : parts[0].field.values()) CHECK(x == Rational(1));
  CHECK(parts[0].field + parts[1].field == f);
  CHECK(positive_support(parts[1].field).size() == 4);
  CHECK(decompose_monotone(CellField<Rational>(GridSpec(2, 2))).empty());
}

TEST_CASE_TEMPLATE("property: monotone decomposition identities", S, Rational, double) {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const auto g = oracle::random_grid(rng, 7);
    const auto exact = oracle::random_field<Rational>(rng, g);
    CellField<S> f(g);
    for (std::size_t k = 0; k < f.values().size(); ++k) f.values()[k] = S(exact.values()[k].numerator()) / S(exact.values()[k].denominator());
    const auto d = decompose_monotone_with_stats(f);
    CHECK(d.iterations <= d.iteration_cap);
    CellField<S> sum(g);
    S tv(0);
    for (const auto& c : d.components) {
      CHECK(is_monotone(c.field));
      for (const auto& x : c.field.values()) CHECK(sign_of(x) * c.sign >= 0);
      CHECK_FALSE(c.field.is_zero());
      sum += c.field;
      tv += variation(c.field);
    }
    if constexpr (ScalarTraits<S>::exact) {
      CHECK(sum == f);
      CHECK(tv == variation(f));
      CHECK(edgewise_additive(f, d.components));
    } else {
      for (std::size_t k = 0; k < f.values().size(); ++k)
        CHECK(sum.values()[k] == doctest::Approx(f.values()[k]).epsilon(1e-9));
      CHECK(tv == doctest::Approx(variation(f)).epsilon(1e-9));
    }
  }
}
