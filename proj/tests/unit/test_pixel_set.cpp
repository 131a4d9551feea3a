#include <doctest.h>

#include <algorithm>

#include "loopflow/pixel_set.hpp"
#include "oracles.hpp"

using namespace loopflow;

namespace {

std::vector<char> mask_of(const PixelSet& e) {
  std::vector<char> m(e.grid().cell_count());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = char(e.bits()[k]);
  return m;
}

// 3x3 ring with the corner (0, 0) removed: simple, but two member cells and
// two non-member cells meet diagonally at node (1, 1).
PixelSet pinched() {
  return PixelSet(GridSpec(3, 3), {{1, 0}, {2, 0}, {0, 1}, {2, 1}, {0, 2}, {1, 2}, {2, 2}});
}

}  // namespace

TEST_CASE("basic set operations") {
  const GridSpec g(3, 2);
  const auto a = PixelSet::from_mask(g, 0b000011);
  const auto b = PixelSet::from_mask(g, 0b000110);
  CHECK(a.size() == 2);
  CHECK((a | b).size() == 3);
  CHECK((a & b).cells() == std::vector<Cell>{{1, 0}});
  CHECK((a - b).cells() == std::vector<Cell>{{0, 0}});
  CHECK(a.complement().size() == 4);
  CHECK((a & b).is_subset_of(a));
  CHECK_FALSE(a.is_subset_of(b));
  CHECK(PixelSet(g).empty());
  CHECK_FALSE(a.empty());
  CHECK(a.touches_border());
  CHECK_FALSE(PixelSet(GridSpec(3, 3), {{1, 1}}).touches_border());
  CHECK_THROWS_AS(a.is_subset_of(PixelSet(GridSpec(2, 3))), GridMismatch);
}

TEST_CASE("components and largest component") {
  const GridSpec g(4, 1);
  const auto diag = PixelSet(GridSpec(2, 2), {{0, 0}, {1, 1}});
  CHECK(components(diag, Connectivity::Four).components.size() == 2);
  CHECK(components(diag, Connectivity::Eight).components.size() == 1);
  CHECK_FALSE(is_indecomposable(diag));
  CHECK(is_indecomposable(PixelSet(g)));

  // Equal sizes: the component holding the smallest cell wins.
  const auto two = PixelSet(g, {{0, 0}, {2, 0}, {3, 0}});
  CHECK(largest_component(two, Connectivity::Four).cells() == std::vector<Cell>{{2, 0}, {3, 0}});
  const auto tie = PixelSet(g, {{0, 0}, {3, 0}});
  CHECK(largest_component(tie, Connectivity::Four).cells() == std::vector<Cell>{{0, 0}});
  CHECK(largest_component(PixelSet(g), Connectivity::Four).empty());
}

TEST_CASE("ring has one hole and saturates to the block") {
  auto ring = PixelSet::full(GridSpec(3, 3));
  ring.erase({1, 1});
  CHECK_FALSE(is_simple(ring));
  const auto h = holes(ring);
  REQUIRE(h.size() == 1);
  CHECK(h[0].cells() == std::vector<Cell>{{1, 1}});
  CHECK(saturate(ring) == PixelSet::full(GridSpec(3, 3)));
  CHECK(perimeter(ring) == 16);
  CHECK_THROWS_AS(holes(PixelSet(GridSpec(2, 2), {{0, 0}, {1, 1}})), NotIndecomposable);
  CHECK_THROWS_AS(trace_boundary(ring), NotSimple);
}

TEST_CASE("pinched simple set") {
  const auto e = pinched();
  CHECK(is_simple(e));
  CHECK(pinch_nodes(e) == std::vector<Node>{{1, 1}});
  const auto loop = trace_boundary(e);
  CHECK(loop.closed());
  CHECK_FALSE(loop.is_simple());
  CHECK(std::count(loop.nodes().begin(), loop.nodes().end(), Node{1, 1}) == 2);
  CHECK(curve_measure<Rational>(e.grid(), loop) == perp_gradient(indicator<Rational>(e)));
  CHECK(std::int64_t(loop.steps()) == perimeter(e));
}

TEST_CASE("exhaustive 3x3: simplicity, perimeter and boundary tracing") {
  const GridSpec g(3, 3);
  int simple = 0;
  for (std::uint64_t m = 0; m < 512; ++m) {
    const auto e = PixelSet::from_mask(g, m);
    const auto p = oracle::pad(g, mask_of(e));
    CHECK(perimeter(e) == oracle::perimeter(p));
    CHECK(is_indecomposable(e) == (e.empty() || oracle::count_classes(p, 1, false) == 1));
    const bool s = oracle::simple_4_8(p);
    REQUIRE(is_simple(e) == s);
    if (!s) continue;
    ++simple;
    const auto loop = trace_boundary(e);
    CHECK(loop.nodes().front() == Node{e.cells().front().i, e.cells().front().j});
    CHECK(curve_measure<Rational>(g, loop) == perp_gradient(indicator<Rational>(e)));
    CHECK(loop_interior(g, loop) == e);
    CHECK(loop.is_simple() == pinch_nodes(e).empty());
    CHECK(saturate(e) == e);
  }
  CHECK(simple > 0);
}

TEST_CASE("level sets, variation and coarea") {
  CellField<Rational> f(GridSpec(2, 2));
  f.at(0, 0) = 2;
  f.at(1, 0) = Rational(-1, 2);
  f.at(1, 1) = 2;
  CHECK(level_values(f) == std::vector<Rational>{Rational(-1, 2), Rational(0), Rational(2)});
  CHECK(superlevel_set(f, Rational(0)).size() == 2);
  CHECK(positive_support(f) == superlevel_set(f, Rational(0)));
  CHECK(superlevel_set(f, Rational(-1)).size() == 4);
  CHECK(variation(f) == oracle::variation(f));
  CHECK(coarea_sum(f) == variation(f));
}

TEST_CASE("property: coarea formula on random fields") {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = oracle::random_grid(rng, 8);
    const auto f = oracle::random_field<Rational>(rng, g);
    const auto v = variation(f);
    CHECK(v == oracle::variation(f));
    CHECK(coarea_sum(f) == v);
    const auto levels = level_values(f);
    CHECK(std::is_sorted(levels.begin(), levels.end()));
    CHECK(std::adjacent_find(levels.begin(), levels.end()) == levels.end());
    for (std::size_t k = 0; k + 1 < levels.size(); ++k)
      if (!(levels[k] < Rational(0)))
        CHECK(perimeter(superlevel_set(f, levels[k])) == oracle::superlevel_perimeter(f, levels[k]));
  }
}
