#include "loopflow/monotone.hpp"

#include <algorithm>

namespace loopflow {

NotNested::NotNested(std::size_t lo, std::size_t hi)
    : Error("superlevel sets are not nested (levels " + std::to_string(lo) + " and " + std::to_string(hi) + ")"),
      lower(lo),
      upper(hi) {}

NonTermination::NonTermination(std::size_t cap)
    : Error("monotone decomposition exceeded its iteration cap of " + std::to_string(cap)), iteration_cap(cap) {}

template <class S>
bool is_monotone(const CellField<S>& f) {
  const auto levels = level_values(f);
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const S& t = levels[k];
    const PixelSet upper = superlevel_set(f, t);
    const PixelSet bounded = t >= S(0) ? upper : upper.complement();
    if (!bounded.empty() && !is_simple(bounded)) return false;
  }
  return true;
}

template <class S>
CellField<S> build_from_superlevels(const GridSpec& grid, const std::vector<std::pair<S, PixelSet>>& levels) {
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (!(levels[k].second.grid() == grid)) throw GridMismatch(levels[k].second.grid(), grid);
    if (k == 0) continue;
    if (!(levels[k - 1].first < levels[k].first)) throw Error("superlevel thresholds must be strictly increasing");
    if (!levels[k].second.is_subset_of(levels[k - 1].second)) throw NotNested(k - 1, k);
  }
  CellField<S> w(grid);
  for (int j = 0; j < grid.height; ++j)
    for (int i = 0; i < grid.width; ++i)
      for (auto it = levels.rbegin(); it != levels.rend(); ++it)
        if (it->second.contains(i, j)) {
          w.at(i, j) = it->first;
          break;
        }
  return w;
}

namespace {

template <class S>
void require_nonnegative_nonzero(const CellField<S>& f) {
  bool nonzero = false;
  for (const auto& x : f.values()) {
    if (x < S(0)) throw NotNonNegative();
    if (x != S(0)) nonzero = true;
  }
  if (!nonzero) throw IdenticallyZero();
}

template <class S>
CellField<S> positive_part(const CellField<S>& f) {
  CellField<S> p = f;
  for (auto& x : p.values())
    if (x < S(0)) x = S(0);
  return p;
}

template <class S>
CellField<S> negative_part(const CellField<S>& f) {
  CellField<S> n = f;
  for (auto& x : n.values()) x = x < S(0) ? S(-x) : S(0);
  return n;
}

template <class S>
void snap_to_zero(CellField<S>& f, double scale) {
  if constexpr (!ScalarTraits<S>::exact) {
    for (auto& x : f.values())
      if (ScalarTraits<S>::is_zero(x, scale)) x = S(0);
  }
}

}  // namespace

template <class S>
CellField<S> extract_indecomposable(const CellField<S>& f) {
  require_nonnegative_nonzero(f);
  const PixelSet chosen = largest_component(positive_support(f), Connectivity::Four);

  // Anchor at the lowest value on the chosen component: every superlevel set
  // below it meets the component in the component itself.
  S anchor(0);
  bool have = false;
  for (const Cell& c : chosen.cells()) {
    const S& v = f.at(c.i, c.j);
    if (!have || v < anchor) {
      anchor = v;
      have = true;
    }
  }
  return build_from_superlevels<S>(f.grid(), {{anchor, chosen}});
}

template <class S>
CellField<S> extract_simple(const CellField<S>& f) {
  const CellField<S> g = extract_indecomposable(f);
  std::vector<std::pair<S, PixelSet>> levels;
  S below(0);
  for (const S& t : level_values(g)) {
    if (!(t > S(0))) continue;
    levels.emplace_back(t, saturate(superlevel_set(g, below)));
    below = t;
  }
  return build_from_superlevels(f.grid(), levels);
}

template <class S>
std::size_t monotone_iteration_cap(const CellField<S>& f) {
  const auto levels = level_values(f);
  std::size_t widest = 1;
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const PixelSet upper = superlevel_set(f, levels[k]);
    const std::size_t n = components(upper, Connectivity::Four).components.size() +
                          components(upper.complement(), Connectivity::Eight).components.size();
    widest = std::max(widest, n);
  }
  return levels.size() * widest * 2;
}

template <class S>
MonotoneDecomposition<S> decompose_monotone_with_stats(const CellField<S>& f) {
  MonotoneDecomposition<S> out;
  out.iteration_cap = monotone_iteration_cap(f);
  const double scale = f.magnitude();

  CellField<S> rest = f;
  snap_to_zero(rest, scale);
  while (!rest.is_zero()) {
    if (++out.iterations > out.iteration_cap) throw NonTermination(out.iteration_cap);

    MonotoneComponent<S> piece{CellField<S>(f.grid()), 1};
    const CellField<S> pos = positive_part(rest);
    if (!pos.is_zero()) {
      piece.field = extract_simple(pos);
    } else {
      piece.field = -extract_simple(negative_part(rest));
      piece.sign = -1;
    }

    CellField<S> next = rest - piece.field;
    const S before = variation(rest);
    const S after = variation(next) + variation(piece.field);
    if (!ScalarTraits<S>::near(before, after, scale))
      throw AdditivityViolation("extraction step broke variation additivity");

    snap_to_zero(next, scale);
    rest = std::move(next);
    out.components.push_back(std::move(piece));
  }
  return out;
}

template <class S>
std::vector<MonotoneComponent<S>> decompose_monotone(const CellField<S>& f) {
  return decompose_monotone_with_stats(f).components;
}

#define LOOPFLOW_INSTANTIATE(S)                                                                                  \
  template bool is_monotone(const CellField<S>&);                                                               \
  template CellField<S> build_from_superlevels(const GridSpec&, const std::vector<std::pair<S, PixelSet>>&);   \
  template CellField<S> extract_indecomposable(const CellField<S>&);                                            \
  template CellField<S> extract_simple(const CellField<S>&);                                                    \
  template std::size_t monotone_iteration_cap(const CellField<S>&);                                             \
  template MonotoneDecomposition<S> decompose_monotone_with_stats(const CellField<S>&);                         \
  template std::vector<MonotoneComponent<S>> decompose_monotone(const CellField<S>&);

LOOPFLOW_INSTANTIATE(Rational)
LOOPFLOW_INSTANTIATE(double)

}  // namespace loopflow
