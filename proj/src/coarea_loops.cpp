#include "loopflow/coarea_loops.hpp"

#include <algorithm>
#include <map>

namespace loopflow {

template <class S>
CurveSuperposition<S> loops_of_monotone(const MonotoneComponent<S>& m) {
  if (m.sign != 1 && m.sign != -1) throw NotMonotone();
  const CellField<S> g = S(m.sign) * m.field;
  for (const auto& x : g.values())
    if (x < S(0)) throw NotMonotone();
  if (!is_monotone(g)) throw NotMonotone();

  CurveSuperposition<S> out;
  const auto levels = level_values(g);
  for (std::size_t k = 1; k < levels.size(); ++k) {
    LatticeCurve loop = trace_boundary(superlevel_set(g, levels[k - 1]));
    if (m.sign < 0) loop = loop.reversed();
    const S weight = levels[k] - levels[k - 1];
    for (auto& piece : split_into_simple_loops(loop)) out.add(weight, std::move(piece));
  }
  return out;
}

template <class S>
CurveSuperposition<S> decompose_divfree(const EdgeFlux<S>& mu) {
  require_divergence_free(mu);
  CurveSuperposition<S> out;
  for (const auto& m : decompose_monotone(integrate_potential(mu))) out.append(loops_of_monotone(m));
  return out;
}

template <class S>
bool VerificationReport<S>::defects_zero() const {
  using T = ScalarTraits<S>;
  return T::is_zero(reconstruction_residual, scale) && T::is_zero(tv_defect, scale) &&
         T::is_zero(edge_additivity_defect, scale) && T::is_zero(divergence_additivity_defect, scale);
}

template <class S>
bool VerificationReport<S>::all_curves_valid() const {
  return std::all_of(curves.begin(), curves.end(), [](const CurveFlags& c) { return c.simple && c.in_grid; });
}

namespace {

template <class S>
void raise_max(S& acc, const S& candidate) {
  if (candidate > acc) acc = candidate;
}

}  // namespace

template <class S>
VerificationReport<S> verify_decomposition(const EdgeFlux<S>& mu, const CurveSuperposition<S>& eta) {
  const GridSpec& grid = mu.grid();
  VerificationReport<S> report;

  EdgeFlux<S> rebuilt(grid);
  EdgeFlux<S> abs_sum(grid);
  NodeDivergence<S> div_sum(grid);
  S mass(0);

  for (const auto& item : eta.items()) {
    const LatticeCurve& gamma = item.curve;
    CurveFlags flags{gamma.closed(), gamma.is_simple(), true};
    for (const Node& n : gamma.nodes())
      if (!grid.contains_node(n.x, n.y)) flags.in_grid = false;
    report.curves.push_back(flags);
    if (!flags.in_grid) continue;

    // Net signed traversal count per edge for this curve.
    std::map<EdgeId, int> net;
    const auto& nodes = gamma.nodes();
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      const DirectedEdge de = edge_between(nodes[k], nodes[k + 1]);
      net[de.edge] += de.orientation;
    }
    for (const auto& [e, count] : net) {
      if (count == 0) continue;
      rebuilt.at(e) += S(count) * item.weight;
      abs_sum.at(e) += S(count < 0 ? -count : count) * item.weight;
    }
    const Node& a = nodes.front();
    const Node& b = nodes.back();
    if (a != b) {
      div_sum.at(a.x, a.y) += item.weight;
      div_sum.at(b.x, b.y) += item.weight;
    }
    mass += item.weight * S(curve_length(gamma));
  }

  report.scale = std::max(mu.magnitude(), rebuilt.magnitude());
  for (const EdgeId& e : mu.edges()) {
    raise_max(report.reconstruction_residual, abs_value(S(rebuilt.at(e) - mu.at(e))));
    raise_max(report.edge_additivity_defect, abs_value(S(abs_sum.at(e) - abs_value(mu.at(e)))));
  }
  const NodeDivergence<S> d = divergence(mu);
  for (std::size_t k = 0; k < d.values().size(); ++k) {
    const int x = int(k % std::size_t(grid.width + 1));
    const int y = int(k / std::size_t(grid.width + 1));
    raise_max(report.divergence_additivity_defect, abs_value(S(div_sum.at(x, y) - abs_value(d.at(x, y)))));
  }
  report.tv_defect = abs_value(S(total_variation(mu) - mass));
  report.scale = std::max(report.scale, to_double(total_variation(mu)));
  return report;
}

#define LOOPFLOW_INSTANTIATE(S)                                                                        \
  template CurveSuperposition<S> loops_of_monotone(const MonotoneComponent<S>&);                      \
  template CurveSuperposition<S> decompose_divfree(const EdgeFlux<S>&);                               \
  template struct VerificationReport<S>;                                                              \
  template VerificationReport<S> verify_decomposition(const EdgeFlux<S>&, const CurveSuperposition<S>&);

LOOPFLOW_INSTANTIATE(Rational)
LOOPFLOW_INSTANTIATE(double)

}  // namespace loopflow
