#include "loopflow/flow_decomp.hpp"

#include <array>

namespace loopflow {

NotAcyclic::NotAcyclic(LatticeCurve c) : Error("flux support contains a directed cycle"), cycle(std::move(c)) {}

namespace {

struct Arc {
  EdgeId edge;
  Node to;
  int orientation = 1;  // +1 when travelling along the canonical direction
};

/// Outgoing arcs of the sign-directed support at n, in EdgeId order.
template <class S>
int out_arcs(const EdgeFlux<S>& mu, Node n, std::array<Arc, 4>& arcs) {
  const GridSpec& g = mu.grid();
  int count = 0;
  if (n.x >= 1 && mu.h(n.x - 1, n.y) < S(0)) arcs[count++] = {{EdgeKind::H, n.x - 1, n.y}, {n.x - 1, n.y}, -1};
  if (n.x < g.width && mu.h(n.x, n.y) > S(0)) arcs[count++] = {{EdgeKind::H, n.x, n.y}, {n.x + 1, n.y}, 1};
  if (n.y >= 1 && mu.v(n.x, n.y - 1) < S(0)) arcs[count++] = {{EdgeKind::V, n.x, n.y - 1}, {n.x, n.y - 1}, -1};
  if (n.y < g.height && mu.v(n.x, n.y) > S(0)) arcs[count++] = {{EdgeKind::V, n.x, n.y}, {n.x, n.y + 1}, 1};
  return count;
}

template <class S>
void snap_to_zero(EdgeFlux<S>& mu, double scale) {
  if constexpr (!ScalarTraits<S>::exact) {
    for (const EdgeId& e : mu.edges())
      if (ScalarTraits<S>::is_zero(mu.at(e), scale)) mu.at(e) = S(0);
  }
}

}  // namespace

template <class S>
std::optional<LatticeCurve> find_directed_cycle(const EdgeFlux<S>& mu) {
  const GridSpec& g = mu.grid();
  enum : std::uint8_t { White, Grey, Black };
  std::vector<std::uint8_t> colour(g.node_count(), White);

  struct Frame {
    Node node;
    std::array<Arc, 4> arcs;
    int count;
    int next;
  };
  std::vector<Frame> stack;

  for (int y = 0; y <= g.height; ++y) {
    for (int x = 0; x <= g.width; ++x) {
      if (colour[g.node_index(x, y)] != White) continue;
      stack.clear();
      Frame root{{x, y}, {}, 0, 0};
      root.count = out_arcs(mu, root.node, root.arcs);
      stack.push_back(root);
      colour[g.node_index(x, y)] = Grey;

      while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next == top.count) {
          colour[g.node_index(top.node.x, top.node.y)] = Black;
          stack.pop_back();
          continue;
        }
        const Node to = top.arcs[top.next++].to;
        const auto c = colour[g.node_index(to.x, to.y)];
        if (c == Grey) {
          std::size_t k = stack.size();
          while (stack[k - 1].node != to) --k;
          std::vector<Node> nodes;
          for (std::size_t m = k - 1; m < stack.size(); ++m) nodes.push_back(stack[m].node);
          nodes.push_back(to);
          return LatticeCurve(std::move(nodes), true);
        }
        if (c == White) {
          Frame f{to, {}, 0, 0};
          f.count = out_arcs(mu, to, f.arcs);
          colour[g.node_index(to.x, to.y)] = Grey;
          stack.push_back(f);
        }
      }
    }
  }
  return std::nullopt;
}

template <class S>
bool is_subcurrent(const EdgeFlux<S>& sigma, const EdgeFlux<S>& mu) {
  if (!(sigma.grid() == mu.grid())) throw GridMismatch(sigma.grid(), mu.grid());
  const S lhs = total_variation(mu);
  const S rhs = total_variation(mu - sigma) + total_variation(sigma);
  return ScalarTraits<S>::near(lhs, rhs, mu.magnitude());
}

template <class S>
CycleSplit<S> cycle_acyclic_split(const EdgeFlux<S>& mu) {
  const double scale = mu.magnitude();
  CycleSplit<S> out{EdgeFlux<S>(mu.grid()), mu};
  snap_to_zero(out.acyclic, scale);
  while (auto cycle = find_directed_cycle(out.acyclic)) {
    const auto& nodes = cycle->nodes();
    S bottleneck(0);
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      const S w = abs_value(out.acyclic.at(edge_between(nodes[k], nodes[k + 1]).edge));
      if (k == 0 || w < bottleneck) bottleneck = w;
    }
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      const DirectedEdge de = edge_between(nodes[k], nodes[k + 1]);
      const S step = S(de.orientation) * bottleneck;
      out.acyclic.at(de.edge) -= step;
      out.cycle.at(de.edge) += step;
    }
    snap_to_zero(out.acyclic, scale);
  }
  return out;
}

template <class S>
CurveSuperposition<S> acyclic_to_paths(const EdgeFlux<S>& mu) {
  if (auto cycle = find_directed_cycle(mu)) throw NotAcyclic(std::move(*cycle));

  const GridSpec& g = mu.grid();
  const double scale = mu.magnitude();
  EdgeFlux<S> rest = mu;
  snap_to_zero(rest, scale);
  NodeDivergence<S> d = divergence(rest);
  CurveSuperposition<S> out;

  while (!rest.is_zero()) {
    Node start{-1, -1};
    S best(0);
    for (int y = 0; y <= g.height; ++y)
      for (int x = 0; x <= g.width; ++x)
        if (d.at(x, y) > best) {
          best = d.at(x, y);
          start = {x, y};
        }
    if (start.x < 0) throw Error("acyclic flux has no source left; numerical breakdown");

    std::vector<Node> nodes{start};
    S bottleneck(0);
    std::array<Arc, 4> arcs;
    for (;;) {
      const int count = out_arcs(rest, nodes.back(), arcs);
      if (count == 0) break;
      int pick = 0;
      for (int k = 1; k < count; ++k)
        if (abs_value(rest.at(arcs[k].edge)) > abs_value(rest.at(arcs[pick].edge))) pick = k;
      const S w = abs_value(rest.at(arcs[pick].edge));
      if (nodes.size() == 1 || w < bottleneck) bottleneck = w;
      nodes.push_back(arcs[pick].to);
    }
    if (nodes.size() == 1) {
      // Only reachable through float round-off: a source without outflow.
      d.at(start.x, start.y) = S(0);
      continue;
    }

    const Node end = nodes.back();
    S w = bottleneck;
    if (d.at(start.x, start.y) < w) w = d.at(start.x, start.y);
    if (-d.at(end.x, end.y) < w) w = -d.at(end.x, end.y);
    if (!(w > S(0))) throw Error("path stripping stalled; numerical breakdown");

    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      const DirectedEdge de = edge_between(nodes[k], nodes[k + 1]);
      rest.at(de.edge) -= S(de.orientation) * w;
    }
    d.at(start.x, start.y) -= w;
    d.at(end.x, end.y) += w;
    snap_to_zero(rest, scale);
    if constexpr (!ScalarTraits<S>::exact) {
      if (ScalarTraits<S>::is_zero(d.at(start.x, start.y), scale)) d.at(start.x, start.y) = S(0);
      if (ScalarTraits<S>::is_zero(d.at(end.x, end.y), scale)) d.at(end.x, end.y) = S(0);
    }
    out.add(w, LatticeCurve(std::move(nodes), false));
  }
  return out;
}

template <class S>
CurveSuperposition<S> decompose_general(const EdgeFlux<S>& mu) {
  const CycleSplit<S> split = cycle_acyclic_split(mu);
  CurveSuperposition<S> out = acyclic_to_paths(split.acyclic);
  out.append(decompose_divfree(split.cycle));
  return out;
}

template <class S>
AcyclicityResult is_acyclic_fast(const EdgeFlux<S>& mu) {
  bool corollary = true;
  for (const auto& x : mu.v_values())
    if (x != S(0)) corollary = false;
  for (const auto& x : mu.h_values())
    if (x < S(0)) corollary = false;
  if (corollary) return {true, AcyclicityTest::Corollary};
  if (!find_directed_cycle(mu)) return {true, AcyclicityTest::General};
  return {false, AcyclicityTest::None};
}

#define LOOPFLOW_INSTANTIATE(S)                                                   \
  template std::optional<LatticeCurve> find_directed_cycle(const EdgeFlux<S>&);  \
  template bool is_subcurrent(const EdgeFlux<S>&, const EdgeFlux<S>&);           \
  template CycleSplit<S> cycle_acyclic_split(const EdgeFlux<S>&);                \
  template CurveSuperposition<S> acyclic_to_paths(const EdgeFlux<S>&);           \
  template CurveSuperposition<S> decompose_general(const EdgeFlux<S>&);          \
  template AcyclicityResult is_acyclic_fast(const EdgeFlux<S>&);

LOOPFLOW_INSTANTIATE(Rational)
LOOPFLOW_INSTANTIATE(double)

}  // namespace loopflow
