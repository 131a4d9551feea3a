#include "loopflow/grid.hpp"

#include <deque>
#include <map>
#include <sstream>

namespace loopflow {

GridSpec::GridSpec(int w, int h) : width(w), height(h) {
  if (w < 1 || h < 1) throw Error("grid dimensions must be positive");
}

GridMismatch::GridMismatch(const GridSpec& a, const GridSpec& b)
    : Error("grid mismatch: " + std::to_string(a.width) + "x" + std::to_string(a.height) + " vs " +
            std::to_string(b.width) + "x" + std::to_string(b.height)) {}

DirectedEdge edge_between(Node from, Node to) {
  const int dx = to.x - from.x, dy = to.y - from.y;
  if (dy == 0 && dx == 1) return {{EdgeKind::H, from.x, from.y}, 1};
  if (dy == 0 && dx == -1) return {{EdgeKind::H, to.x, to.y}, -1};
  if (dx == 0 && dy == 1) return {{EdgeKind::V, from.x, from.y}, 1};
  if (dx == 0 && dy == -1) return {{EdgeKind::V, to.x, to.y}, -1};
  throw InvalidCurve("nodes are not lattice neighbours");
}

// ---------------------------------------------------------------------------
// EdgeFlux

template <class S>
bool EdgeFlux<S>::contains(const EdgeId& e) const {
  if (e.kind == EdgeKind::H) return e.i >= 0 && e.j >= 0 && e.i < grid_.width && e.j <= grid_.height;
  return e.i >= 0 && e.j >= 0 && e.i <= grid_.width && e.j < grid_.height;
}

template <class S>
std::vector<EdgeId> EdgeFlux<S>::edges() const {
  std::vector<EdgeId> out;
  out.reserve(h_.size() + v_.size());
  for (int j = 0; j <= grid_.height; ++j)
    for (int i = 0; i < grid_.width; ++i) out.push_back({EdgeKind::H, i, j});
  for (int j = 0; j < grid_.height; ++j)
    for (int i = 0; i <= grid_.width; ++i) out.push_back({EdgeKind::V, i, j});
  return out;
}

template <class S>
bool EdgeFlux<S>::is_zero() const {
  for (const auto& x : h_)
    if (x != S(0)) return false;
  for (const auto& x : v_)
    if (x != S(0)) return false;
  return true;
}

template <class S>
double EdgeFlux<S>::magnitude() const {
  double m = 0;
  for (const auto& x : h_) m = std::max(m, to_double(abs_value(x)));
  for (const auto& x : v_) m = std::max(m, to_double(abs_value(x)));
  return m;
}

template <class S>
EdgeFlux<S>& EdgeFlux<S>::operator+=(const EdgeFlux& o) {
  if (!(grid_ == o.grid_)) throw GridMismatch(grid_, o.grid_);
  for (std::size_t k = 0; k < h_.size(); ++k) h_[k] += o.h_[k];
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
  return *this;
}

template <class S>
EdgeFlux<S>& EdgeFlux<S>::operator-=(const EdgeFlux& o) {
  if (!(grid_ == o.grid_)) throw GridMismatch(grid_, o.grid_);
  for (std::size_t k = 0; k < h_.size(); ++k) h_[k] -= o.h_[k];
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
  return *this;
}

template <class S>
EdgeFlux<S>& EdgeFlux<S>::operator*=(const S& c) {
  for (auto& x : h_) x *= c;
  for (auto& x : v_) x *= c;
  return *this;
}

// ---------------------------------------------------------------------------
// CellField

template <class S>
bool CellField<S>::is_zero() const {
  for (const auto& x : f_)
    if (x != S(0)) return false;
  return true;
}

template <class S>
double CellField<S>::magnitude() const {
  double m = 0;
  for (const auto& x : f_) m = std::max(m, to_double(abs_value(x)));
  return m;
}

template <class S>
CellField<S>& CellField<S>::operator+=(const CellField& o) {
  if (!(grid_ == o.grid_)) throw GridMismatch(grid_, o.grid_);
  for (std::size_t k = 0; k < f_.size(); ++k) f_[k] += o.f_[k];
  return *this;
}

template <class S>
CellField<S>& CellField<S>::operator-=(const CellField& o) {
  if (!(grid_ == o.grid_)) throw GridMismatch(grid_, o.grid_);
  for (std::size_t k = 0; k < f_.size(); ++k) f_[k] -= o.f_[k];
  return *this;
}

template <class S>
CellField<S>& CellField<S>::operator*=(const S& c) {
  for (auto& x : f_) x *= c;
  return *this;
}

// ---------------------------------------------------------------------------
// Curves

LatticeCurve::LatticeCurve(std::vector<Node> nodes, bool closed) : nodes_(std::move(nodes)), closed_(closed) {
  if (nodes_.size() < 2) throw InvalidCurve("a curve needs at least one step");
  for (std::size_t k = 1; k < nodes_.size(); ++k) {
    const int d = std::abs(nodes_[k].x - nodes_[k - 1].x) + std::abs(nodes_[k].y - nodes_[k - 1].y);
    if (d != 1) throw InvalidCurve("consecutive nodes must be lattice neighbours");
  }
  if (closed_ && nodes_.front() != nodes_.back())
    throw InvalidCurve("closed curve must end at its first node");
}

bool LatticeCurve::is_simple() const {
  std::vector<Node> seen(nodes_.begin(), closed_ ? nodes_.end() - 1 : nodes_.end());
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

LatticeCurve LatticeCurve::reversed() const {
  return LatticeCurve(std::vector<Node>(nodes_.rbegin(), nodes_.rend()), closed_);
}

template <class S>
void CurveSuperposition<S>::add(S weight, LatticeCurve curve) {
  if (!(weight > S(0))) throw Error("superposition weights must be positive");
  items_.push_back({std::move(weight), std::move(curve)});
}

template <class S>
void CurveSuperposition<S>::append(const CurveSuperposition& other) {
  items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

std::int64_t curve_length(const LatticeCurve& gamma) { return static_cast<std::int64_t>(gamma.steps()); }

std::vector<LatticeCurve> split_into_simple_loops(const LatticeCurve& gamma) {
  if (!gamma.closed()) throw InvalidCurve("only closed curves split into loops");
  std::vector<LatticeCurve> loops;
  std::vector<Node> stack;
  std::map<Node, std::size_t> position;
  const auto& nodes = gamma.nodes();
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const Node n = nodes[k];
    auto it = position.find(n);
    if (it == position.end()) {
      position[n] = stack.size();
      stack.push_back(n);
      continue;
    }
    const std::size_t start = it->second;
    std::vector<Node> loop(stack.begin() + std::ptrdiff_t(start), stack.end());
    loop.push_back(n);
    for (std::size_t m = start + 1; m < stack.size(); ++m) position.erase(stack[m]);
    stack.resize(start + 1);
    loops.emplace_back(std::move(loop), true);
  }
  if (stack.size() > 1) {
    stack.push_back(stack.front());
    loops.emplace_back(std::move(stack), true);
  }
  return loops;
}

NotDivergenceFree::NotDivergenceFree(Node n, double r)
    : Error("flux is not divergence-free at node (" + std::to_string(n.x) + "," + std::to_string(n.y) +
            "), residual " + std::to_string(r)),
      node(n),
      residual(r) {}

InconsistentCirculation::InconsistentCirculation(Cell a, Cell b, double d)
    : Error("potential propagation disagrees between cells (" + std::to_string(a.i) + "," + std::to_string(a.j) +
            ") and (" + std::to_string(b.i) + "," + std::to_string(b.j) + ") by " + std::to_string(d)),
      first(a),
      second(b),
      discrepancy(d) {}

// ---------------------------------------------------------------------------
// Operators

template <class S>
NodeDivergence<S> divergence(const EdgeFlux<S>& mu) {
  const GridSpec& g = mu.grid();
  NodeDivergence<S> d(g);
  for (int y = 0; y <= g.height; ++y)
    for (int x = 0; x <= g.width; ++x) {
      S out(0);
      if (x < g.width) out += mu.h(x, y);
      if (y < g.height) out += mu.v(x, y);
      if (x > 0) out -= mu.h(x - 1, y);
      if (y > 0) out -= mu.v(x, y - 1);
      d.at(x, y) = out;
    }
  return d;
}

template <class S>
S total_variation(const EdgeFlux<S>& mu) {
  S sum(0);
  for (const auto& x : mu.h_values()) sum += abs_value(x);
  for (const auto& x : mu.v_values()) sum += abs_value(x);
  return sum;
}

template <class S>
EdgeFlux<S> perp_gradient(const CellField<S>& f) {
  const GridSpec& g = f.grid();
  EdgeFlux<S> mu(g);
  for (int j = 0; j <= g.height; ++j)
    for (int i = 0; i < g.width; ++i) mu.h(i, j) = f.value(i, j - 1) - f.value(i, j);
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i <= g.width; ++i) mu.v(i, j) = f.value(i, j) - f.value(i - 1, j);
  return mu;
}

template <class S>
bool is_divergence_free(const EdgeFlux<S>& mu) {
  const double scale = mu.magnitude();
  const NodeDivergence<S> div = divergence(mu);
  for (const auto& d : div.values())
    if (!ScalarTraits<S>::is_zero(d, scale)) return false;
  return true;
}

template <class S>
void require_divergence_free(const EdgeFlux<S>& mu) {
  const GridSpec& g = mu.grid();
  const auto d = divergence(mu);
  const double scale = mu.magnitude();
  for (int y = 0; y <= g.height; ++y)
    for (int x = 0; x <= g.width; ++x)
      if (!ScalarTraits<S>::is_zero(d.at(x, y), scale)) throw NotDivergenceFree({x, y}, to_double(d.at(x, y)));
}

template <class S>
CellField<S> integrate_potential(const EdgeFlux<S>& mu) {
  require_divergence_free(mu);
  const GridSpec& g = mu.grid();
  CellField<S> f(g);
  std::vector<char> known(g.cell_count(), 0);
  std::deque<Cell> queue;

  auto assign = [&](int i, int j, S value) {
    const auto k = g.cell_index(i, j);
    if (known[k]) return;
    known[k] = 1;
    f.at(i, j) = std::move(value);
    queue.push_back({i, j});
  };

  // The exterior is one region with potential 0; seed every border cell from it.
  for (int i = 0; i < g.width; ++i) {
    assign(i, 0, -mu.h(i, 0));
    assign(i, g.height - 1, mu.h(i, g.height));
  }
  for (int j = 0; j < g.height; ++j) {
    assign(0, j, mu.v(0, j));
    assign(g.width - 1, j, -mu.v(g.width, j));
  }
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    const S& fc = f.at(c.i, c.j);
    if (c.j + 1 < g.height) assign(c.i, c.j + 1, fc - mu.h(c.i, c.j + 1));
    if (c.j > 0) assign(c.i, c.j - 1, fc + mu.h(c.i, c.j));
    if (c.i + 1 < g.width) assign(c.i + 1, c.j, fc + mu.v(c.i + 1, c.j));
    if (c.i > 0) assign(c.i - 1, c.j, fc - mu.v(c.i, c.j));
  }

  // Every adjacency, tree or not, must reproduce the flux.
  const double scale = std::max(1.0, mu.magnitude());
  const auto check = [&](const S& expected, const S& got, Cell a, Cell b) {
    if (!ScalarTraits<S>::near(expected, got, scale))
      throw InconsistentCirculation(a, b, to_double(abs_value(expected - got)));
  };
  for (int j = 0; j <= g.height; ++j)
    for (int i = 0; i < g.width; ++i) check(mu.h(i, j), f.value(i, j - 1) - f.value(i, j), {i, j - 1}, {i, j});
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i <= g.width; ++i) check(mu.v(i, j), f.value(i, j) - f.value(i - 1, j), {i - 1, j}, {i, j});
  return f;
}

template <class S>
EdgeFlux<S> curve_measure(const GridSpec& grid, const LatticeCurve& gamma) {
  EdgeFlux<S> mu(grid);
  const auto& nodes = gamma.nodes();
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    const DirectedEdge de = edge_between(nodes[k - 1], nodes[k]);
    if (!mu.contains(de.edge)) throw OutOfGrid("curve leaves the grid");
    mu.at(de.edge) += S(de.orientation);
  }
  return mu;
}

template <class S>
EdgeFlux<S> superpose(const GridSpec& grid, const CurveSuperposition<S>& eta) {
  EdgeFlux<S> mu(grid);
  for (const auto& item : eta.items()) {
    const auto& nodes = item.curve.nodes();
    for (std::size_t k = 1; k < nodes.size(); ++k) {
      const DirectedEdge de = edge_between(nodes[k - 1], nodes[k]);
      if (!mu.contains(de.edge)) throw OutOfGrid("curve leaves the grid");
      if (de.orientation > 0)
        mu.at(de.edge) += item.weight;
      else
        mu.at(de.edge) -= item.weight;
    }
  }
  return mu;
}

#define LOOPFLOW_INSTANTIATE(S)                                                       \
  template class EdgeFlux<S>;                                                         \
  template class CellField<S>;                                                        \
  template class CurveSuperposition<S>;                                               \
  template NodeDivergence<S> divergence(const EdgeFlux<S>&);                          \
  template S total_variation(const EdgeFlux<S>&);                                     \
  template EdgeFlux<S> perp_gradient(const CellField<S>&);                            \
  template CellField<S> integrate_potential(const EdgeFlux<S>&);                      \
  template void require_divergence_free(const EdgeFlux<S>&);                          \
  template bool is_divergence_free(const EdgeFlux<S>&);                               \
  template EdgeFlux<S> curve_measure<S>(const GridSpec&, const LatticeCurve&);        \
  template EdgeFlux<S> superpose(const GridSpec&, const CurveSuperposition<S>&);

LOOPFLOW_INSTANTIATE(Rational)
LOOPFLOW_INSTANTIATE(double)

}  // namespace loopflow
