#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "loopflow/scalar.hpp"

namespace loopflow {

/// Rectangular lattice of `width` x `height` unit cells. Cells are (i, j) with
/// 0 <= i < width, 0 <= j < height; nodes are (x, y) with 0 <= x <= width,
/// 0 <= y <= height. Everything outside the grid is zero.
struct GridSpec {
  int width = 1;
  int height = 1;

  GridSpec() = default;
  GridSpec(int w, int h);

  std::size_t cell_count() const { return std::size_t(width) * std::size_t(height); }
  std::size_t node_count() const { return std::size_t(width + 1) * std::size_t(height + 1); }
  std::size_t h_edge_count() const { return std::size_t(width) * std::size_t(height + 1); }
  std::size_t v_edge_count() const { return std::size_t(width + 1) * std::size_t(height); }

  bool contains_cell(int i, int j) const { return i >= 0 && j >= 0 && i < width && j < height; }
  bool contains_node(int x, int y) const { return x >= 0 && y >= 0 && x <= width && y <= height; }
  std::size_t cell_index(int i, int j) const { return std::size_t(j) * width + i; }
  std::size_t node_index(int x, int y) const { return std::size_t(y) * (width + 1) + x; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct Node {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Node&, const Node&) = default;
};

struct Cell {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// H(i, j) runs from node (i, j) to (i+1, j); V(i, j) from (i, j) to (i, j+1).
enum class EdgeKind : std::uint8_t { H, V };

struct EdgeId {
  EdgeKind kind = EdgeKind::H;
  int i = 0;
  int j = 0;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

/// The lattice edge joining two adjacent nodes, and +1/-1 depending on whether
/// `from -> to` follows the canonical orientation of that edge.
struct DirectedEdge {
  EdgeId edge;
  int orientation = 1;
};

DirectedEdge edge_between(Node from, Node to);

class GridMismatch : public Error {
 public:
  GridMismatch(const GridSpec& a, const GridSpec& b);
};

class OutOfGrid : public Error {
 public:
  explicit OutOfGrid(const std::string& what) : Error(what) {}
};

/// Signed flux on every lattice edge of a grid.
template <class S>
class EdgeFlux {
 public:
  explicit EdgeFlux(GridSpec grid)
      : grid_(grid), h_(grid.h_edge_count(), S(0)), v_(grid.v_edge_count(), S(0)) {}

  const GridSpec& grid() const { return grid_; }

  const S& h(int i, int j) const { return h_[std::size_t(j) * grid_.width + i]; }
  const S& v(int i, int j) const { return v_[std::size_t(j) * (grid_.width + 1) + i]; }
  S& h(int i, int j) { return h_[std::size_t(j) * grid_.width + i]; }
  S& v(int i, int j) { return v_[std::size_t(j) * (grid_.width + 1) + i]; }

  const S& at(const EdgeId& e) const { return e.kind == EdgeKind::H ? h(e.i, e.j) : v(e.i, e.j); }
  S& at(const EdgeId& e) { return e.kind == EdgeKind::H ? h(e.i, e.j) : v(e.i, e.j); }

  bool contains(const EdgeId& e) const;

  /// Every edge in canonical order: all H edges row by row, then all V edges.
  std::vector<EdgeId> edges() const;

  const std::vector<S>& h_values() const { return h_; }
  const std::vector<S>& v_values() const { return v_; }

  bool is_zero() const;
  /// Largest |flux|, as a double; used to scale float-mode tolerances.
  double magnitude() const;

  EdgeFlux& operator+=(const EdgeFlux& o);
  EdgeFlux& operator-=(const EdgeFlux& o);
  EdgeFlux& operator*=(const S& c);

  friend EdgeFlux operator+(EdgeFlux a, const EdgeFlux& b) { return a += b; }
  friend EdgeFlux operator-(EdgeFlux a, const EdgeFlux& b) { return a -= b; }
  friend EdgeFlux operator*(const S& c, EdgeFlux a) { return a *= c; }
  friend bool operator==(const EdgeFlux&, const EdgeFlux&) = default;

 private:
  GridSpec grid_;
  std::vector<S> h_;
  std::vector<S> v_;
};

/// Net outflow at each node.
template <class S>
class NodeDivergence {
 public:
  explicit NodeDivergence(GridSpec grid) : grid_(grid), d_(grid.node_count(), S(0)) {}

  const GridSpec& grid() const { return grid_; }
  const S& at(int x, int y) const { return d_[grid_.node_index(x, y)]; }
  S& at(int x, int y) { return d_[grid_.node_index(x, y)]; }
  const std::vector<S>& values() const { return d_; }

  friend bool operator==(const NodeDivergence&, const NodeDivergence&) = default;

 private:
  GridSpec grid_;
  std::vector<S> d_;
};

/// One value per cell; reads outside the grid return 0.
template <class S>
class CellField {
 public:
  explicit CellField(GridSpec grid) : grid_(grid), f_(grid.cell_count(), S(0)) {}

  const GridSpec& grid() const { return grid_; }

  S value(int i, int j) const { return grid_.contains_cell(i, j) ? f_[grid_.cell_index(i, j)] : S(0); }
  const S& at(int i, int j) const { return f_[grid_.cell_index(i, j)]; }
  S& at(int i, int j) { return f_[grid_.cell_index(i, j)]; }

  const std::vector<S>& values() const { return f_; }
  std::vector<S>& values() { return f_; }

  bool is_zero() const;
  double magnitude() const;

  CellField& operator+=(const CellField& o);
  CellField& operator-=(const CellField& o);
  CellField& operator*=(const S& c);

  friend CellField operator+(CellField a, const CellField& b) { return a += b; }
  friend CellField operator-(CellField a, const CellField& b) { return a -= b; }
  friend CellField operator*(const S& c, CellField a) { return a *= c; }
  friend CellField operator-(CellField a) { return a *= S(-1); }
  friend bool operator==(const CellField&, const CellField&) = default;

 private:
  GridSpec grid_;
  std::vector<S> f_;
};

class InvalidCurve : public Error {
 public:
  explicit InvalidCurve(const std::string& what) : Error(what) {}
};

/// Node path with unit steps. A closed curve repeats its first node at the end.
class LatticeCurve {
 public:
  LatticeCurve(std::vector<Node> nodes, bool closed);

  const std::vector<Node>& nodes() const { return nodes_; }
  bool closed() const { return closed_; }
  std::size_t steps() const { return nodes_.size() - 1; }

  /// Injective on [0, 1): no node repeats except the closing one.
  bool is_simple() const;

  LatticeCurve reversed() const;

  friend bool operator==(const LatticeCurve&, const LatticeCurve&) = default;

 private:
  std::vector<Node> nodes_;
  bool closed_;
};

template <class S>
struct WeightedCurve {
  S weight;
  LatticeCurve curve;
};

/// Finite superposition of curves with positive weights.
template <class S>
class CurveSuperposition {
 public:
  CurveSuperposition() = default;

  /// Throws Error if `weight` is not strictly positive.
  void add(S weight, LatticeCurve curve);
  void append(const CurveSuperposition& other);

  const std::vector<WeightedCurve<S>>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

 private:
  std::vector<WeightedCurve<S>> items_;
};

class NotDivergenceFree : public Error {
 public:
  NotDivergenceFree(Node node, double residual);
  Node node;
  double residual;
};

class InconsistentCirculation : public Error {
 public:
  InconsistentCirculation(Cell a, Cell b, double discrepancy);
  Cell first;
  Cell second;
  double discrepancy;
};

template <class S>
NodeDivergence<S> divergence(const EdgeFlux<S>& mu);

template <class S>
S total_variation(const EdgeFlux<S>& mu);

/// Rotated finite difference: H(i,j) = f(i,j-1) - f(i,j), V(i,j) = f(i,j) - f(i-1,j).
/// The indicator of a cell maps to its clockwise boundary loop.
template <class S>
EdgeFlux<S> perp_gradient(const CellField<S>& f);

/// Inverse of perp_gradient on divergence-free fluxes, normalised to vanish
/// outside the grid.
template <class S>
CellField<S> integrate_potential(const EdgeFlux<S>& mu);

/// Throws NotDivergenceFree at the first node (row-major) with nonzero net outflow.
template <class S>
void require_divergence_free(const EdgeFlux<S>& mu);

template <class S>
bool is_divergence_free(const EdgeFlux<S>& mu);

/// Throws OutOfGrid if the curve leaves `grid`.
template <class S>
EdgeFlux<S> curve_measure(const GridSpec& grid, const LatticeCurve& gamma);

std::int64_t curve_length(const LatticeCurve& gamma);

template <class S>
EdgeFlux<S> superpose(const GridSpec& grid, const CurveSuperposition<S>& eta);

/// Cuts a closed walk at repeated nodes into simple closed loops whose
/// measures add up to the measure of the walk.
std::vector<LatticeCurve> split_into_simple_loops(const LatticeCurve& gamma);

}  // namespace loopflow
