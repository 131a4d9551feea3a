#pragma once

#include <algorithm>

#include <cstdint>
#include <vector>

#include "loopflow/grid.hpp"

namespace loopflow {

/// Subset of the cells of a grid. The exterior of the grid never belongs to a
/// PixelSet; it is treated as a single unbounded complement region.
class PixelSet {
 public:
  explicit PixelSet(GridSpec grid) : grid_(grid), bits_(grid.cell_count(), 0) {}
  PixelSet(GridSpec grid, const std::vector<Cell>& cells);

  static PixelSet full(GridSpec grid);
  /// Bit k of `mask` is cell (k % width, k / width).
  static PixelSet from_mask(GridSpec grid, std::uint64_t mask);

  const GridSpec& grid() const { return grid_; }

  bool contains(int i, int j) const { return grid_.contains_cell(i, j) && bits_[grid_.cell_index(i, j)]; }
  bool contains(Cell c) const { return contains(c.i, c.j); }
  void insert(Cell c) { bits_[grid_.cell_index(c.i, c.j)] = 1; }
  void erase(Cell c) { bits_[grid_.cell_index(c.i, c.j)] = 0; }

  std::size_t size() const;
  bool empty() const { return std::none_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b != 0; }); }
  /// Member cells in lexicographic (i, j) order.
  std::vector<Cell> cells() const;

  PixelSet complement() const;
  PixelSet& operator|=(const PixelSet& o);
  PixelSet& operator&=(const PixelSet& o);
  PixelSet& operator-=(const PixelSet& o);
  friend PixelSet operator|(PixelSet a, const PixelSet& b) { return a |= b; }
  friend PixelSet operator&(PixelSet a, const PixelSet& b) { return a &= b; }
  friend PixelSet operator-(PixelSet a, const PixelSet& b) { return a -= b; }
  bool is_subset_of(const PixelSet& o) const;
  /// True if some member cell lies on the border of the grid.
  bool touches_border() const;

  friend bool operator==(const PixelSet&, const PixelSet&) = default;

  const std::vector<std::uint8_t>& bits() const { return bits_; }

 private:
  GridSpec grid_;
  std::vector<std::uint8_t> bits_;
};

enum class Connectivity { Four, Eight };

struct ComponentDecomposition {
  /// Pairwise disjoint; ordered by first member in row-major scan order.
  std::vector<PixelSet> components;
};

class NotIndecomposable : public Error {
 public:
  NotIndecomposable() : Error("set is not indecomposable (not 4-connected)") {}
};

class NotSimple : public Error {
 public:
  NotSimple() : Error("set is not simple") {}
};

/// Number of unit edges separating a member cell from a non-member (the
/// exterior included).
std::int64_t perimeter(const PixelSet& e);

ComponentDecomposition components(const PixelSet& e, Connectivity conn);

/// Components of the complement of `e` with the exterior region attached:
/// only the bounded ones (those not touching the exterior) are returned.
std::vector<PixelSet> bounded_complement_components(const PixelSet& e, Connectivity conn);

/// Component with the most cells; ties go to the one holding the
/// lexicographically smallest cell. Empty input gives an empty set.
PixelSet largest_component(const PixelSet& e, Connectivity conn);

/// Empty, or exactly one 4-component.
bool is_indecomposable(const PixelSet& e);

/// 8-components of the complement that do not reach the exterior.
/// Throws NotIndecomposable.
std::vector<PixelSet> holes(const PixelSet& e);

/// `e` together with all of its holes. Throws NotIndecomposable.
PixelSet saturate(const PixelSet& e);

/// Nonempty, 4-connected, with 8-connected complement (exterior included).
bool is_simple(const PixelSet& e);

/// Nodes where two member cells meet only diagonally, or two non-member cells
/// do. A simple set's boundary loop passes such a node twice.
std::vector<Node> pinch_nodes(const PixelSet& e);

/// Closed loop along the boundary of a simple set, oriented clockwise so that
/// its measure equals perp_gradient of the indicator. The loop starts at the
/// lower-left corner of the lexicographically smallest member cell, turns
/// right whenever it can, and therefore visits a pinch node twice.
/// Throws NotSimple.
LatticeCurve trace_boundary(const PixelSet& e);

/// Interior of a closed lattice loop (cells with odd crossing parity).
PixelSet loop_interior(const GridSpec& grid, const LatticeCurve& loop);

template <class S>
CellField<S> indicator(const PixelSet& e, S value = S(1));

/// {f > t}
template <class S>
PixelSet superlevel_set(const CellField<S>& f, const S& t);

/// {f > 0}
template <class S>
PixelSet positive_support(const CellField<S>& f);

/// Sum of |f(x) - f(y)| over edge-adjacent cells, the exterior counting as 0.
template <class S>
S variation(const CellField<S>& f);

/// Distinct values of f together with 0, ascending.
template <class S>
std::vector<S> level_values(const CellField<S>& f);

/// Sum over consecutive levels t_k < t_{k+1} of (t_{k+1} - t_k) P({f > t_k}).
/// Levels below 0 contribute through the perimeter of the complement.
template <class S>
S coarea_sum(const CellField<S>& f);

}  // namespace loopflow
