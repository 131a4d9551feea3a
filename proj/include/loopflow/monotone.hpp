#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "loopflow/pixel_set.hpp"

namespace loopflow {

/// Piece of a monotone decomposition: sign * field >= 0 everywhere.
template <class S>
struct MonotoneComponent {
  CellField<S> field;
  int sign = 1;
};

class NotNested : public Error {
 public:
  NotNested(std::size_t lower, std::size_t upper);
  std::size_t lower;
  std::size_t upper;
};

class NotNonNegative : public Error {
 public:
  NotNonNegative() : Error("field takes negative values") {}
};

class IdenticallyZero : public Error {
 public:
  IdenticallyZero() : Error("field is identically zero") {}
};

class NonTermination : public Error {
 public:
  explicit NonTermination(std::size_t cap);
  std::size_t iteration_cap;
};

/// Raised when an extraction step breaks exact variation additivity. This can
/// only signal a bug in the extraction code.
class AdditivityViolation : public Error {
 public:
  explicit AdditivityViolation(const std::string& what) : Error(what) {}
};

/// Every threshold between consecutive values of f and 0 splits the plane
/// into a bounded side and a side containing the exterior. f is monotone when
/// the bounded side is empty or 4-connected and the other side is
/// 8-connected, i.e. when the bounded side is empty or simple.
template <class S>
bool is_monotone(const CellField<S>& f);

/// w(x) = max { t : x in A_t }, or 0 when x lies in no A_t.
/// Levels must be strictly increasing with nested decreasing sets.
template <class S>
CellField<S> build_from_superlevels(const GridSpec& grid, const std::vector<std::pair<S, PixelSet>>& levels);

/// For f >= 0, f != 0: a layer g = a 1_C with C the largest 4-component of
/// {f > 0} and a the minimum of f on C. Then 0 <= g <= f, every superlevel set
/// of g is indecomposable and V(f) = V(f - g) + V(g).
template <class S>
CellField<S> extract_indecomposable(const CellField<S>& f);

/// Saturates every superlevel set of extract_indecomposable(f). The result
/// has simple superlevel sets and V(f) = V(f - h) + V(h); h may exceed f
/// inside filled holes.
template <class S>
CellField<S> extract_simple(const CellField<S>& f);

/// Upper bound on the number of extractions decompose_monotone performs on f.
template <class S>
std::size_t monotone_iteration_cap(const CellField<S>& f);

template <class S>
struct MonotoneDecomposition {
  std::vector<MonotoneComponent<S>> components;
  std::size_t iterations = 0;
  std::size_t iteration_cap = 0;
};

/// Splits f into monotone constant-sign components with f = sum of fields and
/// |Df| = sum |Df_i| edge by edge. Each step peels extract_simple off the
/// positive part of the remainder, or off the negative part once the
/// positive part is gone.
template <class S>
MonotoneDecomposition<S> decompose_monotone_with_stats(const CellField<S>& f);

template <class S>
std::vector<MonotoneComponent<S>> decompose_monotone(const CellField<S>& f);

}  // namespace loopflow
