#pragma once

#include <cstddef>
#include <vector>

#include "loopflow/monotone.hpp"

namespace loopflow {

class NotMonotone : public Error {
 public:
  NotMonotone() : Error("component is not monotone with constant sign") {}
};

/// Slices a monotone component at its distinct levels. Each plateau
/// (t_{j-1}, t_j] of sign * field contributes the boundary of the simple set
/// {sign * field > t_{j-1}} with weight t_j - t_{j-1}; negative components
/// emit reversed loops. Boundaries through pinch nodes are split into simple
/// loops.
template <class S>
CurveSuperposition<S> loops_of_monotone(const MonotoneComponent<S>& m);

/// Potential, monotone components, then level slicing. Throws NotDivergenceFree.
template <class S>
CurveSuperposition<S> decompose_divfree(const EdgeFlux<S>& mu);

struct CurveFlags {
  bool closed = false;
  bool simple = false;
  bool in_grid = false;
};

/// Defects of a candidate decomposition eta of mu. All defects are
/// non-negative; maxima are taken over edges or nodes.
template <class S>
struct VerificationReport {
  S reconstruction_residual{0};  // max |superpose(eta) - mu|
  S tv_defect{0};                // |TV(mu) - sum w * length|
  S edge_additivity_defect{0};   // max |sum w |mu_gamma(e)| - |mu(e)||
  S divergence_additivity_defect{0};  // max |sum w |div mu_gamma|(n) - |div mu|(n)|
  std::vector<CurveFlags> curves;
  /// Magnitude used for float-mode tolerances.
  double scale = 1.0;

  bool defects_zero() const;
  bool all_curves_valid() const;
  /// Every defect vanishes and every curve is simple and stays in the grid.
  bool clean() const { return defects_zero() && all_curves_valid(); }
};

template <class S>
VerificationReport<S> verify_decomposition(const EdgeFlux<S>& mu, const CurveSuperposition<S>& eta);

}  // namespace loopflow
