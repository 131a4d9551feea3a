#pragma once

#include <optional>
#include <utility>

#include "loopflow/coarea_loops.hpp"

namespace loopflow {

class NotAcyclic : public Error {
 public:
  explicit NotAcyclic(LatticeCurve cycle);
  /// A directed cycle of the sign-directed support.
  LatticeCurve cycle;
};

/// The support digraph of mu has an arc along every edge with nonzero flux,
/// pointing the way the flux flows. Returns a closed directed cycle in it if
/// there is one. Search order is row-major over start nodes, then H before V.
template <class S>
std::optional<LatticeCurve> find_directed_cycle(const EdgeFlux<S>& mu);

/// ||mu|| = ||mu - sigma|| + ||sigma||, i.e. sigma = g mu edgewise with g in [0, 1].
/// Throws GridMismatch.
template <class S>
bool is_subcurrent(const EdgeFlux<S>& sigma, const EdgeFlux<S>& mu);

template <class S>
struct CycleSplit {
  EdgeFlux<S> cycle;
  EdgeFlux<S> acyclic;
};

/// Peels directed support cycles off mu, each at its bottleneck flux, until
/// the remainder has none.
template <class S>
CycleSplit<S> cycle_acyclic_split(const EdgeFlux<S>& mu);

/// Strips simple source-to-sink paths. Each walk starts at the node of largest
/// divergence (lowest index on ties) and follows the largest remaining flux
/// (H before V, then by index on ties). Throws NotAcyclic.
template <class S>
CurveSuperposition<S> acyclic_to_paths(const EdgeFlux<S>& mu);

/// Paths of the acyclic part followed by the loops of the cycle part.
template <class S>
CurveSuperposition<S> decompose_general(const EdgeFlux<S>& mu);

enum class AcyclicityTest { None, Corollary, General };

struct AcyclicityResult {
  bool acyclic = false;
  /// Which test established acyclicity; None when the flux is not acyclic.
  AcyclicityTest fired = AcyclicityTest::None;
};

/// Cheap sufficient condition first (no vertical flux, horizontal flux never
/// negative), then the full cycle search.
template <class S>
AcyclicityResult is_acyclic_fast(const EdgeFlux<S>& mu);

}  // namespace loopflow
