#pragma once

#include <optional>

#include "loopflow/pixel_set.hpp"

namespace loopflow {

enum class Verdict { Extreme, NotExtreme };

/// Which decomposition produced a NotExtreme witness.
enum class SplitKind { None, Sign, Level, Component, Hole };

/// f = lambda * phi + (1 - lambda) * psi with 0 < lambda < 1, both parts of
/// unit norm and different from f.
template <class S>
struct ConvexSplit {
  S lambda;
  CellField<S> phi;
  CellField<S> psi;
};

template <class S>
struct ExtremeCertificate {
  Verdict verdict = Verdict::Extreme;
  SplitKind split = SplitKind::None;
  std::optional<ConvexSplit<S>> witness;
};

class NotNormalized : public Error {
 public:
  explicit NotNormalized(double norm);
  double norm;
};

/// variation(f)
template <class S>
S fv_norm(const CellField<S>& f);

/// sum |f| + variation(f)
template <class S>
S bv_norm(const CellField<S>& f);

/// Extreme iff f = +-1_E / P(E) where E and its complement are both
/// 4-connected. Otherwise the first applicable split is returned, tried in
/// the order sign, level, component, hole. The hole split removes the bounded
/// 4-components of the complement, which covers true holes as well as cells
/// cut off at a pinch corner. Throws NotNormalized.
template <class S>
ExtremeCertificate<S> certify_extreme_fv(const CellField<S>& f);

/// Extreme iff f = +-1_E / ||1_E||_BV with E 4-connected. Throws NotNormalized.
template <class S>
ExtremeCertificate<S> certify_extreme_bv(const CellField<S>& f);

template <class S>
struct ExtremeLoop {
  LatticeCurve curve;
  S weight;
};

/// Boundary loop of a simple set with weight 1 / P(E). Throws NotSimple.
template <class S>
ExtremeLoop<S> extreme_loop(const PixelSet& e);

}  // namespace loopflow
