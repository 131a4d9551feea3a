#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "loopflow/coarea_loops.hpp"

namespace loopflow {

struct Point {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Segment {
  Point from;
  Point to;
  double length() const;
};

/// Polyline with real coordinates. A closed curve whose last point differs
/// from its first gets an implicit closing segment.
class PolyCurve {
 public:
  /// Throws InvalidCurve unless there are >= 2 points, all finite, with
  /// consecutive points distinct.
  PolyCurve(std::vector<Point> points, bool closed);

  const std::vector<Point>& points() const { return points_; }
  bool closed() const { return closed_; }
  std::vector<Segment> segments() const;
  double length() const;

 private:
  std::vector<Point> points_;
  bool closed_;
};

struct WeightedPolyCurve {
  double weight;
  PolyCurve curve;
};

/// Finite superposition nu = sum w_k mu_{gamma_k} with cone constant c.
struct RigidityInput {
  std::vector<WeightedPolyCurve> items;
  double c = 1.0;

  /// Throws Error unless c > 0 and every weight is positive and finite.
  void validate() const;
};

/// T = { y : 0 < y_2 < h, |y_1| < r + (h - y_2) / c }
struct ConeRegion {
  double r = 1.0;
  double h = 1.0;
  double c = 1.0;
};

bool cone_region_contains(const ConeRegion& t, const Point& p);

enum class ViolationKind {
  LowerHalfMass,      // a segment puts mass on {y <= 0}
  NonzeroDivergence,  // curve endpoints do not cancel at `point`
  ConeCondition,      // a segment has u_2 < c |u|
  PositiveMass,       // hypotheses hold yet the mass is positive
};

struct Violation {
  ViolationKind kind = ViolationKind::ConeCondition;
  std::size_t item = 0;
  std::size_t segment = 0;
  Point point;
  /// u_2 / |u| for ConeCondition, net endpoint weight for NonzeroDivergence,
  /// total mass for PositiveMass.
  double value = 0;
};

enum class RigidityOutcome { Zero, HypothesisFails };

struct RigidityVerdict {
  RigidityOutcome outcome = RigidityOutcome::Zero;
  std::optional<Violation> violation;
};

std::string_view to_string(ViolationKind kind);

/// Tests, in this order: (i) no segment has a piece of positive length in
/// {y <= 0}; (ii) curve endpoints cancel, weight by weight, at every point;
/// (iii) every segment direction u has u_2 >= c |u|. Within each test items
/// are scanned in order, then segments. Reports the first failure.
RigidityVerdict check_hypotheses(const RigidityInput& input);

/// check_hypotheses, and if all three hold, confirms that the measure
/// vanishes. Every surviving curve climbs by at least c times its length
/// while the endpoint cancellation forces the weighted climbs to sum to zero,
/// so a PositiveMass verdict means the input broke an invariant that
/// check_hypotheses should have caught.
RigidityVerdict rigidity_theorem_check(const RigidityInput& input);

/// (y_1 - y_0) / c - |x_1 - x_0| for the endpoints of a curve. Non-negative
/// whenever every segment meets the cone condition.
double cone_inequality_slack(const PolyCurve& curve, double c);

class PreconditionFailed : public Error {
 public:
  explicit PreconditionFailed(const std::string& what) : Error(what) {}
};

/// True iff every curve crosses every edge in the direction of sign(mu(e)).
/// Requires eta to reconstruct mu with no total-variation defect; throws
/// PreconditionFailed otherwise.
template <class S>
bool orientation_check(const EdgeFlux<S>& mu, const CurveSuperposition<S>& eta);

}  // namespace loopflow
