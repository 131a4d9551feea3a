#include "loopflow/rigidity.hpp"

#include <cmath>
#include <map>

namespace loopflow {

namespace {

constexpr double kTolerance = 1e-9;

}  // namespace

double Segment::length() const { return std::hypot(to.x - from.x, to.y - from.y); }

PolyCurve::PolyCurve(std::vector<Point> points, bool closed) : points_(std::move(points)), closed_(closed) {
  if (points_.size() < 2) throw InvalidCurve("polyline needs at least two points");
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!std::isfinite(points_[k].x) || !std::isfinite(points_[k].y)) throw InvalidCurve("non-finite coordinate");
    if (k > 0 && points_[k] == points_[k - 1]) throw InvalidCurve("consecutive points coincide");
  }
}

std::vector<Segment> PolyCurve::segments() const {
  std::vector<Segment> out;
  for (std::size_t k = 0; k + 1 < points_.size(); ++k) out.push_back({points_[k], points_[k + 1]});
  if (closed_ && !(points_.back() == points_.front())) out.push_back({points_.back(), points_.front()});
  return out;
}

double PolyCurve::length() const {
  double total = 0;
  for (const Segment& s : segments()) total += s.length();
  return total;
}

void RigidityInput::validate() const {
  if (!(c > 0) || !std::isfinite(c)) throw Error("cone constant c must be positive");
  for (const auto& item : items)
    if (!(item.weight > 0) || !std::isfinite(item.weight)) throw Error("curve weights must be positive");
}

bool cone_region_contains(const ConeRegion& t, const Point& p) {
  return p.y > 0 && p.y < t.h && std::fabs(p.x) < t.r + (t.h - p.y) / t.c;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::LowerHalfMass: return "LowerHalfMass";
    case ViolationKind::NonzeroDivergence: return "NonzeroDivergence";
    case ViolationKind::ConeCondition: return "ConeCondition";
    case ViolationKind::PositiveMass: return "PositiveMass";
  }
  return "?";
}

namespace {

RigidityVerdict fail(Violation v) { return {RigidityOutcome::HypothesisFails, v}; }

/// A segment meets {y <= 0} in positive length iff it dips below the axis or
/// runs along it.
bool has_lower_half_mass(const Segment& s) {
  return std::min(s.from.y, s.to.y) < 0 || (s.from.y == 0 && s.to.y == 0);
}

}  // namespace

RigidityVerdict check_hypotheses(const RigidityInput& input) {
  input.validate();
  const auto& items = input.items;

  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto segs = items[k].curve.segments();
    for (std::size_t s = 0; s < segs.size(); ++s)
      if (has_lower_half_mass(segs[s]))
        return fail({ViolationKind::LowerHalfMass, k, s, segs[s].from, segs[s].length()});
  }

  // Endpoint bookkeeping: an open curve from a to b has divergence delta_a - delta_b.
  std::map<std::pair<double, double>, double> net;
  std::vector<std::pair<Point, std::size_t>> order;
  double total_weight = 0;
  auto deposit = [&](const Point& p, double w, std::size_t item) {
    auto [it, fresh] = net.try_emplace({p.x, p.y}, 0.0);
    if (fresh) order.emplace_back(p, item);
    it->second += w;
  };
  for (std::size_t k = 0; k < items.size(); ++k) {
    const PolyCurve& curve = items[k].curve;
    total_weight += items[k].weight;
    if (curve.closed() || curve.points().front() == curve.points().back()) continue;
    deposit(curve.points().front(), items[k].weight, k);
    deposit(curve.points().back(), -items[k].weight, k);
  }
  for (const auto& [p, item] : order) {
    const double d = net.at({p.x, p.y});
    if (std::fabs(d) > kTolerance * std::max(1.0, total_weight))
      return fail({ViolationKind::NonzeroDivergence, item, 0, p, d});
  }

  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto segs = items[k].curve.segments();
    for (std::size_t s = 0; s < segs.size(); ++s) {
      const double len = segs[s].length();
      const double rise = segs[s].to.y - segs[s].from.y;
      if (rise < input.c * len - 1e-12 * len)
        return fail({ViolationKind::ConeCondition, k, s, segs[s].from, rise / len});
    }
  }
  return {};
}

RigidityVerdict rigidity_theorem_check(const RigidityInput& input) {
  RigidityVerdict v = check_hypotheses(input);
  if (v.outcome == RigidityOutcome::HypothesisFails) return v;

  double mass = 0;
  for (const auto& item : input.items) mass += item.weight * item.curve.length();
  if (mass > 0) {
    const Segment first = input.items.front().curve.segments().front();
    return fail({ViolationKind::PositiveMass, 0, 0, first.from, mass});
  }
  return v;
}

double cone_inequality_slack(const PolyCurve& curve, double c) {
  const Point& a = curve.points().front();
  const Point& b = curve.points().back();
  return (b.y - a.y) / c - std::fabs(b.x - a.x);
}

template <class S>
bool orientation_check(const EdgeFlux<S>& mu, const CurveSuperposition<S>& eta) {
  const auto report = verify_decomposition(mu, eta);
  if (!ScalarTraits<S>::is_zero(report.reconstruction_residual, report.scale) ||
      !ScalarTraits<S>::is_zero(report.tv_defect, report.scale))
    throw PreconditionFailed("decomposition does not reconstruct the flux without cancellation");

  for (const auto& item : eta.items()) {
    const auto& nodes = item.curve.nodes();
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      const DirectedEdge de = edge_between(nodes[k], nodes[k + 1]);
      if (!(S(de.orientation) * mu.at(de.edge) > S(0))) return false;
    }
  }
  return true;
}

template bool orientation_check(const EdgeFlux<Rational>&, const CurveSuperposition<Rational>&);
template bool orientation_check(const EdgeFlux<double>&, const CurveSuperposition<double>&);

}  // namespace loopflow
