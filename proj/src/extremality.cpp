#include "loopflow/extremality.hpp"

#include <string>

namespace loopflow {

NotNormalized::NotNormalized(double n) : Error("field does not have unit norm (norm " + std::to_string(n) + ")"), norm(n) {}

template <class S>
S fv_norm(const CellField<S>& f) {
  return variation(f);
}

template <class S>
S bv_norm(const CellField<S>& f) {
  S total = variation(f);
  for (const auto& x : f.values()) total += abs_value(x);
  return total;
}

namespace {

enum class Ball { FV, BV };

template <class S>
S norm_of(Ball ball, const CellField<S>& f) {
  return ball == Ball::FV ? fv_norm(f) : bv_norm(f);
}

/// Witness for f = a + b where ||f|| = ||a|| + ||b|| and a, b are nonzero and
/// not proportional.
template <class S>
ExtremeCertificate<S> split_into(Ball ball, SplitKind kind, const CellField<S>& a, const CellField<S>& b) {
  const S na = norm_of(ball, a);
  const S nb = norm_of(ball, b);
  ExtremeCertificate<S> cert;
  cert.verdict = Verdict::NotExtreme;
  cert.split = kind;
  cert.witness = ConvexSplit<S>{na, (S(1) / na) * a, (S(1) / nb) * b};
  return cert;
}

template <class S>
ExtremeCertificate<S> certify(Ball ball, const CellField<S>& f) {
  const S norm = norm_of(ball, f);
  if (!ScalarTraits<S>::near(norm, S(1))) throw NotNormalized(to_double(norm));
  const GridSpec& grid = f.grid();

  CellField<S> pos(grid), neg(grid);
  for (std::size_t k = 0; k < f.values().size(); ++k) {
    const S& x = f.values()[k];
    if (x > S(0)) pos.values()[k] = x;
    if (x < S(0)) neg.values()[k] = x;
  }
  if (!pos.is_zero() && !neg.is_zero()) return split_into(ball, SplitKind::Sign, pos, neg);

  const S sigma = pos.is_zero() ? S(-1) : S(1);
  const CellField<S> g = sigma * f;

  std::vector<S> positive;
  for (const S& t : level_values(g))
    if (t > S(0)) positive.push_back(t);
  if (positive.size() >= 2) {
    const S cut = positive[(positive.size() - 1) / 2];
    CellField<S> low(grid), high(grid);
    for (std::size_t k = 0; k < g.values().size(); ++k) {
      const S& x = g.values()[k];
      low.values()[k] = x < cut ? x : cut;
      high.values()[k] = x > cut ? S(x - cut) : S(0);
    }
    return split_into(ball, SplitKind::Level, sigma * low, sigma * high);
  }

  const S height = positive.front();
  const PixelSet e = positive_support(g);
  const auto parts = components(e, Connectivity::Four).components;
  if (parts.size() > 1) {
    const PixelSet& first = parts.front();
    return split_into(ball, SplitKind::Component, indicator(first, S(sigma * height)),
                      indicator(e - first, S(sigma * height)));
  }

  if (ball == Ball::FV) {
    PixelSet pockets(grid);
    for (const auto& c : bounded_complement_components(e, Connectivity::Four)) pockets |= c;
    if (!pockets.empty())
      return split_into(ball, SplitKind::Hole, indicator(e | pockets, S(sigma * height)),
                        indicator(pockets, S(-sigma * height)));
  }
  return {};
}

}  // namespace

template <class S>
ExtremeCertificate<S> certify_extreme_fv(const CellField<S>& f) {
  return certify(Ball::FV, f);
}

template <class S>
ExtremeCertificate<S> certify_extreme_bv(const CellField<S>& f) {
  return certify(Ball::BV, f);
}

template <class S>
ExtremeLoop<S> extreme_loop(const PixelSet& e) {
  if (!is_simple(e)) throw NotSimple();
  return {trace_boundary(e), S(1) / S(perimeter(e))};
}

#define LOOPFLOW_INSTANTIATE(S)                                                \
  template S fv_norm(const CellField<S>&);                                    \
  template S bv_norm(const CellField<S>&);                                    \
  template ExtremeCertificate<S> certify_extreme_fv(const CellField<S>&);     \
  template ExtremeCertificate<S> certify_extreme_bv(const CellField<S>&);     \
  template ExtremeLoop<S> extreme_loop<S>(const PixelSet&);

LOOPFLOW_INSTANTIATE(Rational)
LOOPFLOW_INSTANTIATE(double)

}  // namespace loopflow
