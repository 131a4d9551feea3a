#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace loopflow {

/// Exact scalar used by default. All identities of the library hold with
/// equality in this mode.
using Rational = boost::rational<std::int64_t>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScalarMode { Rational, Float };

std::string_view to_string(ScalarMode mode);

/// Parses "rational" or "float"; throws Error on anything else.
ScalarMode parse_scalar_mode(std::string_view text);

/// Arithmetic policy for the two supported scalar types.
///
/// Float mode compares with a relative tolerance of 1e-9; `scale` is the
/// magnitude of the data the value was computed from.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr ScalarMode mode = ScalarMode::Rational;

  static Rational abs(const Rational& x) { return boost::abs(x); }
  static int sign(const Rational& x) { return x > Rational(0) ? 1 : (x < Rational(0) ? -1 : 0); }
  static bool is_zero(const Rational& x, double /*scale*/ = 1.0) { return x == Rational(0); }
  static bool near(const Rational& a, const Rational& b, double /*scale*/ = 1.0) {
    return a == b;
  }
  static double to_double(const Rational& x) { return boost::rational_cast<double>(x); }
  static Rational from_int(std::int64_t n) { return Rational(n); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr ScalarMode mode = ScalarMode::Float;
  static constexpr double tolerance = 1e-9;

  static double abs(double x) { return std::fabs(x); }
  static int sign(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
  static bool is_zero(double x, double scale = 1.0) {
    return std::fabs(x) <= tolerance * std::max(1.0, std::fabs(scale));
  }
  static bool near(double a, double b, double scale = 1.0) {
    const double mag = std::max({1.0, std::fabs(a), std::fabs(b), std::fabs(scale)});
    return std::fabs(a - b) <= tolerance * mag;
  }
  static double to_double(double x) { return x; }
  static double from_int(std::int64_t n) { return static_cast<double>(n); }
};

template <class S>
S abs_value(const S& x) {
  return ScalarTraits<S>::abs(x);
}

template <class S>
int sign_of(const S& x) {
  return ScalarTraits<S>::sign(x);
}

template <class S>
double to_double(const S& x) {
  return ScalarTraits<S>::to_double(x);
}

/// Smallest-denominator rational that converts back to exactly `x`.
/// Decimal literals such as 0.1 therefore come back as 1/10.
Rational rational_from_double(double x);

/// "p/q" (or "p") form.
std::string format_rational(const Rational& x);

/// Accepts "p/q", "p", or a decimal literal. Throws Error on malformed text.
Rational parse_rational(std::string_view text);

}  // namespace loopflow
