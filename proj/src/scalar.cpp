#include "loopflow/scalar.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace loopflow {

std::string_view to_string(ScalarMode mode) {
  return mode == ScalarMode::Rational ? "rational" : "float";
}

ScalarMode parse_scalar_mode(std::string_view text) {
  if (text == "rational") return ScalarMode::Rational;
  if (text == "float") return ScalarMode::Float;
  throw Error("unknown scalar mode '" + std::string(text) + "' (expected rational or float)");
}

namespace {

bool round_trips(__int128 p, __int128 q, double x) {
  return static_cast<double>(p) / static_cast<double>(q) == x;
}

constexpr __int128 kLimit = std::numeric_limits<std::int64_t>::max();

}  // namespace

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error("cannot represent non-finite value as a rational");
  if (x == 0.0) return Rational(0);
  const bool negative = x < 0;
  const double ax = std::fabs(x);
  if (ax >= 9.2e18) throw Error("value out of rational range");

  // Walk the continued fraction; the smallest-denominator rational inside the
  // rounding interval of x is a convergent or a semiconvergent.
  __int128 h_prev = 1, k_prev = 0;
  __int128 h = static_cast<__int128>(std::floor(ax)), k = 1;
  long double rem = static_cast<long double>(ax) - std::floor(static_cast<long double>(ax));
  while (!round_trips(h, k, ax)) {
    if (rem == 0) break;
    const long double inv = 1.0L / rem;
    const long double a_ld = std::floor(inv);
    rem = inv - a_ld;
    if (a_ld > 1e18L) break;
    const auto a = static_cast<__int128>(a_ld);
    bool found = false;
    for (__int128 m = (a + 1) / 2; m < a; ++m) {
      const __int128 hs = m * h + h_prev, ks = m * k + k_prev;
      if (hs > kLimit || ks > kLimit) break;
      if (round_trips(hs, ks, ax)) {
        h_prev = h; k_prev = k; h = hs; k = ks;
        found = true;
        break;
      }
      if (m - (a + 1) / 2 > 64) break;  // long runs of semiconvergents are not worth scanning
    }
    if (found) break;
    const __int128 hn = a * h + h_prev, kn = a * k + k_prev;
    if (hn > kLimit || kn > kLimit) break;
    h_prev = h; k_prev = k; h = hn; k = kn;
  }
  if (!round_trips(h, k, ax)) throw Error("no exact 64-bit rational for value");
  const auto p = static_cast<std::int64_t>(h), q = static_cast<std::int64_t>(k);
  return negative ? Rational(-p, q) : Rational(p, q);
}

std::string format_rational(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error("malformed rational '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    const auto p = parse_int(text.substr(0, slash), text);
    const auto q = parse_int(text.substr(slash + 1), text);
    if (q == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
  }
  if (text.find_first_of(".eE") == std::string_view::npos) return Rational(parse_int(text, text));

  // Plain decimal: read digits exactly.
  if (text.find_first_of("eE") == std::string_view::npos) {
    const auto dot = text.find('.');
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    if (frac.size() <= 17) {
      std::int64_t den = 1;
      for (std::size_t n = 0; n < frac.size(); ++n) den *= 10;
      const bool neg = !digits.empty() && digits.front() == '-';
      const std::string int_part = (digits.empty() || digits == "-" || digits == "+") ? "0" : digits;
      const auto ip = parse_int(int_part, text);
      const auto fp = frac.empty() ? 0 : parse_int(frac, text);
      const __int128 num = static_cast<__int128>(ip < 0 ? -ip : ip) * den + fp;
      if (num <= kLimit) {
        const auto n = static_cast<std::int64_t>(num);
        return Rational(neg ? -n : n, den);
      }
    }
  }
  double d = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error("malformed number '" + std::string(text) + "'");
  return rational_from_double(d);
}

}  // namespace loopflow
