#include "hms/rational.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

namespace hms {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigInt(s));
    }
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    return Rational(num, den);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("malformed rational literal '" + s + "'");
  }
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ParseError("non-finite double");
  if (x == 0.0) return Rational(0);
  int exp;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5,1)
  // 53 bits of mantissa make mant * 2^53 integral.
  auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(scaled);
  if (exp >= 0) {
    r *= Rational(BigInt(1) << exp);
  } else {
    r /= Rational(BigInt(1) << -exp);
  }
  return r;
}

Rational snap_to_rational(double x, const BigInt& max_den) {
  Rational target = rational_from_double(x);
  bool neg = target < 0;
  if (neg) target = -target;

  // Stern-Brocot walk with batched steps; finds the best approximation
  // with denominator bounded by max_den.
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rest = target;
  while (true) {
    BigInt a = numerator(rest) / denominator(rest);
    BigInt p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) {
      // Take the largest semiconvergent that still fits.
      BigInt k = (max_den - q0) / q1;
      BigInt ps = k * p1 + p0, qs = k * q1 + q0;
      Rational conv(p1, q1 == 0 ? BigInt(1) : q1);
      Rational semi(ps, qs);
      Rational best =
          (q1 != 0 && abs(conv - target) <= abs(semi - target)) ? conv : semi;
      return neg ? Rational(-best) : best;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = Rational(1) / frac;
  }
  Rational exact(p1, q1);
  return neg ? Rational(-exact) : exact;
}

}  // namespace hms
