#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace hms {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. boost::multiprecision keeps the value reduced
/// with a positive denominator, which is exactly the invariant we need.
using Rational = boost::multiprecision::cpp_rational;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p" (optionally signed). Throws ParseError on garbage
/// or zero denominator.
Rational parse_rational(const std::string& s);

/// Formats as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// Nearest double (round-trip is lossy by nature; used only at the
/// sampling/reporting boundary).
double to_double(const Rational& r);

/// Exact rational value of a finite double.
Rational rational_from_double(double x);

/// Best rational approximation of x with denominator <= max_den
/// (continued-fraction convergents/semiconvergents).
Rational snap_to_rational(double x, const BigInt& max_den);

}  // namespace hms
