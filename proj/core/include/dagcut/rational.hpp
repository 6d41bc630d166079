#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace dagcut {

// Arbitrary-precision rational scalar used by all exact polynomial algebra.
// Piece coefficients reach magnitudes around 4e6 * 2^22 before convolution,
// so fixed-width arithmetic is not an option.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational rational_pow(Rational base, unsigned exp) {
  Rational out(1);
  while (exp) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1u;
  }
  return out;
}

}  // namespace dagcut
