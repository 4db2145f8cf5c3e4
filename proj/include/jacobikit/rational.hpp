#ifndef JACOBIKIT_RATIONAL_HPP
#define JACOBIKIT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace jacobikit {

// Exact rational scalar used throughout the polynomial backend.
// Arbitrary precision so that iterated brackets never overflow.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string rational_to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double rational_to_double(const Rational& r) {
  return r.convert_to<double>();
}

}  // namespace jacobikit

#endif
