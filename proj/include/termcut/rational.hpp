#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace termcut {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// C(n, r) as an exact integer; 0 when r > n.
BigInt binomial(unsigned n, unsigned r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace termcut
