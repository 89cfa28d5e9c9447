#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace dq {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return static_cast<double>(r); }

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

// n! as an exact integer, usable as a Rat.
inline Rat factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rat(f);
}

}  // namespace dq
