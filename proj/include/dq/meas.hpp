#pragma once

#include <cmath>

namespace dq {

// A measured value with propagated variance. Products assume independence:
// var(ab) = a^2 var(b) + b^2 var(a).
struct Meas {
  double v = 0.0;
  double var = 0.0;

  Meas() = default;
  Meas(double value) : v(value) {}
  Meas(double value, double variance) : v(value), var(variance) {}

  double sigma() const { return std::sqrt(var); }

  Meas& operator+=(const Meas& o) {
    v += o.v;
    var += o.var;
    return *this;
  }
  Meas& operator-=(const Meas& o) {
    v -= o.v;
    var += o.var;
    return *this;
  }
  Meas operator-() const { return Meas(-v, var); }

  friend Meas operator+(Meas a, const Meas& b) { return a += b; }
  friend Meas operator-(Meas a, const Meas& b) { return a -= b; }
  friend Meas operator*(const Meas& a, const Meas& b) {
    return Meas(a.v * b.v, a.v * a.v * b.var + b.v * b.v * a.var);
  }

  bool operator==(const Meas& o) const { return v == o.v && var == o.var; }
};

}  // namespace dq
