#pragma once

#include <stdexcept>
#include <vector>

namespace dq {

// Truncated power series in hbar with coefficients in T. Order N means
// coefficients of hbar^0..hbar^N are tracked; everything above is dropped.
// T must be default constructible (default value = zero), addable and
// multipliable.
template <class T>
class HbarSeries {
 public:
  HbarSeries() = default;
  explicit HbarSeries(int order) : c_(order + 1) {}

  int order() const { return (int)c_.size() - 1; }
  const T& at(int k) const { return c_.at(k); }
  T& at(int k) { return c_.at(k); }

  static HbarSeries constant(int order, T v) {
    HbarSeries s(order);
    s.c_[0] = std::move(v);
    return s;
  }

  HbarSeries& operator+=(const HbarSeries& o) {
    match(o);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  HbarSeries& operator-=(const HbarSeries& o) {
    match(o);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }

  friend HbarSeries operator+(HbarSeries a, const HbarSeries& b) { return a += b; }
  friend HbarSeries operator-(HbarSeries a, const HbarSeries& b) { return a -= b; }

  friend HbarSeries operator*(const HbarSeries& a, const HbarSeries& b) {
    a.match(b);
    HbarSeries r(a.order());
    for (int i = 0; i <= a.order(); ++i)
      for (int j = 0; i + j <= a.order(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    return r;
  }

  bool operator==(const HbarSeries& o) const { return c_ == o.c_; }

 private:
  std::vector<T> c_;
  void match(const HbarSeries& o) const {
    if (c_.size() != o.c_.size()) throw std::runtime_error("series order mismatch");
  }
};

// Polynomial in the formal (degree 2) variable u with coefficients in T.
// Exact, not truncated; trailing zeros are kept harmlessly.
template <class T>
class UPoly {
 public:
  UPoly() = default;

  int max_pow() const { return (int)c_.size() - 1; }
  T at(int k) const { return k < (int)c_.size() ? c_[k] : T{}; }

  void add(int upow, const T& v) {
    if (upow >= (int)c_.size()) c_.resize(upow + 1);
    c_[upow] += v;
  }

  UPoly& operator+=(const UPoly& o) {
    for (int k = 0; k <= o.max_pow(); ++k) add(k, o.at(k));
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }

 private:
  std::vector<T> c_;
};

}  // namespace dq
