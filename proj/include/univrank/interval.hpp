#pragma once

#include <string>

#include "univrank/arith.hpp"

namespace univrank {

/// Closed interval [lo, hi] with exact rational endpoints. Arithmetic is
/// inclusion-monotone: the exact result for any points of the operands lies
/// in the result.
class Interval {
 public:
  Interval() = default;
  Interval(Rational lo, Rational hi);
  static Interval point(const Rational& x) { return Interval(x, x); }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }
  bool is_point() const { return lo_ == hi_; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }
  /// -1 or +1 when the interval excludes zero, 0 otherwise.
  int certain_sign() const;
  /// max(|lo|, |hi|)
  Rational magnitude() const;

  Interval operator-() const { return Interval(-hi_, -lo_); }
  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator*=(const Rational& s);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator*(Interval a, const Rational& s) { return a *= s; }
  friend Interval operator*(const Rational& s, Interval a) { return a *= s; }
  friend bool operator==(const Interval& a, const Interval& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

  /// Requires an interval that excludes zero.
  Interval reciprocal() const;
  /// Enclosure of sqrt over the non-negative part; outward-rounded to 2^-bits.
  Interval sqrt(unsigned bits = 64) const;
  Interval pow(unsigned long n) const;

  std::string str() const;

 private:
  Rational lo_;
  Rational hi_;
};

}  // namespace univrank
