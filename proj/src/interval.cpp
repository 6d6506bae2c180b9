#include "univrank/interval.hpp"

#include <algorithm>

#include "univrank/errors.hpp"

namespace univrank {

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  lo_.canonicalize();
  hi_.canonicalize();
  if (lo_ > hi_) throw UsageError("interval with lo > hi");
}

int Interval::certain_sign() const {
  if (lo_ > 0) return 1;
  if (hi_ < 0) return -1;
  return 0;
}

Rational Interval::magnitude() const {
  Rational a = abs(lo_);
  Rational b = abs(hi_);
  return a > b ? a : b;
}

Interval& Interval::operator+=(const Interval& o) {
  lo_ += o.lo_;
  hi_ += o.hi_;
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  Rational new_lo = lo_ - o.hi_;
  hi_ -= o.lo_;
  lo_ = std::move(new_lo);
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  if (is_point() && o.is_point()) {
    lo_ *= o.lo_;
    hi_ = lo_;
    return *this;
  }
  if (o.is_point()) return *this *= o.lo_;
  if (is_point()) {
    Rational s = lo_;
    *this = o;
    return *this *= s;
  }
  Rational a = lo_ * o.lo_;
  Rational b = lo_ * o.hi_;
  Rational c = hi_ * o.lo_;
  Rational d = hi_ * o.hi_;
  lo_ = std::min({a, b, c, d});
  hi_ = std::max({a, b, c, d});
  return *this;
}

Interval& Interval::operator*=(const Rational& s) {
  lo_ *= s;
  hi_ *= s;
  if (s < 0) std::swap(lo_, hi_);
  return *this;
}

Interval Interval::reciprocal() const {
  if (contains_zero()) throw UsageError("reciprocal of an interval containing zero");
  return Interval(1 / hi_, 1 / lo_);
}

Interval Interval::sqrt(unsigned bits) const {
  Rational lo = lo_ > 0 ? sqrt_lower(lo_, bits) : Rational(0);
  Rational hi = hi_ > 0 ? sqrt_upper(hi_, bits) : Rational(0);
  return Interval(lo, hi);
}

Interval Interval::pow(unsigned long n) const {
  if (n == 0) return point(1);
  Rational a = rpow(lo_, n);
  Rational b = rpow(hi_, n);
  if (n % 2 == 1 || lo_ >= 0) return Interval(a, b);
  if (hi_ <= 0) return Interval(b, a);
  return Interval(0, std::max(a, b));
}

std::string Interval::str() const { return "[" + lo_.get_str() + ", " + hi_.get_str() + "]"; }

}  // namespace univrank
