#pragma once

#include <span>
#include <vector>

#include "univrank/arith.hpp"
#include "univrank/interval.hpp"

namespace univrank {

// Dense univariate polynomials, coefficients lowest degree first.
using ZPoly = std::vector<Integer>;
using QPoly = std::vector<Rational>;

namespace poly {

void trim(ZPoly& p);
void trim(QPoly& p);
/// -1 for the zero polynomial.
int degree(const ZPoly& p);
int degree(const QPoly& p);

QPoly to_rational(const ZPoly& p);
ZPoly derivative(const ZPoly& p);
QPoly derivative(const QPoly& p);

ZPoly mul(const ZPoly& a, const ZPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);

/// Division with remainder over Q; throws on a zero divisor.
void divmod(const QPoly& a, const QPoly& b, QPoly& quotient, QPoly& remainder);
QPoly rem(const QPoly& a, const QPoly& b);
/// Monic gcd over Q.
QPoly gcd(QPoly a, QPoly b);
bool divides(const ZPoly& divisor, const ZPoly& p);

Rational eval(const QPoly& p, const Rational& x);
Integer eval(const ZPoly& p, const Integer& x);
int sign_at(const ZPoly& p, const Rational& x);
/// Horner evaluation over an interval; encloses p(x) for every x in `x`.
Interval eval(const QPoly& p, const Interval& x);

/// Sturm chain p, p', -rem(...), ... for a squarefree p.
std::vector<QPoly> sturm_chain(const ZPoly& p);
/// Number of distinct real roots in (a, b].
int count_roots(const std::vector<QPoly>& chain, const Rational& a, const Rational& b);
int count_real_roots(const ZPoly& p);
/// Cauchy bound: every root has |x| < bound.
Rational root_bound(const ZPoly& p);

/// Disjoint isolating intervals for every real root of a squarefree p,
/// sorted ascending. Each interval either is a rational point root, or has
/// p(lo) * p(hi) < 0 with exactly one root inside.
std::vector<Interval> isolate_real_roots(const ZPoly& p);
/// Bisects an isolating interval until its width is at most `width`.
Interval refine_root(const ZPoly& p, Interval iso, const Rational& width);

/// Newton power sums s_0..s_{count-1} of the roots of a monic p.
std::vector<Integer> power_sums(const ZPoly& monic, std::size_t count);
/// Monic polynomial of degree n with the given power sums s_1..s_n
/// (sums[0] is ignored and may hold n).
ZPoly from_power_sums(std::span<const Integer> sums, std::size_t n);
/// Discriminant of a monic polynomial as the Hankel determinant det(s_{i+j}).
Integer discriminant(const ZPoly& monic);

bool is_squarefree(const ZPoly& p);

std::string to_string(const ZPoly& p);

}  // namespace poly
}  // namespace univrank
