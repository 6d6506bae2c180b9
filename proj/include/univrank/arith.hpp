#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace univrank {

using Integer = mpz_class;
using Rational = mpq_class;

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

Integer ipow(const Integer& base, unsigned long exp);
Rational rpow(const Rational& base, unsigned long exp);

/// floor(x^(1/n)) for x >= 0.
Integer floor_root(const Integer& x, unsigned long n);
/// floor(q^(1/n)) for a non-negative rational q.
Integer floor_root(const Rational& q, unsigned long n);
bool is_perfect_square(const Integer& x);

/// A rational u with u >= sqrt(q); the gap is at most 2^-bits.
Rational sqrt_upper(const Rational& q, unsigned bits = 64);
/// A rational l with 0 <= l <= sqrt(q); the gap is at most 2^-bits.
Rational sqrt_lower(const Rational& q, unsigned bits = 64);

Integer gcd(const Integer& a, const Integer& b);

std::string to_string(const Integer& x);
std::string to_string(const Rational& q);
/// Accepts "n", "-n", "p/q" and decimal literals like "1e-6" or "0.001".
Rational parse_rational(const std::string& text);
Integer parse_integer(const std::string& text);

std::vector<std::int64_t> primes_up_to(std::int64_t limit);

enum class Squarefree { yes, no, unknown };

struct SquarefreeReport {
  Squarefree verdict = Squarefree::unknown;
  Integer witness;   // p with p^2 | n when verdict == no
  Integer cofactor;  // part left after trial division
};

/// Certifies squarefreeness of |n| by trial division up to `trial_limit`.
/// The residual cofactor c is accepted when c < trial_limit^3 and c is not
/// a perfect square: then c has at most two prime factors, both above the
/// limit, and they cannot coincide.
SquarefreeReport certify_squarefree(const Integer& n, std::int64_t trial_limit);

}  // namespace univrank
