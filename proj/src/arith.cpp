#include "univrank/arith.hpp"

#include <algorithm>
#include <cctype>

#include "univrank/errors.hpp"

namespace univrank {

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational rpow(const Rational& base, unsigned long exp) {
  Rational r(ipow(base.get_num(), exp), ipow(base.get_den(), exp));
  r.canonicalize();
  return r;
}

Integer floor_root(const Integer& x, unsigned long n) {
  if (x < 0) throw UsageError("floor_root of a negative number");
  Integer r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), n);
  return r;
}

Integer floor_root(const Rational& q, unsigned long n) { return floor_root(floor_of(q), n); }

bool is_perfect_square(const Integer& x) { return x >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0; }

Rational sqrt_upper(const Rational& q, unsigned bits) {
  if (q <= 0) return Rational(0);
  // sqrt(p/r) = sqrt(p r 4^bits) / (r 2^bits)
  Integer scale = Integer(1) << bits;
  Integer s;
  Integer prod = q.get_num() * q.get_den() * scale * scale;
  mpz_sqrt(s.get_mpz_t(), prod.get_mpz_t());
  if (s * s != prod) s += 1;
  Rational r(s, q.get_den() * scale);
  r.canonicalize();
  return r;
}

Rational sqrt_lower(const Rational& q, unsigned bits) {
  if (q <= 0) return Rational(0);
  Integer scale = Integer(1) << bits;
  Integer s;
  Integer prod = q.get_num() * q.get_den() * scale * scale;
  mpz_sqrt(s.get_mpz_t(), prod.get_mpz_t());
  Rational r(s, q.get_den() * scale);
  r.canonicalize();
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

bool all_digits(const std::string& s, std::size_t from) {
  if (from >= s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(from), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Integer parse_integer(const std::string& text) {
  std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (!all_digits(text, start)) throw UsageError("not an integer: '" + text + "'");
  Integer r;
  r.set_str(text[0] == '+' ? text.substr(1) : text, 10);
  return r;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw UsageError("empty rational");
  if (auto slash = text.find('/'); slash != std::string::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw UsageError("zero denominator in '" + text + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  // decimal with optional exponent
  std::string mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    mantissa = text.substr(0, e);
    exponent = parse_integer(text.substr(e + 1)).get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa = mantissa.substr(1);
  }
  std::string digits;
  if (auto dot = mantissa.find('.'); dot != std::string::npos) {
    digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
    exponent -= static_cast<long>(mantissa.size() - dot - 1);
  } else {
    digits = mantissa;
  }
  if (!all_digits(digits, 0)) throw UsageError("not a rational: '" + text + "'");
  Integer n(digits, 10);
  Rational r(n);
  Integer ten_pow = ipow(Integer(10), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent < 0) {
    r /= Rational(ten_pow);
  } else {
    r *= Rational(ten_pow);
  }
  return negative ? Rational(-r) : r;
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return primes;
}

SquarefreeReport certify_squarefree(const Integer& n, std::int64_t trial_limit) {
  SquarefreeReport report;
  Integer rest = abs(n);
  if (rest == 0) {
    report.verdict = Squarefree::no;
    report.witness = 0;
    return report;
  }
  auto strip = [&](const Integer& p) {
    if (!mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) return true;
    rest /= p;
    if (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      report.verdict = Squarefree::no;
      report.witness = p;
      return false;
    }
    return true;
  };
  // wheel over 2, 3 and 6k +- 1
  for (std::int64_t p : {2, 3}) {
    if (!strip(Integer(static_cast<long>(p)))) return report;
  }
  bool below_sqrt = false;
  for (std::int64_t p = 5; p <= trial_limit; p += 6) {
    if (Integer(static_cast<long>(p)) * p > rest) {
      below_sqrt = true;
      break;
    }
    if (!strip(Integer(static_cast<long>(p)))) return report;
    if (!strip(Integer(static_cast<long>(p + 2)))) return report;
  }
  report.cofactor = rest;
  Integer limit(static_cast<long>(trial_limit));
  if (below_sqrt || rest == 1 || rest <= limit * limit) {
    // 1 or a prime: no factor up to its square root
    report.verdict = Squarefree::yes;
    return report;
  }
  if (rest < limit * limit * limit) {
    if (is_perfect_square(rest)) {
      report.verdict = Squarefree::no;
      Integer r;
      mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
      report.witness = r;
    } else {
      report.verdict = Squarefree::yes;
    }
    return report;
  }
  report.verdict = is_perfect_square(rest) ? Squarefree::no : Squarefree::unknown;
  if (report.verdict == Squarefree::no) mpz_sqrt(report.witness.get_mpz_t(), rest.get_mpz_t());
  return report;
}

}  // namespace univrank
