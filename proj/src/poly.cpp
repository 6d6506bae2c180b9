#include "univrank/poly.hpp"

#include <algorithm>
#include <sstream>

#include "univrank/errors.hpp"
#include "univrank/matrix.hpp"

namespace univrank::poly {

void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const ZPoly& p) {
  int d = static_cast<int>(p.size()) - 1;
  while (d >= 0 && p[static_cast<std::size_t>(d)] == 0) --d;
  return d;
}

int degree(const QPoly& p) {
  int d = static_cast<int>(p.size()) - 1;
  while (d >= 0 && p[static_cast<std::size_t>(d)] == 0) --d;
  return d;
}

QPoly to_rational(const ZPoly& p) {
  QPoly out;
  out.reserve(p.size());
  for (const auto& c : p) out.emplace_back(c);
  return out;
}

ZPoly derivative(const ZPoly& p) {
  ZPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<unsigned long>(i));
  trim(out);
  return out;
}

QPoly derivative(const QPoly& p) {
  QPoly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * static_cast<unsigned long>(i));
  trim(out);
  return out;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

void divmod(const QPoly& a, const QPoly& b, QPoly& quotient, QPoly& remainder) {
  const int db = degree(b);
  if (db < 0) throw UsageError("polynomial division by zero");
  remainder = a;
  trim(remainder);
  const int da = degree(remainder);
  quotient.assign(da >= db ? static_cast<std::size_t>(da - db + 1) : 0, Rational(0));
  const Rational& lead = b[static_cast<std::size_t>(db)];
  for (int d = da; d >= db; --d) {
    const Rational& top = remainder[static_cast<std::size_t>(d)];
    if (top == 0) continue;
    Rational f = top / lead;
    quotient[static_cast<std::size_t>(d - db)] = f;
    for (int i = 0; i <= db; ++i) remainder[static_cast<std::size_t>(d - db + i)] -= f * b[static_cast<std::size_t>(i)];
  }
  trim(remainder);
  trim(quotient);
}

QPoly rem(const QPoly& a, const QPoly& b) {
  QPoly q;
  QPoly r;
  divmod(a, b, q, r);
  return r;
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

bool divides(const ZPoly& divisor, const ZPoly& p) { return rem(to_rational(p), to_rational(divisor)).empty(); }

Rational eval(const QPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Integer eval(const ZPoly& p, const Integer& x) {
  Integer acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_at(const ZPoly& p, const Rational& x) {
  // p(num/den) * den^deg keeps the sign and stays integral
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  Integer acc = 0;
  Integer den_pow = 1;
  // evaluate sum c_i num^i den^(n-i) by Horner on (num, den)
  const int n = degree(p);
  if (n < 0) return 0;
  acc = p[static_cast<std::size_t>(n)];
  for (int i = n - 1; i >= 0; --i) {
    den_pow *= den;
    acc = acc * num + p[static_cast<std::size_t>(i)] * den_pow;
  }
  return sgn(acc);
}

Interval eval(const QPoly& p, const Interval& x) {
  if (p.empty()) return Interval::point(0);
  Interval acc = Interval::point(p.back());
  for (auto it = p.rbegin() + 1; it != p.rend(); ++it) {
    acc *= x;
    acc += Interval::point(*it);
  }
  return acc;
}

std::vector<QPoly> sturm_chain(const ZPoly& p) {
  std::vector<QPoly> chain;
  chain.push_back(to_rational(p));
  trim(chain.back());
  chain.push_back(derivative(chain.back()));
  while (!chain.back().empty() && degree(chain.back()) > 0) {
    QPoly r = rem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

namespace {

int variations_at(const std::vector<QPoly>& chain, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& q : chain) {
    int s = sgn(eval(q, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

int count_roots(const std::vector<QPoly>& chain, const Rational& a, const Rational& b) {
  return variations_at(chain, a) - variations_at(chain, b);
}

Rational root_bound(const ZPoly& p) {
  const int n = degree(p);
  if (n <= 0) return 1;
  Rational lead = abs(Rational(p[static_cast<std::size_t>(n)]));
  Rational m = 0;
  for (int i = 0; i < n; ++i) {
    Rational c = abs(Rational(p[static_cast<std::size_t>(i)])) / lead;
    if (c > m) m = c;
  }
  return m + 1;
}

int count_real_roots(const ZPoly& p) {
  auto chain = sturm_chain(p);
  Rational b = root_bound(p);
  return count_roots(chain, -b, b);
}

std::vector<Interval> isolate_real_roots(const ZPoly& p) {
  auto chain = sturm_chain(p);
  Rational bound = root_bound(p);
  // make the bound an integer so endpoints stay dyadic-friendly
  bound = Rational(ceil_of(bound));
  std::vector<Interval> out;
  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  // roots in (a, b]; -bound and bound are never roots
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    int n = count_roots(chain, a, b);
    if (n == 0) continue;
    if (n == 1) {
      if (sign_at(p, b) == 0) {
        out.push_back(Interval::point(b));
      } else {
        out.emplace_back(a, b);
      }
      continue;
    }
    Rational mid = (a + b) / 2;
    stack.emplace_back(a, mid);
    stack.emplace_back(mid, b);
  }
  std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.lo() < y.lo(); });
  // a half-open isolating interval (a, b] with p(a) == 0 would be ambiguous;
  // tighten every interval so its endpoints are non-roots with a sign change
  for (auto& iv : out) {
    if (iv.is_point()) continue;
    Rational a = iv.lo();
    Rational b = iv.hi();
    while (sign_at(p, a) == 0 || sign_at(p, a) == sign_at(p, b)) {
      Rational mid = (a + b) / 2;
      int sm = sign_at(p, mid);
      if (sm == 0) {
        a = b = mid;
        break;
      }
      if (count_roots(chain, a, mid) == 1) {
        b = mid;
      } else {
        a = mid;
      }
    }
    iv = Interval(a, b);
  }
  return out;
}

Interval refine_root(const ZPoly& p, Interval iso, const Rational& width) {
  if (iso.is_point()) return iso;
  Rational a = iso.lo();
  Rational b = iso.hi();
  int sa = sign_at(p, a);
  while (b - a > width) {
    Rational mid = (a + b) / 2;
    int sm = sign_at(p, mid);
    if (sm == 0) return Interval::point(mid);
    if (sm == sa) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return Interval(a, b);
}

std::vector<Integer> power_sums(const ZPoly& monic, std::size_t count) {
  const int n = degree(monic);
  if (n < 0 || monic[static_cast<std::size_t>(n)] != 1) throw UsageError("power_sums needs a monic polynomial");
  // x^n + c_{n-1} x^{n-1} + ... ; e_i = (-1)^i c_{n-i}
  std::vector<Integer> s(count, Integer(0));
  if (count > 0) s[0] = n;
  for (std::size_t k = 1; k < count; ++k) {
    Integer acc = 0;
    // s_k + c_{n-1} s_{k-1} + ... + c_{n-k+1} s_1 + k c_{n-k} = 0  (k <= n)
    // s_k + c_{n-1} s_{k-1} + ... + c_0 s_{k-n} = 0                (k > n)
    for (std::size_t i = 1; i <= k && i <= static_cast<std::size_t>(n); ++i) {
      const Integer& c = monic[static_cast<std::size_t>(n) - i];
      if (i == k) {
        acc += c * static_cast<unsigned long>(k);
      } else {
        acc += c * s[k - i];
      }
    }
    s[k] = -acc;
  }
  return s;
}

ZPoly from_power_sums(std::span<const Integer> sums, std::size_t n) {
  // Newton: k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} s_i
  std::vector<Integer> e(n + 1, Integer(0));
  e[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Integer acc = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      Integer term = e[k - i] * sums[i];
      if (i % 2 == 1) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), k)) throw HypothesisError("power sums are not those of an integral polynomial");
    e[k] = acc / static_cast<unsigned long>(k);
  }
  ZPoly out(n + 1, Integer(0));
  for (std::size_t k = 0; k <= n; ++k) {
    out[n - k] = (k % 2 == 0) ? e[k] : Integer(-e[k]);
  }
  return out;
}

Integer discriminant(const ZPoly& monic) {
  const int n = degree(monic);
  auto s = power_sums(monic, static_cast<std::size_t>(2 * n - 1));
  IntMatrix h = matrix::zeros(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(i + j)];
  }
  return matrix::determinant(h);
}

bool is_squarefree(const ZPoly& p) {
  QPoly q = to_rational(p);
  trim(q);
  return degree(gcd(q, derivative(q))) == 0;
}

std::string to_string(const ZPoly& p) {
  std::ostringstream out;
  bool first = true;
  for (int i = degree(p); i >= 0; --i) {
    const Integer& c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) out << mag.get_str();
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace univrank::poly
