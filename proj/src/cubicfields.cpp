#include "univrank/cubicfields.hpp"

#include <numeric>

#include "univrank/enumerate.hpp"
#include "univrank/errors.hpp"

namespace univrank {

namespace {

Coords unit(std::size_t n, std::size_t i) {
  Coords c(n, Integer(0));
  c[i] = 1;
  return c;
}

Coords eval_poly_at(const NumberField& f, const ZPoly& p, const Coords& x) {
  Coords acc(f.degree(), Integer(0));
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = f.add(f.mul(acc, x), f.from_integer(p[i]));
  }
  return acc;
}

/// (p rho + q) / (r rho + s) as integral coordinates, if it is integral.
std::optional<Coords> mobius_image(const NumberField& f, const Integer& p, const Integer& q, const Integer& r,
                                   const Integer& s) {
  Coords den{s, r, 0};
  if (f.is_zero(den)) return std::nullopt;
  auto inv = f.inverse(den);
  Integer common = 1;
  for (const auto& x : inv) common = lcm(common, Integer(x.get_den()));
  Coords inv_num(f.degree());
  for (std::size_t i = 0; i < inv.size(); ++i) inv_num[i] = Integer(inv[i] * common);
  Coords prod = f.mul(Coords{q, p, 0}, inv_num);
  for (auto& x : prod) {
    if (x % common != 0) return std::nullopt;
    x /= common;
  }
  return prod;
}

}  // namespace

Coords SimplestCubicField::apply(const Coords& x) const {
  Coords out(3, Integer(0));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) out[i] += automorphism[i][j] * x[j];
  }
  return out;
}

nlohmann::json SimplestCubicField::to_json() const {
  nlohmann::json mob = nlohmann::json::array();
  for (const auto& x : mobius) mob.push_back(x.get_str());
  return {{"a", a.get_str()}, {"field", field->to_json()}, {"automorphism_mobius", mob}};
}

bool basis_is_p_maximal(const NumberField& field, std::int64_t p) {
  const std::size_t n = field.degree();
  std::vector<Integer> c(n, Integer(0));
  for (;;) {
    std::size_t j = 0;
    for (; j < n; ++j) {
      if (c[j] + 1 < p) {
        ++c[j];
        break;
      }
      c[j] = 0;
    }
    if (j == n) return true;
    // elementary symmetric functions of the conjugates of alpha, from power sums
    std::vector<Integer> s(n + 1), e(n + 1);
    Coords pw = field.one();
    for (std::size_t k = 1; k <= n; ++k) {
      pw = field.mul(pw, c);
      s[k] = field.trace(pw);
    }
    e[0] = 1;
    bool integral = true;
    Integer pk = 1;
    for (std::size_t k = 1; k <= n && integral; ++k) {
      Integer acc = 0;
      for (std::size_t i = 1; i <= k; ++i) acc += (i % 2 == 1 ? Integer(1) : Integer(-1)) * e[k - i] * s[i];
      e[k] = acc / Integer(static_cast<unsigned long>(k));
      pk *= p;
      // alpha / p is integral iff p^k | e_k(alpha) for every k
      if (e[k] % pk != 0) integral = false;
    }
    if (integral) return false;
  }
}

SimplestCubicField simplest_cubic(const Integer& a) {
  if (a < -1) throw HypothesisError("simplest cubic needs a >= -1");
  const Integer c = a * a + 3 * a + 9;
  const std::int64_t limit = floor_root(c, 2).get_si() + 2;
  auto sq = certify_squarefree(c, limit);
  std::vector<std::int64_t> suspects;
  if (sq.verdict != Squarefree::yes) {
    for (std::int64_t p : primes_up_to(limit)) {
      if (c % Integer(p) == 0) suspects.push_back(p);
    }
  }
  SimplestCubicField L;
  L.a = a;
  L.field = NumberField::from_polynomial({-1, -(a + 3), -a, 1});
  const auto& f = *L.field;
  for (std::int64_t p : suspects) {
    if (!basis_is_p_maximal(f, p)) {
      throw HypothesisError("a^2+3a+9 = " + c.get_str() + ": the power basis is not maximal at p = " +
                            std::to_string(p) + "; unsupported parameter, pick another a");
    }
  }
  const Coords rho = unit(3, 1);
  for (int p = -2; p <= 2 && L.mobius.empty(); ++p) {
    for (int q = -2; q <= 2 && L.mobius.empty(); ++q) {
      for (int r = 0; r <= 2 && L.mobius.empty(); ++r) {
        for (int s = -2; s <= 2 && L.mobius.empty(); ++s) {
          if (p * s - q * r == 0) continue;
          if (std::gcd(std::gcd(p, q), std::gcd(r, s)) != 1) continue;
          auto img = mobius_image(f, p, q, r, s);
          if (!img || *img == rho) continue;
          if (!f.is_zero(eval_poly_at(f, f.min_poly(), *img))) continue;
          IntMatrix m = matrix::zeros(3, 3);
          const Coords cols[3] = {f.one(), *img, f.mul(*img, *img)};
          for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t i = 0; i < 3; ++i) m[i][j] = cols[j][i];
          }
          L.automorphism = m;
          L.mobius = {p, q, r, s};
        }
      }
    }
  }
  if (L.mobius.empty()) throw HypothesisError("no cyclic automorphism found among small Mobius maps");
  return L;
}

std::vector<Rational> CodifferentElement::coords() const {
  std::vector<Rational> out;
  for (const auto& x : num) {
    Rational q(x, den);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

nlohmann::json CodifferentElement::to_json() const {
  return {{"num", coords_to_json(num)}, {"den", den.get_str()}};
}

CodifferentElement CodifferentElement::from_json(const nlohmann::json& j) {
  return make_codifferent(coords_from_json(j.at("num")), integer_from_json(j.at("den")));
}

CodifferentElement make_codifferent(Coords num, Integer den) {
  if (den == 0) throw UsageError("zero denominator");
  if (den < 0) {
    den = -den;
    for (auto& x : num) x = -x;
  }
  Integer g = den;
  for (const auto& x : num) g = gcd(g, x);
  for (auto& x : num) x /= g;
  den /= g;
  return {std::move(num), std::move(den)};
}

Rational codifferent_trace(const NumberField& field, const CodifferentElement& delta, const Coords& x) {
  Rational t(field.trace_product(delta.num, x), delta.den);
  t.canonicalize();
  return t;
}

bool in_codifferent(const NumberField& field, const CodifferentElement& delta) {
  for (std::size_t j = 0; j < field.degree(); ++j) {
    if (field.trace_product(delta.num, unit(field.degree(), j)) % delta.den != 0) return false;
  }
  return true;
}

bool is_totally_positive(const NumberField& field, const CodifferentElement& delta) {
  return field.is_totally_positive(delta.num);
}

std::vector<CodifferentElement> codifferent_basis(const NumberField& field) {
  const auto& inv = field.trace_matrix_inverse();
  std::vector<CodifferentElement> out;
  for (const auto& row : inv) {
    Integer common = 1;
    for (const auto& x : row) common = lcm(common, Integer(x.get_den()));
    Coords num;
    for (const auto& x : row) num.push_back(Integer(x * common));
    out.push_back(make_codifferent(std::move(num), common));
  }
  return out;
}

std::vector<CodifferentElement> codifferent_basis(const SimplestCubicField& L) { return codifferent_basis(*L.field); }

PositiveCodifferent positive_codifferent_element(const SimplestCubicField& L, const Integer& coord_bound) {
  if (coord_bound < 1) throw UsageError("coordinate bound must be positive");
  const auto& f = *L.field;
  const auto& inv = f.trace_matrix_inverse();
  const std::size_t n = f.degree();
  // Tr(D_i) = delta_{i0} because b_0 = 1, so the trace is the first dual coordinate
  for (Integer c0 = 1; c0 <= coord_bound; ++c0) {
    std::vector<Integer> c(n, -coord_bound);
    c[0] = c0;
    for (;;) {
      std::vector<Rational> v(n, Rational(0));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) v[k] += c[i] * inv[i][k];
      }
      Integer common = 1;
      for (const auto& x : v) common = lcm(common, Integer(x.get_den()));
      Coords num;
      for (const auto& x : v) num.push_back(Integer(x * common));
      auto delta = make_codifferent(std::move(num), common);
      if (is_totally_positive(f, delta)) {
        return {delta, c, c0};
      }
      std::size_t j = n - 1;
      for (; j >= 1; --j) {
        if (c[j] < coord_bound) {
          ++c[j];
          break;
        }
        c[j] = -coord_bound;
      }
      if (j == 0) break;
    }
  }
  throw HypothesisError("no totally positive codifferent element within the coordinate bound; raise the bound");
}

namespace {

/// Rational upper bounds for 1 / sigma_h(delta).
std::vector<Rational> reciprocal_bounds(const NumberField& field, const CodifferentElement& delta) {
  if (!is_totally_positive(field, delta)) throw HypothesisError("delta is not totally positive");
  for (unsigned bits = 16;; bits *= 2) {
    auto enc = field.embeddings(delta.num, Rational(Integer(1), Integer(1) << bits));
    std::vector<Rational> out;
    bool ok = true;
    for (const auto& e : enc) {
      if (e.lo() <= 0) {
        ok = false;
        break;
      }
      out.push_back(Rational(delta.den) / e.lo());
    }
    if (ok) return out;
  }
}

}  // namespace

std::vector<AlgebraicInt> trace_one_elements(const FieldPtr& field, const CodifferentElement& delta, long padding) {
  if (!in_codifferent(*field, delta)) throw HypothesisError("delta is not in the codifferent");
  std::vector<Interval> bounds;
  for (const auto& r : reciprocal_bounds(*field, delta)) bounds.emplace_back(Rational(0), r);
  auto members = enumerate_embedding_box(*field, bounds, [&](const Coords& a) {
    return field->trace_product(delta.num, a) == delta.den && field->is_totally_positive(a);
  }, padding);
  std::vector<AlgebraicInt> out;
  for (auto& c : members) out.emplace_back(field, std::move(c));
  return out;
}

std::vector<AlgebraicInt> trace_one_elements_by_trace_form(const FieldPtr& field, const CodifferentElement& delta) {
  if (!in_codifferent(*field, delta)) throw HypothesisError("delta is not in the codifferent");
  Rational bound = 0;
  for (const auto& r : reciprocal_bounds(*field, delta)) bound += r * r;
  ShortVectorEnumerator walk(matrix::to_rational(field->trace_matrix()), bound);
  std::vector<Coords> members;
  walk.run([&](const std::vector<Integer>& a, const Rational&) {
    if (field->trace_product(delta.num, a) == delta.den && field->is_totally_positive(a)) members.push_back(a);
    return true;
  });
  std::sort(members.begin(), members.end());
  std::vector<AlgebraicInt> out;
  for (auto& c : members) out.emplace_back(field, std::move(c));
  return out;
}

Integer cubic_rank_bound(const Integer& n) {
  if (n < 1) throw UsageError("n must be positive");
  return floor_root(n, 2) / 3;
}

std::optional<CubicChoice> scan_simplest_cubics(const Integer& min_count, const Integer& a_min, const Integer& a_max,
                                                const Integer& delta_bound) {
  for (Integer a = std::max(a_min, Integer(-1)); a <= a_max; ++a) {
    SimplestCubicField L;
    try {
      L = simplest_cubic(a);
    } catch (const HypothesisError&) {
      continue;
    }
    auto delta = positive_codifferent_element(L, delta_bound);
    auto els = trace_one_elements(L.field, delta.delta);
    if (Integer(els.size()) >= min_count) return CubicChoice{std::move(L), std::move(delta), std::move(els)};
  }
  return std::nullopt;
}

}  // namespace univrank
