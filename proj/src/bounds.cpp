#include "univrank/bounds.hpp"

#include <algorithm>

#include "univrank/errors.hpp"

namespace univrank {

namespace {

bool exact_root(const Rational& r, unsigned long s, Rational& out) {
  const Integer num = r.get_num();
  const Integer den = r.get_den();
  const Integer a = floor_root(num, s);
  const Integer b = floor_root(den, s);
  if (ipow(a, s) != num || ipow(b, s) != den) return false;
  out = Rational(a, b);
  out.canonicalize();
  return true;
}

/// [x / 2^b, (x+1) / 2^b] with x = floor(r^(1/s) 2^b), or the exact point.
Interval root_at_bits(Rational r, unsigned long s, unsigned long bits) {
  r.canonicalize();
  Rational exact;
  if (exact_root(r, s, exact)) return Interval::point(exact);
  const Integer scale = Integer(1) << bits;
  Rational scaled = r * Rational(ipow(scale, s));
  const Integer x = floor_root(scaled, s);
  return Interval(Rational(x, scale), Rational(x + 1, scale));
}

Interval root_enclosure(const Rational& r, unsigned long s, const Rational& precision) {
  for (unsigned long bits = 16;; bits += 16) {
    Interval iv = root_at_bits(r, s, bits);
    if (iv.width() <= precision) return iv;
  }
}

std::string interval_lo(const Interval& iv) { return to_string(iv.lo()); }
std::string interval_hi(const Interval& iv) { return to_string(iv.hi()); }

void require_precision(const Rational& precision) {
  if (precision <= 0) throw UsageError("precision must be positive");
}

}  // namespace

Integer schur_product(unsigned long N) {
  Integer p = 1;
  for (unsigned long j = 2; j <= N; ++j) p *= ipow(Integer(j), j);
  return p;
}

nlohmann::json SchurConstant::to_json() const {
  return {{"N", N},
          {"lo", interval_lo(enclosure)},
          {"hi", interval_hi(enclosure)},
          {"exact", exact},
          {"exact_log_form", {{"numerator", numerator.get_str()}, {"product", product.get_str()}, {"root", root}}}};
}

SchurConstant schur_constant(unsigned long N, const Rational& precision) {
  if (N < 2) throw UsageError("N must be at least 2");
  require_precision(precision);
  SchurConstant c;
  c.N = N;
  c.numerator = Integer(N) * Integer(N) - Integer(N);
  c.product = schur_product(N);
  c.root = (N * N - N) / 2;
  for (unsigned long bits = 16;; bits += 16) {
    Interval r = root_at_bits(Rational(c.product), c.root, bits);
    Interval enc(Rational(c.numerator) / r.hi(), Rational(c.numerator) / r.lo());
    if (enc.width() <= precision) {
      c.enclosure = enc;
      c.exact = enc.is_point();
      return c;
    }
  }
}

nlohmann::json SchurCheck::to_json() const {
  return {{"holds", holds},
          {"equality", equality},
          {"trace_square", lhs.get_str()},
          {"discriminant", disc.get_str()},
          {"rhs_lo", interval_lo(rhs)},
          {"rhs_hi", interval_hi(rhs)}};
}

SchurCheck schur_check(const AlgebraicInt& beta) {
  const auto& f = *beta.field();
  const unsigned long N = f.degree();
  SchurCheck out;
  out.lhs = f.trace_product(beta.coords(), beta.coords());
  out.disc = beta.discriminant();
  if (N < 2 || out.disc == 0) {
    out.rhs = Interval::point(0);
    out.holds = out.lhs >= 0;
    out.equality = out.lhs == 0;
    return out;
  }
  const Integer num = Integer(N) * Integer(N) - Integer(N);
  const unsigned long E = (N * N - N) / 2;
  const Integer P = schur_product(N);
  const Integer left = ipow(out.lhs, E) * P;
  const Integer right = ipow(num, E) * out.disc;
  out.holds = left >= right;
  out.equality = left == right;
  out.rhs = Rational(num) * root_enclosure(Rational(out.disc, P), E, Rational(Integer(1), Integer(1) << 32));
  return out;
}

Integer trace_pair_max(const std::vector<AlgebraicInt>& elements) {
  if (elements.size() < 2) throw UsageError("need at least two elements");
  for (const auto& a : elements) {
    if (!a.is_totally_positive()) throw HypothesisError("element is not totally positive");
  }
  const auto& f = *elements.front().field();
  Integer best;
  bool first = true;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      Integer t = f.trace_product(elements[i].coords(), elements[j].coords());
      if (first || t > best) best = t;
      first = false;
    }
  }
  return 4 * best;
}

ThresholdB compute_B_from_T(unsigned long k, unsigned long l, const Integer& T, const Rational& precision) {
  if (k < 3 || k == 4) throw HypothesisError("the theorem needs k = 3 or k >= 5");
  if (l < 1) throw UsageError("l must be positive");
  if (T <= 0) throw UsageError("T must be positive");
  require_precision(precision);
  ThresholdB B;
  B.k = k;
  B.l = l;
  B.T = T;
  B.precision = precision;
  Rational best_hi = 0;
  for (unsigned long e = 1; e <= l; ++e) {
    if (l % e != 0) continue;
    PerDivisor pd;
    pd.e = e;
    pd.N = k * e;
    const unsigned long N = pd.N;
    const Integer P = schur_product(N);
    Rational base(T, Integer(l) * Integer(N - 1));
    base.canonicalize();
    pd.radicand = rpow(base, N * (N - 1)) * Rational(P * P);
    pd.enclosure = root_enclosure(pd.radicand, 2 * e, precision);
    best_hi = std::max(best_hi, pd.enclosure.hi());
    B.per_e.push_back(std::move(pd));
  }
  B.B_ceiling = floor_of(best_hi) + 1;
  return B;
}

ThresholdB compute_B(unsigned long k, unsigned long l, const std::vector<AlgebraicInt>& elements, const FieldPtr& L,
                     const Rational& precision) {
  if (L->degree() != l) throw UsageError("l must equal [L:Q]");
  for (const auto& a : elements) {
    if (!a.field()->same_as(*L)) throw UsageError("elements must lie in L");
  }
  return compute_B_from_T(k, l, trace_pair_max(elements), precision);
}

nlohmann::json ThresholdB::to_json() const {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& p : per_e) {
    per.push_back({{"e", p.e},
                   {"degree", p.N},
                   {"radicand", to_string(p.radicand)},
                   {"root_index", 2 * p.e},
                   {"lo", interval_lo(p.enclosure)},
                   {"hi", interval_hi(p.enclosure)}});
  }
  return {{"k", k},
          {"l", l},
          {"T", T.get_str()},
          {"precision", to_string(precision)},
          {"per_e", per},
          {"B_ceiling", B_ceiling.get_str()},
          {"valid_for", "disc_K >= B_ceiling + 1"}};
}

ThresholdB ThresholdB::from_json(const nlohmann::json& j) {
  ThresholdB B;
  B.k = j.at("k").get<unsigned long>();
  B.l = j.at("l").get<unsigned long>();
  B.T = integer_from_json(j.at("T"));
  B.precision = parse_rational(j.at("precision").get<std::string>());
  for (const auto& p : j.at("per_e")) {
    PerDivisor pd;
    pd.e = p.at("e").get<unsigned long>();
    pd.N = p.at("degree").get<unsigned long>();
    pd.radicand = parse_rational(p.at("radicand").get<std::string>());
    pd.enclosure = Interval(parse_rational(p.at("lo").get<std::string>()), parse_rational(p.at("hi").get<std::string>()));
    B.per_e.push_back(pd);
  }
  B.B_ceiling = integer_from_json(j.at("B_ceiling"));
  return B;
}

nlohmann::json ContradictionReplay::to_json() const {
  return {{"e", e},
          {"disc", disc.get_str()},
          {"kT", kT.get_str()},
          {"middle_lo", interval_lo(middle)},
          {"middle_hi", interval_hi(middle)},
          {"contradiction", contradiction}};
}

ContradictionReplay replay_contradiction(const ThresholdB& B, unsigned long e, const Integer& disc) {
  if (e == 0 || B.l % e != 0) throw UsageError("e must divide l");
  if (disc <= 0) throw UsageError("discriminant must be positive");
  ContradictionReplay r;
  r.e = e;
  r.disc = disc;
  r.kT = Integer(B.k) * B.T;
  const unsigned long N = B.k * e;
  const unsigned long E = (N * N - N) / 2;
  const Integer num = Integer(N) * Integer(N) - Integer(N);
  const Integer P = schur_product(N);
  // (l/e) c_N Delta^(1/E) > kT  <=>  l^E num^E Delta > (e k T)^E P
  r.contradiction = ipow(Integer(B.l) * num, E) * disc > ipow(Integer(e) * r.kT, E) * P;
  Rational factor = Rational(Integer(B.l) * num, Integer(e));
  factor.canonicalize();
  r.middle = factor * root_enclosure(Rational(disc, P), E, Rational(Integer(1), Integer(1) << 32));
  return r;
}

}  // namespace univrank
