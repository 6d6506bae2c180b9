#include "univrank/quadfields.hpp"

#include "univrank/enumerate.hpp"
#include "univrank/errors.hpp"
#include "univrank/lattice.hpp"

namespace univrank {

nlohmann::json CFExpansion::to_json() const {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& a : period) per.push_back(a.get_str());
  return {{"D", D.get_str()}, {"a0", a0.get_str()}, {"period", per}, {"period_length", period.size()}};
}

CFExpansion cf_sqrt(const Integer& D) {
  if (D < 2) throw UsageError("D must be at least 2");
  if (is_perfect_square(D)) throw UsageError("D is a perfect square");
  CFExpansion cf;
  cf.D = D;
  cf.a0 = floor_root(D, 2);
  Integer p = 0, q = 1, a = cf.a0;
  cf.P.push_back(p);
  cf.Q.push_back(q);
  do {
    p = q * a - p;
    q = (D - p * p) / q;
    a = (cf.a0 + p) / q;
    cf.P.push_back(p);
    cf.Q.push_back(q);
    cf.period.push_back(a);
  } while (a != 2 * cf.a0);
  return cf;
}

std::vector<Convergent> convergents(const CFExpansion& cf, std::size_t count) {
  std::vector<Convergent> out;
  Integer p_prev = 1, q_prev = 0;
  Integer p = cf.a0, q = 1;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({p, q, p * p - cf.D * q * q});
    const Integer& a = cf.period[i % cf.period.size()];
    Integer p_next = a * p + p_prev;
    Integer q_next = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  return out;
}

FieldPtr real_quadratic_field(const Integer& D) {
  if (D < 2) throw UsageError("D must be at least 2");
  const std::int64_t limit = floor_root(D, 2).get_si() + 2;
  if (certify_squarefree(D, limit).verdict != Squarefree::yes) {
    throw HypothesisError("D = " + D.get_str() + " is not squarefree");
  }
  ZPoly f{-D, 0, 1};
  if (D % 4 == 1) return NumberField::create(f, {{2, 0}, {1, 1}}, 2);
  return NumberField::create(f, {{1, 0}, {0, 1}}, 1);
}

namespace {

std::vector<Interval> upper_bounds(const NumberField& field, const Coords& alpha) {
  auto enc = field.embeddings(alpha, Rational(Integer(1), Integer(1) << 32));
  std::vector<Interval> bounds;
  for (const auto& e : enc) bounds.emplace_back(Rational(0), e.hi());
  return bounds;
}

bool is_decomposable(const NumberField& field, const Coords& alpha) {
  const Coords one_less = field.sub(alpha, field.one());
  if (field.is_totally_positive(one_less)) return true;
  auto hit = find_in_embedding_box(field, upper_bounds(field, alpha), [&](const Coords& beta) {
    return field.is_totally_positive(beta) && field.is_totally_positive(field.sub(alpha, beta));
  });
  return hit.has_value();
}

}  // namespace

std::vector<AlgebraicInt> indecomposables(const FieldPtr& field, const Integer& trace_bound) {
  std::vector<AlgebraicInt> out;
  if (trace_bound < 1) return out;
  std::vector<Interval> bounds(field->degree(), Interval(Rational(0), Rational(trace_bound)));
  // alpha - 1 totally positive means alpha = 1 + (alpha - 1)
  auto cands = enumerate_embedding_box(*field, bounds, [&](const Coords& c) {
    return field->trace(c) <= trace_bound && field->is_totally_positive(c) &&
           !field->is_totally_positive(field->sub(c, field->one()));
  });
  for (auto& c : cands) {
    if (!is_decomposable(*field, c)) out.emplace_back(field, std::move(c));
  }
  sort_canonical(out);
  return out;
}

std::vector<AlgebraicInt> indecomposables(const Integer& D, const Integer& trace_bound) {
  return indecomposables(real_quadratic_field(D), trace_bound);
}

bool is_indecomposable_by_trace_form(const AlgebraicInt& alpha) {
  if (!alpha.is_totally_positive()) return false;
  const auto& f = *alpha.field();
  const Integer bound = f.trace_product(alpha.coords(), alpha.coords());
  ShortVectorEnumerator walk(matrix::to_rational(f.trace_matrix()), Rational(bound));
  bool found = false;
  walk.run([&](const std::vector<Integer>& beta, const Rational&) {
    if (f.is_totally_positive(beta) && f.is_totally_positive(f.sub(alpha.coords(), beta))) {
      found = true;
      return false;
    }
    return true;
  });
  return !found;
}

std::optional<std::vector<AlgebraicInt>> rank_forcing_elements(const Integer& D, std::size_t m,
                                                               const Integer& search_trace_bound) {
  if (m == 0) throw UsageError("m must be positive");
  auto field = real_quadratic_field(D);
  std::vector<AlgebraicInt> chosen;
  for (const auto& cand : indecomposables(field, search_trace_bound)) {
    bool fits = true;
    for (const auto& c : chosen) {
      if (!cauchy_schwarz_box_is_zero(c, cand)) {
        fits = false;
        break;
      }
    }
    if (!fits) continue;
    chosen.push_back(cand);
    if (chosen.size() == m) return chosen;
  }
  return std::nullopt;
}

std::optional<RankForcingHit> scan_rank_forcing(std::size_t m, const Integer& search_trace_bound,
                                                const Integer& D_min, const Integer& D_max) {
  for (Integer D = std::max(D_min, Integer(2)); D <= D_max; ++D) {
    if (is_perfect_square(D)) continue;
    if (certify_squarefree(D, floor_root(D, 2).get_si() + 2).verdict != Squarefree::yes) continue;
    if (auto els = rank_forcing_elements(D, m, search_trace_bound)) return RankForcingHit{D, std::move(*els)};
  }
  return std::nullopt;
}

}  // namespace univrank
