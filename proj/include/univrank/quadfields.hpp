#pragma once

#include <optional>
#include <vector>

#include "json.hpp"
#include "univrank/number_field.hpp"

namespace univrank {

/// Continued fraction of sqrt(D): [a0; period...]. P and Q hold the
/// complete-quotient states (P_i + sqrt(D)) / Q_i for i = 0..len(period),
/// so the last state repeats the one at index 1.
struct CFExpansion {
  Integer D;
  Integer a0;
  std::vector<Integer> period;
  std::vector<Integer> P;
  std::vector<Integer> Q;
  nlohmann::json to_json() const;
};

CFExpansion cf_sqrt(const Integer& D);

struct Convergent {
  Integer p;
  Integer q;
  Integer norm;  // p^2 - D q^2
};

/// The first `count` convergents p_i / q_i of sqrt(D).
std::vector<Convergent> convergents(const CFExpansion& cf, std::size_t count);

/// Q(sqrt(D)) with basis {1, sqrt(D)} or {1, (1 + sqrt(D))/2} by D mod 4.
/// D must be squarefree and at least 2.
FieldPtr real_quadratic_field(const Integer& D);

/// All indecomposable totally positive integers of trace <= trace_bound,
/// in canonical order (trace, |norm|, coordinates).
std::vector<AlgebraicInt> indecomposables(const FieldPtr& field, const Integer& trace_bound);
std::vector<AlgebraicInt> indecomposables(const Integer& D, const Integer& trace_bound);

/// Independent check: no totally positive beta with alpha - beta totally
/// positive, searched over the trace ellipsoid Tr(beta^2) <= Tr(alpha^2).
bool is_indecomposable_by_trace_form(const AlgebraicInt& alpha);

/// Greedy choice of m indecomposables whose pairwise Cauchy-Schwarz boxes
/// are {0}; nullopt when the candidates run out.
std::optional<std::vector<AlgebraicInt>> rank_forcing_elements(const Integer& D, std::size_t m,
                                                               const Integer& search_trace_bound);

struct RankForcingHit {
  Integer D;
  std::vector<AlgebraicInt> elements;
};

/// First squarefree D in [D_min, D_max] for which the greedy search reaches m.
std::optional<RankForcingHit> scan_rank_forcing(std::size_t m, const Integer& search_trace_bound,
                                                const Integer& D_min, const Integer& D_max);

}  // namespace univrank
