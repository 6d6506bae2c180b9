#pragma once

#include <optional>
#include <vector>

#include "json.hpp"
#include "univrank/matrix.hpp"
#include "univrank/number_field.hpp"

namespace univrank {

/// Q(rho), rho a root of x^3 - a x^2 - (a+3) x - 1, power basis {1, rho, rho^2}.
struct SimplestCubicField {
  Integer a;
  FieldPtr field;
  /// Integer matrix of a generator of Gal(L/Q) on coordinates: column j is
  /// the image of rho^j.
  IntMatrix automorphism;
  /// (p, q, r, s) with rho -> (p rho + q) / (r rho + s).
  std::vector<Integer> mobius;

  Coords apply(const Coords& x) const;
  nlohmann::json to_json() const;
};

/// Requires a >= -1 and {1, rho, rho^2} to be the maximal order
/// (HypothesisError otherwise). a^2 + 3a + 9 squarefree suffices; for the
/// other a every prime p | a^2 + 3a + 9 is tested with
/// basis_is_p_maximal. Then disc = (a^2 + 3a + 9)^2.
SimplestCubicField simplest_cubic(const Integer& a);

/// No nonzero (1/p) sum c_i b_i with 0 <= c_i < p is an algebraic integer.
bool basis_is_p_maximal(const NumberField& field, std::int64_t p);

/// (1/den) * sum_k num[k] b_k.
struct CodifferentElement {
  Coords num;
  Integer den = 1;

  std::vector<Rational> coords() const;
  nlohmann::json to_json() const;
  static CodifferentElement from_json(const nlohmann::json& j);
};

/// Normalizes so that gcd(num, den) = 1 and den > 0.
CodifferentElement make_codifferent(Coords num, Integer den);

/// Tr(delta * x) for x in O_L, as an exact rational.
Rational codifferent_trace(const NumberField& field, const CodifferentElement& delta, const Coords& x);
bool in_codifferent(const NumberField& field, const CodifferentElement& delta);
bool is_totally_positive(const NumberField& field, const CodifferentElement& delta);

/// The trace-dual basis of the integral basis.
std::vector<CodifferentElement> codifferent_basis(const NumberField& field);
std::vector<CodifferentElement> codifferent_basis(const SimplestCubicField& L);

struct PositiveCodifferent {
  CodifferentElement delta;
  std::vector<Integer> dual_coords;  // coordinates over codifferent_basis
  Integer trace;
};

/// The minimal totally positive codifferent element under (trace,
/// lexicographic dual coordinates) with dual coordinates in
/// [-coord_bound, coord_bound]. Throws UsageError for coord_bound < 1 and
/// HypothesisError when none is found.
PositiveCodifferent positive_codifferent_element(const SimplestCubicField& L, const Integer& coord_bound);

/// Every totally positive a in O_L with Tr(delta a) = 1, sorted by
/// coordinates. Box: 0 < sigma_h(a) < 1 / sigma_h(delta).
std::vector<AlgebraicInt> trace_one_elements(const FieldPtr& field, const CodifferentElement& delta, long padding = 0);
/// Same set through the ellipsoid Tr(a^2) <= sum_h sigma_h(delta)^-2.
std::vector<AlgebraicInt> trace_one_elements_by_trace_form(const FieldPtr& field, const CodifferentElement& delta);

/// floor(sqrt(n) / 3).
Integer cubic_rank_bound(const Integer& n);

struct CubicChoice {
  SimplestCubicField L;
  PositiveCodifferent delta;
  std::vector<AlgebraicInt> elements;
};

/// First admissible a in [a_min, a_max] whose trace-one inventory for the
/// minimal delta (dual coordinates bounded by delta_bound) has at least
/// min_count members.
std::optional<CubicChoice> scan_simplest_cubics(const Integer& min_count, const Integer& a_min, const Integer& a_max,
                                                const Integer& delta_bound);

}  // namespace univrank
