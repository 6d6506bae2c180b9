#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "univrank/number_field.hpp"

namespace univrank {

/// A free quadratic O_F-lattice O_F^r with Q(x) = sum_i a_ii x_i^2 +
/// sum_{i<j} b_ij x_i x_j. The bilinear form has B(e_i, e_i) = a_ii and
/// B(e_i, e_j) = b_ij / 2, so cross terms need not be even.
class QuadLatticeForm {
 public:
  /// gram[i][i] holds a_ii, gram[i][j] (i != j) holds b_ij; must be symmetric.
  /// Throws HypothesisError unless the form is totally positive definite.
  QuadLatticeForm(FieldPtr field, std::vector<std::vector<Coords>> gram);
  static QuadLatticeForm diagonal(const FieldPtr& field, const std::vector<Coords>& entries);
  static QuadLatticeForm sum_of_squares(const FieldPtr& field, std::size_t rank);

  /// {"field": descriptor, "gram": [[coords...]...]}; the field may also be
  /// given as a spec string understood by the caller-supplied resolver.
  static QuadLatticeForm from_json(const nlohmann::json& j, const FieldPtr& field);
  nlohmann::json to_json() const;

  const FieldPtr& field() const { return field_; }
  std::size_t rank() const { return gram_.size(); }
  const Coords& entry(std::size_t i, std::size_t j) const { return gram_[i][j]; }

  /// Q(x) for x given as r field elements.
  Coords evaluate(const std::vector<Coords>& x) const;
  /// Matrix of v -> Tr(Q(v)) on the rN integer coordinates, index i*N + k.
  RatMatrix trace_gram() const;

 private:
  FieldPtr field_;
  std::vector<std::vector<Coords>> gram_;
};

/// {b in O_F : 4 a_i a_j - b^2 is totally positive or zero}, sorted by
/// coordinates. Embedding bounds |sigma_h(b)| <= 2 sqrt(sigma_h(a_i a_j))
/// are converted to a coordinate box and every candidate is checked exactly.
std::vector<AlgebraicInt> cauchy_schwarz_box(const AlgebraicInt& ai, const AlgebraicInt& aj, long padding = 0);
/// True iff the box above is {0}; stops at the first nonzero member.
bool cauchy_schwarz_box_is_zero(const AlgebraicInt& ai, const AlgebraicInt& aj);
/// Same set, enumerated through the trace ellipsoid Tr(b^2) <= Tr(4 a_i a_j).
std::vector<AlgebraicInt> cauchy_schwarz_box_by_trace_form(const AlgebraicInt& ai, const AlgebraicInt& aj);

struct PairEvidence {
  std::size_t i = 0;
  std::size_t j = 0;
  std::vector<Coords> box;
};

struct GramCertificate {
  FieldPtr field;
  std::vector<AlgebraicInt> elements;
  std::vector<PairEvidence> pairs;
  std::size_t rank_bound = 0;  // elements.size() when valid, 0 otherwise
  bool valid = false;

  nlohmann::json to_json() const;
  static GramCertificate from_json(const nlohmann::json& j);
};

/// Builds the pairwise box evidence. Throws HypothesisError for an element
/// that is not totally positive. A repeated element a never certifies: its
/// box with itself contains a.
GramCertificate diagonality_certificate(const std::vector<AlgebraicInt>& elements);

struct ReplayReport {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Re-derives every box through the trace-ellipsoid route and checks the
/// listed members, validity flag and rank bound.
ReplayReport replay_certificate(const GramCertificate& cert);

/// Every totally positive alpha in O_F with Tr(alpha) <= bound, in
/// canonical order (trace, |norm|, coordinates).
std::vector<AlgebraicInt> totally_positive_up_to_trace(const FieldPtr& field, const Integer& bound, long padding = 0);

struct Representation {
  bool represented = false;
  std::vector<Integer> witness;  // rN coordinates, lexicographically largest solution
  std::uint64_t vectors_examined = 0;
};

/// Decides Q(v) = alpha by enumerating every v with Tr(Q(v)) <= Tr(alpha).
Representation represents(const QuadLatticeForm& form, const AlgebraicInt& alpha);

struct UniversalityReport {
  Integer trace_bound;
  std::size_t checked = 0;
  std::vector<AlgebraicInt> missed;
  bool universal_up_to_bound() const { return missed.empty(); }
  nlohmann::json to_json() const;
};

/// Totally positive elements of trace <= bound that the form misses.
UniversalityReport universality_check(const QuadLatticeForm& form, const Integer& bound);

}  // namespace univrank
