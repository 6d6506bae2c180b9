#pragma once

#include <memory>
#include <mutex>
#include "json.hpp"
#include <optional>
#include <string>
#include <vector>

#include "univrank/arith.hpp"
#include "univrank/interval.hpp"
#include "univrank/matrix.hpp"
#include "univrank/poly.hpp"

namespace univrank {

/// Integer coordinates with respect to a field's integral basis.
using Coords = std::vector<Integer>;

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Enclosures of sigma_h(b_j) for every real embedding h and basis element
/// b_j, computed from root intervals of width at most 2^-bits.
struct EmbeddingTable {
  unsigned bits = 0;
  std::vector<Interval> roots;
  std::vector<std::vector<Interval>> basis;  // [h][j]
};

/// A totally real number field F = Q(theta), theta a root of a monic
/// irreducible integer polynomial, together with a Z-basis b_0..b_{N-1} of
/// its ring of integers given as b_i = (1/den) * sum_k basis_num[i][k] theta^k.
///
/// All arithmetic is exact. Embeddings are ordered by the increasing real
/// roots of the minimal polynomial. Instances are immutable apart from an
/// internal, mutex-guarded cache of refined embedding tables, so a shared
/// FieldPtr can be used from several threads.
class NumberField {
 public:
  /// Validates everything: monic, squarefree, all roots real, irreducible,
  /// the basis spans a ring (integral structure constants) with integral
  /// traces. Throws HypothesisError or UsageError.
  static FieldPtr create(ZPoly min_poly, IntMatrix basis_num, Integer basis_den);
  /// Uses the power basis {1, theta, ..., theta^(N-1)}.
  static FieldPtr from_polynomial(ZPoly min_poly);
  /// Q itself, as Q(theta) with theta = 0.
  static FieldPtr rationals();

  static FieldPtr from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  std::size_t degree() const { return n_; }
  const ZPoly& min_poly() const { return min_poly_; }
  const IntMatrix& basis_num() const { return basis_num_; }
  const Integer& basis_den() const { return basis_den_; }
  /// det(Tr(b_i b_j)).
  const Integer& discriminant() const { return disc_; }
  const IntMatrix& trace_matrix() const { return trace_matrix_; }
  /// Exact inverse of trace_matrix().
  const RatMatrix& trace_matrix_inverse() const { return trace_inverse_; }
  const std::vector<Interval>& root_intervals() const { return roots_; }
  /// Coordinates of 1; empty optional never happens for a valid field.
  const Coords& one() const { return one_; }
  /// True when b_0 = 1.
  bool first_basis_is_one() const { return first_is_one_; }
  /// Structure constant: coordinate k of b_i * b_j.
  const Integer& structure(std::size_t i, std::size_t j, std::size_t k) const { return mult_[(i * n_ + j) * n_ + k]; }

  Coords from_integer(const Integer& x) const;
  Coords add(const Coords& a, const Coords& b) const;
  Coords sub(const Coords& a, const Coords& b) const;
  Coords mul(const Coords& a, const Coords& b) const;
  Coords scale(const Coords& a, const Integer& s) const;
  Coords power(const Coords& a, unsigned long e) const;
  Integer trace(const Coords& a) const;
  /// Tr(a * b) without forming the product.
  Integer trace_product(const Coords& a, const Coords& b) const;
  /// Column j holds the coordinates of a * b_j.
  IntMatrix multiplication_matrix(const Coords& a) const;
  Integer norm(const Coords& a) const;
  /// det(Tr(a^{i+j})) for 0 <= i, j < N.
  Integer element_discriminant(const Coords& a) const;
  bool is_zero(const Coords& a) const;

  /// a as a polynomial in theta with rational coefficients.
  QPoly power_representation(const Coords& a) const;
  /// Rational coordinates of sum_k p_k theta^k in the integral basis.
  std::vector<Rational> rational_coords(const QPoly& p) const;
  /// Exact inverse of a nonzero element, as rational coordinates.
  std::vector<Rational> inverse(const Coords& a) const;

  std::shared_ptr<const EmbeddingTable> embedding_table(unsigned level) const;
  Interval refined_root(std::size_t h, const Rational& width) const;
  /// Enclosures of sigma_h(a), each of width <= width.
  std::vector<Interval> embeddings(const Coords& a, const Rational& width) const;
  /// Enclosures from the level-0 table (cheap, not width-controlled).
  std::vector<Interval> embeddings_coarse(const Coords& a) const;
  /// Exact sign of every embedding; 0 only for a == 0.
  std::vector<int> embedding_signs(const Coords& a) const;
  bool is_totally_positive(const Coords& a) const;
  /// a - b is totally positive or zero.
  bool succeeds_or_equal(const Coords& a, const Coords& b) const;
  /// Outward enclosure of the inverse embedding matrix: coordinate j of a
  /// equals sum_h inverse_embedding()[j][h] * sigma_h(a).
  const std::vector<std::vector<Interval>>& inverse_embedding() const;

  void check_coords(const Coords& a) const;
  bool same_as(const NumberField& other) const;

 private:
  NumberField() = default;
  void build();

  std::size_t n_ = 0;
  ZPoly min_poly_;
  IntMatrix basis_num_;
  Integer basis_den_ = 1;
  RatMatrix power_to_basis_;  // row k: coordinates of theta^k
  std::vector<Integer> mult_;
  std::vector<Integer> basis_trace_;
  IntMatrix trace_matrix_;
  RatMatrix trace_inverse_;
  Integer disc_ = 0;
  Coords one_;
  bool first_is_one_ = false;
  std::vector<Interval> roots_;

  mutable std::mutex cache_mutex_;
  mutable std::vector<std::shared_ptr<const EmbeddingTable>> tables_;
  mutable std::optional<std::vector<std::vector<Interval>>> inverse_embedding_;
};

/// An algebraic integer: a field handle plus integer coordinates.
class AlgebraicInt {
 public:
  AlgebraicInt() = default;
  AlgebraicInt(FieldPtr field, Coords coords);
  static AlgebraicInt from_integer(const FieldPtr& field, const Integer& x);

  const FieldPtr& field() const { return field_; }
  const Coords& coords() const { return coords_; }

  Integer trace() const { return field_->trace(coords_); }
  Integer norm() const { return field_->norm(coords_); }
  Integer discriminant() const { return field_->element_discriminant(coords_); }
  bool is_zero() const { return field_->is_zero(coords_); }
  bool is_totally_positive() const { return field_->is_totally_positive(coords_); }
  std::vector<Interval> embeddings(const Rational& width) const { return field_->embeddings(coords_, width); }

  AlgebraicInt operator-() const;
  friend AlgebraicInt operator+(const AlgebraicInt& a, const AlgebraicInt& b);
  friend AlgebraicInt operator-(const AlgebraicInt& a, const AlgebraicInt& b);
  friend AlgebraicInt operator*(const AlgebraicInt& a, const AlgebraicInt& b);
  friend AlgebraicInt operator*(const Integer& s, const AlgebraicInt& a);
  friend bool operator==(const AlgebraicInt& a, const AlgebraicInt& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const AlgebraicInt& a, const AlgebraicInt& b) { return a.coords_ < b.coords_; }

 private:
  FieldPtr field_;
  Coords coords_;
};

/// The compositum KL of two totally real fields with coprime discriminants,
/// presented with the product integral basis b_i c_j (index i * [L:Q] + j).
struct Compositum {
  FieldPtr field;
  FieldPtr k_field;
  FieldPtr l_field;
  Coords embed_k(const Coords& a) const;
  Coords embed_l(const Coords& a) const;
};

Compositum compositum(const FieldPtr& k_field, const FieldPtr& l_field);

/// Canonical order used for element lists: trace, then |norm|, then coordinates.
bool canonical_less(const AlgebraicInt& a, const AlgebraicInt& b);
void sort_canonical(std::vector<AlgebraicInt>& elements);

nlohmann::json coords_to_json(const Coords& c);
Coords coords_from_json(const nlohmann::json& j);
nlohmann::json integer_json(const Integer& x);
Integer integer_from_json(const nlohmann::json& j);

}  // namespace univrank
