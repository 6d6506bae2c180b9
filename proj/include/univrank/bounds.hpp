#pragma once

#include <vector>

#include "json.hpp"
#include "univrank/interval.hpp"
#include "univrank/number_field.hpp"

namespace univrank {

/// c_N = (N^2 - N) / P^(1/E) with P = prod_{j=2}^{N} j^j and E = (N^2 - N) / 2.
struct SchurConstant {
  unsigned long N = 0;
  Interval enclosure;
  Integer numerator;      // N^2 - N
  Integer product;        // P
  unsigned long root = 0; // E
  bool exact = false;
  nlohmann::json to_json() const;
};

/// Enclosure of width <= precision (precision > 0).
SchurConstant schur_constant(unsigned long N, const Rational& precision = Rational(1, 1000000));

struct SchurCheck {
  bool holds = false;
  bool equality = false;
  Integer lhs;          // Tr(beta^2)
  Integer disc;         // Delta(beta)
  Interval rhs;         // enclosure of c_N Delta^(1/E)
  nlohmann::json to_json() const;
};

/// Decides Tr(beta^2) >= c_N Delta(beta)^(1/E) exactly through
/// Tr(beta^2)^E * P >= (N^2 - N)^E * Delta.
SchurCheck schur_check(const AlgebraicInt& beta);

/// 4 * max_{i<j} Tr(a_i a_j). Requires at least two totally positive elements.
Integer trace_pair_max(const std::vector<AlgebraicInt>& elements);

struct PerDivisor {
  unsigned long e = 0;
  unsigned long N = 0;      // k e
  Rational radicand;        // V_e^(2e)
  Interval enclosure;       // V_e
};

struct ThresholdB {
  unsigned long k = 0;
  unsigned long l = 0;
  Integer T;
  Rational precision;
  std::vector<PerDivisor> per_e;
  Integer B_ceiling;
  nlohmann::json to_json() const;
  static ThresholdB from_json(const nlohmann::json& j);
};

/// V_e = ((k e T) / (l c_{ke}))^((k^2 e - k)/2) for every divisor e of l,
/// written as the exact root [(T / (l (N-1)))^(N(N-1)) * P_N^2]^(1/(2e)).
/// B_ceiling = floor(max upper endpoint) + 1.
ThresholdB compute_B(unsigned long k, unsigned long l, const std::vector<AlgebraicInt>& elements, const FieldPtr& L,
                     const Rational& precision = Rational(1, 1000000));
/// Same from T directly.
ThresholdB compute_B_from_T(unsigned long k, unsigned long l, const Integer& T,
                            const Rational& precision = Rational(1, 1000000));

struct ContradictionReplay {
  unsigned long e = 0;
  Integer disc;          // synthetic Delta over a degree ke field
  Integer kT;
  Interval middle;       // (l/e) c_{ke} Delta^(2/((ke)^2 - ke))
  bool contradiction = false;  // middle > kT, decided exactly
  nlohmann::json to_json() const;
};

/// Replays kT >= Tr(b^2) >= (l/e) c_{ke} Delta^(1/E) for a given Delta.
ContradictionReplay replay_contradiction(const ThresholdB& B, unsigned long e, const Integer& disc);

/// prod_{j=2}^{N} j^j
Integer schur_product(unsigned long N);

}  // namespace univrank
