#pragma once

#include <optional>
#include <vector>

#include "univrank/arith.hpp"

namespace univrank {

using IntMatrix = std::vector<std::vector<Integer>>;
using RatMatrix = std::vector<std::vector<Rational>>;

namespace matrix {

IntMatrix zeros(std::size_t rows, std::size_t cols);
RatMatrix to_rational(const IntMatrix& m);
RatMatrix identity(std::size_t n);

/// Fraction-free (Bareiss) determinant of a square integer matrix.
Integer determinant(IntMatrix m);
/// Gauss-Jordan inverse over Q; std::nullopt when singular.
std::optional<RatMatrix> inverse(RatMatrix m);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);

/// Exact LDL^T of a symmetric matrix: L unit lower triangular, D diagonal.
/// Returns false if some pivot is not positive (the matrix is not positive
/// definite).
bool ldl_positive_definite(const RatMatrix& a, RatMatrix& lower, std::vector<Rational>& diag);

}  // namespace matrix
}  // namespace univrank
