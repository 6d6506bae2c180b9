#include "univrank/matrix.hpp"

#include <utility>

#include "univrank/errors.hpp"

namespace univrank::matrix {

IntMatrix zeros(std::size_t rows, std::size_t cols) {
  return IntMatrix(rows, std::vector<Integer>(cols, Integer(0)));
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m[i].size());
    for (const auto& x : m[i]) out[i].emplace_back(x);
  }
  return out;
}

RatMatrix identity(std::size_t n) {
  RatMatrix out(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

Integer determinant(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  for (const auto& row : m) {
    if (row.size() != n) throw UsageError("determinant of a non-square matrix");
  }
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(v);
      }
    }
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : Integer(-m[n - 1][n - 1]);
}

std::optional<RatMatrix> inverse(RatMatrix m) {
  const std::size_t n = m.size();
  RatMatrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    Rational scale = 1 / m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t rows = a.size();
  const std::size_t inner = b.size();
  const std::size_t cols = inner == 0 ? 0 : b[0].size();
  RatMatrix out(rows, std::vector<Rational>(cols, Rational(0)));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

bool ldl_positive_definite(const RatMatrix& a, RatMatrix& lower, std::vector<Rational>& diag) {
  const std::size_t n = a.size();
  lower = identity(n);
  diag.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    Rational d = a[j][j];
    for (std::size_t k = 0; k < j; ++k) d -= lower[j][k] * lower[j][k] * diag[k];
    if (d <= 0) return false;
    diag[j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= lower[i][k] * lower[j][k] * diag[k];
      lower[i][j] = s / d;
    }
  }
  return true;
}

}  // namespace univrank::matrix
