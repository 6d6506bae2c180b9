#include "univrank/number_field.hpp"

#include <algorithm>

#include "univrank/errors.hpp"

namespace univrank {

namespace {

constexpr unsigned kBaseBits = 64;
constexpr unsigned kTableLevels = 5;

unsigned level_bits(unsigned level) { return kBaseBits << level; }

Rational pow2_inverse(unsigned bits) {
  Rational r(Integer(1), Integer(1) << bits);
  return r;
}

/// Refines initial isolating intervals and tries every subset of at most
/// half the roots: an integer factor of a totally real polynomial is the
/// product of (x - r) over some subset of its real roots.
bool totally_real_irreducible(const ZPoly& f, const std::vector<Interval>& initial) {
  const std::size_t n = initial.size();
  if (n <= 1) return true;
  unsigned bits = 32;
  for (;;) {
    std::vector<Interval> roots;
    roots.reserve(n);
    for (const auto& r : initial) roots.push_back(poly::refine_root(f, r, pow2_inverse(bits)));
    bool undecided = false;
    const std::size_t limit = std::size_t{1} << n;
    for (std::size_t mask = 1; mask < limit; ++mask) {
      const int size = __builtin_popcountll(mask);
      if (static_cast<std::size_t>(2 * size) > n) continue;
      // product of (x - r_h), coefficients lowest first
      std::vector<Interval> prod{Interval::point(1)};
      for (std::size_t h = 0; h < n; ++h) {
        if (!(mask & (std::size_t{1} << h))) continue;
        std::vector<Interval> next(prod.size() + 1, Interval::point(0));
        for (std::size_t i = 0; i < prod.size(); ++i) {
          next[i + 1] += prod[i];
          next[i] -= prod[i] * roots[h];
        }
        prod = std::move(next);
      }
      bool possible = true;
      bool narrow = true;
      ZPoly candidate;
      for (const auto& c : prod) {
        Integer lo = ceil_of(c.lo());
        if (Rational(lo) > c.hi()) {
          possible = false;
          break;
        }
        if (c.width() >= 1) narrow = false;
        candidate.push_back(lo);
      }
      if (!possible) continue;
      if (!narrow) {
        undecided = true;
        continue;
      }
      if (poly::divides(candidate, f)) return false;
    }
    if (!undecided) return true;
    bits *= 2;
  }
}

}  // namespace

FieldPtr NumberField::create(ZPoly min_poly, IntMatrix basis_num, Integer basis_den) {
  std::shared_ptr<NumberField> f(new NumberField());
  f->min_poly_ = std::move(min_poly);
  f->basis_num_ = std::move(basis_num);
  f->basis_den_ = std::move(basis_den);
  f->build();
  return f;
}

FieldPtr NumberField::from_polynomial(ZPoly min_poly) {
  poly::trim(min_poly);
  const int n = poly::degree(min_poly);
  if (n < 1) throw UsageError("minimal polynomial must have degree >= 1");
  IntMatrix basis = matrix::zeros(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return create(std::move(min_poly), std::move(basis), Integer(1));
}

FieldPtr NumberField::rationals() {
  static const FieldPtr q = from_polynomial(ZPoly{Integer(0), Integer(1)});
  return q;
}

void NumberField::build() {
  poly::trim(min_poly_);
  const int deg = poly::degree(min_poly_);
  if (deg < 1) throw UsageError("minimal polynomial must have degree >= 1");
  if (min_poly_.back() != 1) throw UsageError("minimal polynomial must be monic");
  n_ = static_cast<std::size_t>(deg);
  if (basis_den_ <= 0) throw UsageError("basis denominator must be positive");
  if (basis_num_.size() != n_) throw UsageError("basis matrix must be N x N");
  for (const auto& row : basis_num_) {
    if (row.size() != n_) throw UsageError("basis matrix must be N x N");
  }

  if (!poly::is_squarefree(min_poly_)) throw HypothesisError("reducible polynomial: repeated factor");
  const int real_roots = poly::count_real_roots(min_poly_);
  if (real_roots < deg) {
    throw HypothesisError("complex roots detected: only " + std::to_string(real_roots) + " of " + std::to_string(deg) +
                          " roots are real");
  }
  roots_ = poly::isolate_real_roots(min_poly_);
  if (!totally_real_irreducible(min_poly_, roots_)) throw HypothesisError("reducible polynomial");

  RatMatrix basis = matrix::to_rational(basis_num_);
  for (auto& row : basis) {
    for (auto& x : row) x /= basis_den_;
  }
  auto inv = matrix::inverse(basis);
  if (!inv) throw HypothesisError("basis matrix is singular");
  power_to_basis_ = std::move(*inv);

  // b_i as polynomials in theta
  std::vector<QPoly> basis_poly(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    basis_poly[i] = basis[i];
    poly::trim(basis_poly[i]);
  }
  const QPoly fq = poly::to_rational(min_poly_);
  mult_.assign(n_ * n_ * n_, Integer(0));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      QPoly prod = poly::rem(poly::mul(basis_poly[i], basis_poly[j]), fq);
      auto c = rational_coords(prod);
      for (std::size_t k = 0; k < n_; ++k) {
        if (c[k].get_den() != 1) throw HypothesisError("basis is not closed under multiplication");
        mult_[(i * n_ + j) * n_ + k] = c[k].get_num();
        mult_[(j * n_ + i) * n_ + k] = c[k].get_num();
      }
    }
  }

  auto sums = poly::power_sums(min_poly_, n_);
  basis_trace_.assign(n_, Integer(0));
  for (std::size_t i = 0; i < n_; ++i) {
    Rational t = 0;
    for (std::size_t k = 0; k < n_; ++k) t += basis[i][k] * sums[k];
    if (t.get_den() != 1) throw HypothesisError("basis element with non-integral trace");
    basis_trace_[i] = t.get_num();
  }

  one_.assign(n_, Integer(0));
  for (std::size_t k = 0; k < n_; ++k) {
    const Rational& c = power_to_basis_[0][k];
    if (c.get_den() != 1) throw HypothesisError("1 is not an integral combination of the basis");
    one_[k] = c.get_num();
  }
  first_is_one_ = one_[0] == 1 && std::all_of(one_.begin() + 1, one_.end(), [](const Integer& x) { return x == 0; });

  trace_matrix_ = matrix::zeros(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      Integer t = 0;
      for (std::size_t k = 0; k < n_; ++k) t += mult_[(i * n_ + j) * n_ + k] * basis_trace_[k];
      trace_matrix_[i][j] = t;
    }
  }
  disc_ = matrix::determinant(trace_matrix_);
  if (disc_ == 0) throw HypothesisError("degenerate trace form");
  trace_inverse_ = *matrix::inverse(matrix::to_rational(trace_matrix_));
}

Coords NumberField::from_integer(const Integer& x) const { return scale(one_, x); }

void NumberField::check_coords(const Coords& a) const {
  if (a.size() != n_) {
    throw UsageError("coordinate vector of length " + std::to_string(a.size()) + " for a field of degree " +
                     std::to_string(n_));
  }
}

Coords NumberField::add(const Coords& a, const Coords& b) const {
  Coords out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = a[i] + b[i];
  return out;
}

Coords NumberField::sub(const Coords& a, const Coords& b) const {
  Coords out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = a[i] - b[i];
  return out;
}

Coords NumberField::scale(const Coords& a, const Integer& s) const {
  Coords out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = a[i] * s;
  return out;
}

Coords NumberField::mul(const Coords& a, const Coords& b) const {
  Coords out(n_, Integer(0));
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (b[j] == 0) continue;
      Integer ab = a[i] * b[j];
      const Integer* c = &mult_[(i * n_ + j) * n_];
      for (std::size_t k = 0; k < n_; ++k) {
        if (c[k] != 0) out[k] += ab * c[k];
      }
    }
  }
  return out;
}

Coords NumberField::power(const Coords& a, unsigned long e) const {
  Coords result = one_;
  Coords base = a;
  while (e > 0) {
    if (e & 1UL) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

Integer NumberField::trace(const Coords& a) const {
  Integer t = 0;
  for (std::size_t i = 0; i < n_; ++i) t += a[i] * basis_trace_[i];
  return t;
}

Integer NumberField::trace_product(const Coords& a, const Coords& b) const {
  Integer t = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < n_; ++j) row += trace_matrix_[i][j] * b[j];
    t += a[i] * row;
  }
  return t;
}

IntMatrix NumberField::multiplication_matrix(const Coords& a) const {
  IntMatrix m = matrix::zeros(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = 0; k < n_; ++k) m[k][j] += a[i] * mult_[(i * n_ + j) * n_ + k];
    }
  }
  return m;
}

Integer NumberField::norm(const Coords& a) const { return matrix::determinant(multiplication_matrix(a)); }

Integer NumberField::element_discriminant(const Coords& a) const {
  std::vector<Integer> traces(2 * n_ - 1);
  Coords p = one_;
  for (std::size_t k = 0; k < 2 * n_ - 1; ++k) {
    traces[k] = trace(p);
    if (k + 1 < 2 * n_ - 1) p = mul(p, a);
  }
  IntMatrix h = matrix::zeros(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) h[i][j] = traces[i + j];
  }
  return matrix::determinant(h);
}

bool NumberField::is_zero(const Coords& a) const {
  return std::all_of(a.begin(), a.end(), [](const Integer& x) { return x == 0; });
}

QPoly NumberField::power_representation(const Coords& a) const {
  QPoly out(n_, Rational(0));
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t k = 0; k < n_; ++k) out[k] += Rational(a[i] * basis_num_[i][k]);
  }
  for (auto& c : out) c /= basis_den_;
  poly::trim(out);
  return out;
}

std::vector<Rational> NumberField::rational_coords(const QPoly& p) const {
  QPoly r = poly::degree(p) >= static_cast<int>(n_) ? poly::rem(p, poly::to_rational(min_poly_)) : p;
  std::vector<Rational> out(n_, Rational(0));
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] == 0) continue;
    for (std::size_t i = 0; i < n_; ++i) out[i] += r[k] * power_to_basis_[k][i];
  }
  return out;
}

std::vector<Rational> NumberField::inverse(const Coords& a) const {
  if (is_zero(a)) throw UsageError("inverse of zero");
  auto m = matrix::inverse(matrix::to_rational(multiplication_matrix(a)));
  std::vector<Rational> out(n_, Rational(0));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[i] += (*m)[i][j] * one_[j];
  }
  return out;
}

std::shared_ptr<const EmbeddingTable> NumberField::embedding_table(unsigned level) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (tables_.size() > level && tables_[level]) return tables_[level];
  auto table = std::make_shared<EmbeddingTable>();
  table->bits = level_bits(level);
  const Rational width = pow2_inverse(table->bits);
  // start from the finest cached table
  for (std::size_t h = 0; h < n_; ++h) {
    Interval start = roots_[h];
    for (std::size_t l = std::min<std::size_t>(level, tables_.size()); l-- > 0;) {
      if (tables_[l]) {
        start = tables_[l]->roots[h];
        break;
      }
    }
    table->roots.push_back(poly::refine_root(min_poly_, start, width));
  }
  table->basis.assign(n_, std::vector<Interval>(n_));
  for (std::size_t h = 0; h < n_; ++h) {
    for (std::size_t j = 0; j < n_; ++j) {
      QPoly bj(n_, Rational(0));
      for (std::size_t k = 0; k < n_; ++k) bj[k] = Rational(basis_num_[j][k], basis_den_);
      poly::trim(bj);
      table->basis[h][j] = poly::eval(bj, table->roots[h]);
    }
  }
  if (tables_.size() <= level) tables_.resize(level + 1);
  tables_[level] = table;
  return table;
}

Interval NumberField::refined_root(std::size_t h, const Rational& width) const {
  return poly::refine_root(min_poly_, roots_.at(h), width);
}

namespace {

std::vector<Interval> combine(const EmbeddingTable& t, const Coords& a) {
  const std::size_t n = a.size();
  std::vector<Interval> out(n, Interval::point(0));
  for (std::size_t h = 0; h < n; ++h) {
    Interval acc = Interval::point(0);
    for (std::size_t j = 0; j < n; ++j) {
      if (a[j] == 0) continue;
      acc += t.basis[h][j] * Rational(a[j]);
    }
    out[h] = acc;
  }
  return out;
}

}  // namespace

std::vector<Interval> NumberField::embeddings_coarse(const Coords& a) const {
  check_coords(a);
  return combine(*embedding_table(0), a);
}

std::vector<Interval> NumberField::embeddings(const Coords& a, const Rational& width) const {
  check_coords(a);
  if (width <= 0) throw UsageError("enclosure width must be positive");
  for (unsigned level = 0; level < kTableLevels; ++level) {
    auto out = combine(*embedding_table(level), a);
    bool ok = std::all_of(out.begin(), out.end(), [&](const Interval& iv) { return iv.width() <= width; });
    if (ok) return out;
  }
  // direct evaluation on ever finer root intervals
  QPoly p = power_representation(a);
  std::vector<Interval> out(n_);
  for (std::size_t h = 0; h < n_; ++h) {
    unsigned bits = level_bits(kTableLevels);
    for (;;) {
      Interval v = poly::eval(p, refined_root(h, pow2_inverse(bits)));
      if (v.width() <= width) {
        out[h] = v;
        break;
      }
      bits *= 2;
    }
  }
  return out;
}

std::vector<int> NumberField::embedding_signs(const Coords& a) const {
  check_coords(a);
  std::vector<int> signs(n_, 0);
  if (is_zero(a)) return signs;
  std::vector<bool> known(n_, false);
  std::size_t remaining = n_;
  for (unsigned level = 0; level < kTableLevels && remaining > 0; ++level) {
    auto enc = combine(*embedding_table(level), a);
    for (std::size_t h = 0; h < n_; ++h) {
      if (known[h]) continue;
      int s = enc[h].certain_sign();
      if (s != 0) {
        signs[h] = s;
        known[h] = true;
        --remaining;
      }
    }
  }
  if (remaining == 0) return signs;
  // a != 0 has no zero embedding (the minimal polynomial is irreducible),
  // so refinement terminates
  QPoly p = power_representation(a);
  for (std::size_t h = 0; h < n_; ++h) {
    if (known[h]) continue;
    unsigned bits = level_bits(kTableLevels);
    for (;;) {
      Interval root = refined_root(h, pow2_inverse(bits));
      if (root.is_point()) {
        signs[h] = sgn(poly::eval(p, root.lo()));
        break;
      }
      int s = poly::eval(p, root).certain_sign();
      if (s != 0) {
        signs[h] = s;
        break;
      }
      bits *= 2;
    }
  }
  return signs;
}

bool NumberField::is_totally_positive(const Coords& a) const {
  check_coords(a);
  if (is_zero(a)) return false;
  // cheap rejection: trace <= 0 means some embedding is <= 0
  if (trace(a) <= 0) return false;
  auto s = embedding_signs(a);
  return std::all_of(s.begin(), s.end(), [](int x) { return x > 0; });
}

bool NumberField::succeeds_or_equal(const Coords& a, const Coords& b) const {
  Coords d = sub(a, b);
  return is_zero(d) || is_totally_positive(d);
}

const std::vector<std::vector<Interval>>& NumberField::inverse_embedding() const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (inverse_embedding_) return *inverse_embedding_;
  }
  auto table = embedding_table(1);
  std::vector<std::vector<Interval>> inv(n_, std::vector<Interval>(n_, Interval::point(0)));
  // E^{-1} = G^{-1} E^T with E[h][j] = sigma_h(b_j) and G = E^T E
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t h = 0; h < n_; ++h) {
      Interval acc = Interval::point(0);
      for (std::size_t k = 0; k < n_; ++k) {
        if (trace_inverse_[j][k] == 0) continue;
        acc += table->basis[h][k] * trace_inverse_[j][k];
      }
      inv[j][h] = acc;
    }
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (!inverse_embedding_) inverse_embedding_ = std::move(inv);
  return *inverse_embedding_;
}

bool NumberField::same_as(const NumberField& other) const {
  return min_poly_ == other.min_poly_ && basis_num_ == other.basis_num_ && basis_den_ == other.basis_den_;
}

nlohmann::json NumberField::to_json() const {
  nlohmann::json j;
  nlohmann::json mp = nlohmann::json::array();
  for (const auto& c : min_poly_) mp.push_back(c.get_str());
  j["min_poly"] = mp;
  nlohmann::json bn = nlohmann::json::array();
  for (const auto& row : basis_num_) bn.push_back(coords_to_json(row));
  j["basis_num"] = bn;
  j["basis_den"] = basis_den_.get_str();
  j["disc"] = disc_.get_str();
  return j;
}

FieldPtr NumberField::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("min_poly")) throw UsageError("field descriptor must be an object with min_poly");
  ZPoly mp;
  for (const auto& c : j.at("min_poly")) mp.push_back(integer_from_json(c));
  poly::trim(mp);
  const std::size_t n = mp.empty() ? 0 : mp.size() - 1;
  IntMatrix basis;
  Integer den = 1;
  if (j.contains("basis_num")) {
    for (const auto& row : j.at("basis_num")) basis.push_back(coords_from_json(row));
    if (j.contains("basis_den")) den = integer_from_json(j.at("basis_den"));
  } else {
    basis = matrix::zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;
  }
  auto f = create(std::move(mp), std::move(basis), den);
  if (j.contains("disc") && integer_from_json(j.at("disc")) != f->discriminant()) {
    throw HypothesisError("descriptor discriminant " + integer_from_json(j.at("disc")).get_str() +
                          " does not match the computed " + f->discriminant().get_str());
  }
  return f;
}

AlgebraicInt::AlgebraicInt(FieldPtr field, Coords coords) : field_(std::move(field)), coords_(std::move(coords)) {
  if (!field_) throw UsageError("algebraic integer without a field");
  field_->check_coords(coords_);
}

AlgebraicInt AlgebraicInt::from_integer(const FieldPtr& field, const Integer& x) {
  return AlgebraicInt(field, field->from_integer(x));
}

AlgebraicInt AlgebraicInt::operator-() const { return AlgebraicInt(field_, field_->scale(coords_, Integer(-1))); }

AlgebraicInt operator+(const AlgebraicInt& a, const AlgebraicInt& b) {
  return AlgebraicInt(a.field_, a.field_->add(a.coords_, b.coords_));
}

AlgebraicInt operator-(const AlgebraicInt& a, const AlgebraicInt& b) {
  return AlgebraicInt(a.field_, a.field_->sub(a.coords_, b.coords_));
}

AlgebraicInt operator*(const AlgebraicInt& a, const AlgebraicInt& b) {
  return AlgebraicInt(a.field_, a.field_->mul(a.coords_, b.coords_));
}

AlgebraicInt operator*(const Integer& s, const AlgebraicInt& a) {
  return AlgebraicInt(a.field_, a.field_->scale(a.coords_, s));
}

Coords Compositum::embed_k(const Coords& a) const {
  const std::size_t nk = k_field->degree();
  const std::size_t nl = l_field->degree();
  const Coords& one_l = l_field->one();
  Coords out(nk * nl, Integer(0));
  for (std::size_t i = 0; i < nk; ++i) {
    for (std::size_t j = 0; j < nl; ++j) out[i * nl + j] = a[i] * one_l[j];
  }
  return out;
}

Coords Compositum::embed_l(const Coords& a) const {
  const std::size_t nk = k_field->degree();
  const std::size_t nl = l_field->degree();
  const Coords& one_k = k_field->one();
  Coords out(nk * nl, Integer(0));
  for (std::size_t i = 0; i < nk; ++i) {
    for (std::size_t j = 0; j < nl; ++j) out[i * nl + j] = one_k[i] * a[j];
  }
  return out;
}

Compositum compositum(const FieldPtr& k_field, const FieldPtr& l_field) {
  if (gcd(k_field->discriminant(), l_field->discriminant()) != 1) {
    throw HypothesisError("discriminants not coprime: gcd(" + k_field->discriminant().get_str() + ", " +
                          l_field->discriminant().get_str() + ") != 1");
  }
  const std::size_t nk = k_field->degree();
  const std::size_t nl = l_field->degree();
  const std::size_t n = nk * nl;

  // structure constants of the tensor product basis b_i (x) c_j
  auto tensor_mul = [&](const Coords& x, const Coords& y) {
    Coords out(n, Integer(0));
    for (std::size_t a = 0; a < n; ++a) {
      if (x[a] == 0) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (y[b] == 0) continue;
        Integer xy = x[a] * y[b];
        const std::size_t i1 = a / nl, j1 = a % nl, i2 = b / nl, j2 = b % nl;
        for (std::size_t i = 0; i < nk; ++i) {
          const Integer& ck = k_field->structure(i1, i2, i);
          if (ck == 0) continue;
          for (std::size_t j = 0; j < nl; ++j) {
            const Integer& cl = l_field->structure(j1, j2, j);
            if (cl != 0) out[i * nl + j] += xy * ck * cl;
          }
        }
      }
    }
    return out;
  };
  auto tensor_trace = [&](const Coords& x) {
    Integer t = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (x[a] == 0) continue;
      Coords bi(nk, Integer(0));
      Coords cj(nl, Integer(0));
      bi[a / nl] = 1;
      cj[a % nl] = 1;
      t += x[a] * k_field->trace(bi) * l_field->trace(cj);
    }
    return t;
  };

  Compositum result;
  result.k_field = k_field;
  result.l_field = l_field;
  auto theta_coords = [](const FieldPtr& f) {
    QPoly x{Rational(0), Rational(1)};
    auto c = f->rational_coords(x);
    Coords out;
    for (const auto& q : c) out.push_back(q.get_num());
    return out;
  };
  const Coords theta_k = result.embed_k(theta_coords(k_field));
  const Coords theta_l = result.embed_l(theta_coords(l_field));
  Coords one(n, Integer(0));
  {
    Coords ok = result.embed_k(k_field->one());
    one = ok;
  }

  for (long t = 1; t < 64; ++t) {
    Coords gamma(n);
    for (std::size_t a = 0; a < n; ++a) gamma[a] = theta_k[a] + theta_l[a] * t;
    std::vector<Coords> powers{one};
    for (std::size_t k = 1; k < n; ++k) powers.push_back(tensor_mul(powers.back(), gamma));
    std::vector<Integer> sums(n + 1);
    sums[0] = static_cast<unsigned long>(n);
    Coords p = one;
    for (std::size_t k = 1; k <= n; ++k) {
      p = tensor_mul(p, gamma);
      sums[k] = tensor_trace(p);
    }
    ZPoly charpoly = poly::from_power_sums(sums, n);
    if (!poly::is_squarefree(charpoly)) continue;
    // rows of the power matrix are the tensor coordinates of gamma^k
    RatMatrix pm(n);
    for (std::size_t k = 0; k < n; ++k) {
      for (const auto& x : powers[k]) pm[k].emplace_back(x);
    }
    auto inv = matrix::inverse(pm);
    if (!inv) continue;
    // tensor basis element a = sum_k inv[a][k] gamma^k
    Integer den = 1;
    for (const auto& row : *inv) {
      for (const auto& x : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    }
    IntMatrix basis = matrix::zeros(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t k = 0; k < n; ++k) {
        Rational v = (*inv)[a][k] * den;
        basis[a][k] = v.get_num();
      }
    }
    result.field = NumberField::create(std::move(charpoly), std::move(basis), den);
    return result;
  }
  throw HypothesisError("no primitive element found for the compositum");
}

bool canonical_less(const AlgebraicInt& a, const AlgebraicInt& b) {
  Integer ta = a.trace();
  Integer tb = b.trace();
  if (ta != tb) return ta < tb;
  Integer na = abs(a.norm());
  Integer nb = abs(b.norm());
  if (na != nb) return na < nb;
  return a.coords() < b.coords();
}

void sort_canonical(std::vector<AlgebraicInt>& elements) {
  // precompute keys, norms are determinants
  struct Keyed {
    Integer trace;
    Integer norm;
    AlgebraicInt value;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(elements.size());
  for (auto& e : elements) keyed.push_back({e.trace(), abs(e.norm()), std::move(e)});
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& x, const Keyed& y) {
    if (x.trace != y.trace) return x.trace < y.trace;
    if (x.norm != y.norm) return x.norm < y.norm;
    return x.value.coords() < y.value.coords();
  });
  for (std::size_t i = 0; i < keyed.size(); ++i) elements[i] = std::move(keyed[i].value);
}

nlohmann::json coords_to_json(const Coords& c) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : c) out.push_back(x.get_str());
  return out;
}

Coords coords_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw UsageError("coordinate vector must be a JSON array");
  Coords out;
  for (const auto& x : j) out.push_back(integer_from_json(x));
  return out;
}

nlohmann::json integer_json(const Integer& x) { return x.get_str(); }

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_integer(j.get<std::string>());
  if (j.is_number_integer()) return Integer(j.get<long>());
  throw UsageError("expected an integer (decimal string or number), got " + j.dump());
}

}  // namespace univrank
