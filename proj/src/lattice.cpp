#include "univrank/lattice.hpp"

#include <algorithm>
#include <set>

#include "univrank/enumerate.hpp"
#include "univrank/errors.hpp"

namespace univrank {

namespace {

/// det of the leading k x k block of a matrix over O_F, by cofactor
/// expansion with memoised column subsets.
Coords leading_minor(const NumberField& f, const std::vector<std::vector<Coords>>& m, std::size_t k) {
  // dp over rows: minors[mask] = det of rows 0..|mask|-1 with column set mask
  std::vector<Coords> minors(std::size_t{1} << k);
  minors[0] = f.one();
  for (std::size_t mask = 1; mask < minors.size(); ++mask) {
    const int row = __builtin_popcountll(mask) - 1;
    Coords acc(f.degree(), Integer(0));
    for (std::size_t col = 0; col < k; ++col) {
      if (!(mask & (std::size_t{1} << col))) continue;
      const std::size_t sub = mask & ~(std::size_t{1} << col);
      const int above = __builtin_popcountll(mask & ((std::size_t{1} << col) - 1));
      Coords term = f.mul(m[static_cast<std::size_t>(row)][col], minors[sub]);
      if ((row + above) % 2 == 0) {
        acc = f.add(acc, term);
      } else {
        acc = f.sub(acc, term);
      }
    }
    minors[mask] = std::move(acc);
  }
  return minors.back();
}

std::vector<Interval> box_bounds(const AlgebraicInt& ai, const AlgebraicInt& aj) {
  const auto& f = *ai.field();
  Coords prod = f.mul(ai.coords(), aj.coords());
  auto enc = f.embeddings(prod, Rational(Integer(1), Integer(1) << 32));
  std::vector<Interval> bounds;
  for (const auto& e : enc) {
    Rational r = 2 * sqrt_upper(e.hi() > 0 ? e.hi() : Rational(0), 32);
    bounds.emplace_back(-r, r);
  }
  return bounds;
}

void require_totally_positive(const AlgebraicInt& a, const char* what) {
  if (!a.is_totally_positive()) throw HypothesisError(std::string(what) + " is not totally positive");
}

}  // namespace

QuadLatticeForm::QuadLatticeForm(FieldPtr field, std::vector<std::vector<Coords>> gram)
    : field_(std::move(field)), gram_(std::move(gram)) {
  const std::size_t r = gram_.size();
  if (r == 0) throw UsageError("lattice of rank 0");
  for (std::size_t i = 0; i < r; ++i) {
    if (gram_[i].size() != r) throw UsageError("gram matrix must be square");
    for (std::size_t j = 0; j < r; ++j) field_->check_coords(gram_[i][j]);
  }
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      if (gram_[i][j] != gram_[j][i]) throw UsageError("gram matrix must be symmetric");
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (!field_->is_totally_positive(gram_[i][i])) throw HypothesisError("diagonal entry is not totally positive");
  }
  // leading minors of 2B = (2 a_ii on the diagonal, b_ij off it)
  std::vector<std::vector<Coords>> twice = gram_;
  for (std::size_t i = 0; i < r; ++i) twice[i][i] = field_->scale(gram_[i][i], Integer(2));
  for (std::size_t k = 2; k <= r; ++k) {
    if (!field_->is_totally_positive(leading_minor(*field_, twice, k))) {
      throw HypothesisError("form is not totally positive definite (leading minor " + std::to_string(k) + ")");
    }
  }
}

QuadLatticeForm QuadLatticeForm::diagonal(const FieldPtr& field, const std::vector<Coords>& entries) {
  const std::size_t r = entries.size();
  std::vector<std::vector<Coords>> gram(r, std::vector<Coords>(r, Coords(field->degree(), Integer(0))));
  for (std::size_t i = 0; i < r; ++i) gram[i][i] = entries[i];
  return QuadLatticeForm(field, std::move(gram));
}

QuadLatticeForm QuadLatticeForm::sum_of_squares(const FieldPtr& field, std::size_t rank) {
  return diagonal(field, std::vector<Coords>(rank, field->one()));
}

QuadLatticeForm QuadLatticeForm::from_json(const nlohmann::json& j, const FieldPtr& field) {
  if (!j.contains("gram")) throw UsageError("form JSON needs a \"gram\" matrix");
  std::vector<std::vector<Coords>> gram;
  for (const auto& row : j.at("gram")) {
    std::vector<Coords> r;
    for (const auto& e : row) r.push_back(coords_from_json(e));
    gram.push_back(std::move(r));
  }
  return QuadLatticeForm(field, std::move(gram));
}

nlohmann::json QuadLatticeForm::to_json() const {
  nlohmann::json g = nlohmann::json::array();
  for (const auto& row : gram_) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& e : row) r.push_back(coords_to_json(e));
    g.push_back(r);
  }
  return {{"field", field_->to_json()}, {"gram", g}};
}

Coords QuadLatticeForm::evaluate(const std::vector<Coords>& x) const {
  const auto& f = *field_;
  const std::size_t r = rank();
  Coords acc(f.degree(), Integer(0));
  for (std::size_t i = 0; i < r; ++i) {
    if (f.is_zero(x[i])) continue;
    acc = f.add(acc, f.mul(gram_[i][i], f.mul(x[i], x[i])));
    for (std::size_t j = i + 1; j < r; ++j) {
      if (f.is_zero(x[j]) || f.is_zero(gram_[i][j])) continue;
      acc = f.add(acc, f.mul(gram_[i][j], f.mul(x[i], x[j])));
    }
  }
  return acc;
}

RatMatrix QuadLatticeForm::trace_gram() const {
  const auto& f = *field_;
  const std::size_t n = f.degree();
  const std::size_t r = rank();
  // products of basis elements b_k b_l
  std::vector<std::vector<Coords>> bb(n, std::vector<Coords>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      Coords c(n, Integer(0));
      for (std::size_t t = 0; t < n; ++t) c[t] = f.structure(k, l, t);
      bb[k][l] = std::move(c);
    }
  }
  RatMatrix g(r * n, std::vector<Rational>(r * n, Rational(0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          Rational t(f.trace_product(gram_[i][j], bb[k][l]));
          if (i != j) t /= 2;
          g[i * n + k][j * n + l] = t;
        }
      }
    }
  }
  return g;
}

std::vector<AlgebraicInt> cauchy_schwarz_box(const AlgebraicInt& ai, const AlgebraicInt& aj, long padding) {
  require_totally_positive(ai, "a_i");
  require_totally_positive(aj, "a_j");
  const auto& field = ai.field();
  const Coords four_prod = field->scale(field->mul(ai.coords(), aj.coords()), Integer(4));
  auto members = enumerate_embedding_box(*field, box_bounds(ai, aj), [&](const Coords& b) {
    return field->succeeds_or_equal(four_prod, field->mul(b, b));
  }, padding);
  std::vector<AlgebraicInt> out;
  out.reserve(members.size());
  for (auto& c : members) out.emplace_back(field, std::move(c));
  return out;
}

bool cauchy_schwarz_box_is_zero(const AlgebraicInt& ai, const AlgebraicInt& aj) {
  require_totally_positive(ai, "a_i");
  require_totally_positive(aj, "a_j");
  const auto& field = ai.field();
  const Coords four_prod = field->scale(field->mul(ai.coords(), aj.coords()), Integer(4));
  auto hit = find_in_embedding_box(*field, box_bounds(ai, aj), [&](const Coords& b) {
    return !field->is_zero(b) && field->succeeds_or_equal(four_prod, field->mul(b, b));
  });
  return !hit.has_value();
}

std::vector<AlgebraicInt> cauchy_schwarz_box_by_trace_form(const AlgebraicInt& ai, const AlgebraicInt& aj) {
  require_totally_positive(ai, "a_i");
  require_totally_positive(aj, "a_j");
  const auto& field = ai.field();
  const Coords four_prod = field->scale(field->mul(ai.coords(), aj.coords()), Integer(4));
  // sum_h sigma_h(b)^2 <= sum_h 4 sigma_h(a_i a_j)
  ShortVectorEnumerator walk(matrix::to_rational(field->trace_matrix()), Rational(field->trace(four_prod)));
  std::vector<Coords> members;
  walk.run([&](const std::vector<Integer>& v, const Rational&) {
    if (field->succeeds_or_equal(four_prod, field->mul(v, v))) members.push_back(v);
    return true;
  });
  std::sort(members.begin(), members.end());
  std::vector<AlgebraicInt> out;
  for (auto& c : members) out.emplace_back(field, std::move(c));
  return out;
}

GramCertificate diagonality_certificate(const std::vector<AlgebraicInt>& elements) {
  if (elements.empty()) throw UsageError("certificate needs at least one element");
  GramCertificate cert;
  cert.field = elements.front().field();
  for (const auto& e : elements) {
    if (!e.field()->same_as(*cert.field)) throw UsageError("elements from different fields");
    require_totally_positive(e, "element");
  }
  cert.elements = elements;
  cert.valid = true;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      PairEvidence ev;
      ev.i = i;
      ev.j = j;
      for (auto& b : cauchy_schwarz_box(elements[i], elements[j])) ev.box.push_back(b.coords());
      if (ev.box.size() != 1) cert.valid = false;
      cert.pairs.push_back(std::move(ev));
    }
  }
  cert.rank_bound = cert.valid ? elements.size() : 0;
  return cert;
}

nlohmann::json GramCertificate::to_json() const {
  nlohmann::json els = nlohmann::json::array();
  for (const auto& e : elements) els.push_back(coords_to_json(e.coords()));
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : pairs) {
    nlohmann::json box = nlohmann::json::array();
    for (const auto& b : p.box) box.push_back(coords_to_json(b));
    ps.push_back({{"i", p.i}, {"j", p.j}, {"box", box}});
  }
  return {{"field", field->to_json()},
          {"elements", els},
          {"pairs", ps},
          {"rank_bound", rank_bound},
          {"valid", valid},
          {"soundness",
           "A lattice representing every a_i has vectors v_i with Q(v_i) = a_i; the Gram entry B(v_i, v_j) = b_ij/2 "
           "satisfies 4 a_i a_j - b_ij^2 >= 0 in every embedding, so b_ij lies in the listed box. When every box is "
           "{0} the Gram matrix is diagonal with totally positive diagonal, has rank n, and bounds the lattice rank "
           "from below."}};
}

GramCertificate GramCertificate::from_json(const nlohmann::json& j) {
  GramCertificate cert;
  cert.field = NumberField::from_json(j.at("field"));
  for (const auto& e : j.at("elements")) cert.elements.emplace_back(cert.field, coords_from_json(e));
  for (const auto& p : j.at("pairs")) {
    PairEvidence ev;
    ev.i = p.at("i").get<std::size_t>();
    ev.j = p.at("j").get<std::size_t>();
    for (const auto& b : p.at("box")) ev.box.push_back(coords_from_json(b));
    cert.pairs.push_back(std::move(ev));
  }
  cert.rank_bound = j.at("rank_bound").get<std::size_t>();
  cert.valid = j.at("valid").get<bool>();
  return cert;
}

ReplayReport replay_certificate(const GramCertificate& cert) {
  ReplayReport report;
  auto fail = [&](std::string why) {
    report.ok = false;
    report.problems.push_back(std::move(why));
  };
  const std::size_t n = cert.elements.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!cert.elements[i].is_totally_positive()) fail("element " + std::to_string(i) + " is not totally positive");
  }
  if (!report.ok) return report;
  if (cert.pairs.size() != n * (n - 1) / 2) fail("pair count does not match the element count");
  bool all_zero = true;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& p : cert.pairs) {
    if (p.i >= p.j || p.j >= n) {
      fail("bad pair index");
      continue;
    }
    seen.insert({p.i, p.j});
    auto recomputed = cauchy_schwarz_box_by_trace_form(cert.elements[p.i], cert.elements[p.j]);
    std::vector<Coords> coords;
    for (const auto& b : recomputed) coords.push_back(b.coords());
    std::vector<Coords> listed = p.box;
    std::sort(listed.begin(), listed.end());
    if (coords != listed) {
      fail("box for pair (" + std::to_string(p.i) + "," + std::to_string(p.j) + ") differs from re-enumeration");
    }
    if (coords.size() != 1) all_zero = false;
  }
  if (seen.size() != cert.pairs.size()) fail("duplicate pairs");
  if (cert.valid != all_zero) fail("validity flag disagrees with the boxes");
  if (cert.valid && cert.rank_bound != n) fail("rank bound must equal the element count");
  if (!cert.valid && cert.rank_bound != 0) fail("invalid certificate claims a rank bound");
  return report;
}

std::vector<AlgebraicInt> totally_positive_up_to_trace(const FieldPtr& field, const Integer& bound, long padding) {
  if (bound <= 0) return {};
  std::vector<Interval> bounds(field->degree(), Interval(Rational(0), Rational(bound)));
  auto members = enumerate_embedding_box(*field, bounds, [&](const Coords& c) {
    return field->trace(c) <= bound && field->is_totally_positive(c);
  }, padding);
  std::vector<AlgebraicInt> out;
  out.reserve(members.size());
  for (auto& c : members) out.emplace_back(field, std::move(c));
  sort_canonical(out);
  return out;
}

namespace {

std::vector<Coords> split_vector(const std::vector<Integer>& v, std::size_t rank, std::size_t degree) {
  std::vector<Coords> x(rank, Coords(degree));
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t k = 0; k < degree; ++k) x[i][k] = v[i * degree + k];
  }
  return x;
}

}  // namespace

Representation represents(const QuadLatticeForm& form, const AlgebraicInt& alpha) {
  require_totally_positive(alpha, "alpha");
  const auto& f = *form.field();
  const Rational target(alpha.trace());
  Representation rep;
  ShortVectorEnumerator walk(form.trace_gram(), target);
  walk.run([&](const std::vector<Integer>& v, const Rational& value) {
    ++rep.vectors_examined;
    // Q(v) = alpha forces Tr(Q(v)) = Tr(alpha)
    if (value != target) return true;
    if (form.evaluate(split_vector(v, form.rank(), f.degree())) == alpha.coords()) {
      if (!rep.represented || v > rep.witness) rep.witness = v;
      rep.represented = true;
    }
    return true;
  });
  return rep;
}

UniversalityReport universality_check(const QuadLatticeForm& form, const Integer& bound) {
  UniversalityReport report;
  report.trace_bound = bound;
  if (bound <= 0) return report;
  const auto& f = *form.field();
  std::set<Coords> values;
  ShortVectorEnumerator walk(form.trace_gram(), Rational(bound));
  walk.run([&](const std::vector<Integer>& v, const Rational&) {
    auto x = split_vector(v, form.rank(), f.degree());
    Coords q = form.evaluate(x);
    if (!f.is_zero(q)) values.insert(std::move(q));
    return true;
  });
  for (auto& alpha : totally_positive_up_to_trace(form.field(), bound)) {
    ++report.checked;
    if (!values.count(alpha.coords())) report.missed.push_back(alpha);
  }
  return report;
}

nlohmann::json UniversalityReport::to_json() const {
  nlohmann::json missed_json = nlohmann::json::array();
  for (const auto& a : missed) missed_json.push_back(coords_to_json(a.coords()));
  return {{"trace_bound", trace_bound.get_str()},
          {"checked", checked},
          {"missed", missed_json},
          {"universal_up_to_bound", universal_up_to_bound()}};
}

}  // namespace univrank
