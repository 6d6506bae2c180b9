#include <random>

#include "doctest.h"
#include "univrank/cubicfields.hpp"
#include "univrank/errors.hpp"
#include "univrank/number_field.hpp"
#include "univrank/quadfields.hpp"

using namespace univrank;

namespace {

Coords random_coords(std::mt19937_64& rng, std::size_t n, int range) {
  Coords c(n);
  for (auto& x : c) x = static_cast<long>(rng() % (2 * range + 1)) - range;
  return c;
}

Integer matrix_trace(const IntMatrix& m) {
  Integer t = 0;
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

}  // namespace

TEST_CASE("quadratic fields from polynomials") {
  auto f = NumberField::from_polynomial({-2, 0, 1});
  CHECK(f->degree() == 2);
  // oracle: det [[Tr 1, Tr t], [Tr t, Tr t^2]] = det [[2, 0], [0, 4]]
  CHECK(f->discriminant() == 8);
  auto lo = f->refined_root(0, Rational(1, 2));
  auto hi = f->refined_root(1, Rational(1, 2));
  CHECK(lo.lo() >= -2);
  CHECK(lo.hi() <= -1);
  CHECK(hi.lo() >= 1);
  CHECK(hi.hi() <= 2);

  auto g = NumberField::from_polynomial({-1, -1, 1});
  CHECK(g->discriminant() == 5);  // det [[2, 1], [1, 3]]

  CHECK_THROWS_WITH_AS(NumberField::from_polynomial({1, 0, 1}), doctest::Contains("complex roots"), HypothesisError);
  CHECK_THROWS_WITH_AS(NumberField::from_polynomial({-1, 0, 1}), doctest::Contains("reducible"), HypothesisError);
  CHECK_THROWS_WITH_AS(NumberField::from_polynomial({6, 0, -5, 0, 1}), doctest::Contains("reducible"),
                       HypothesisError);
  CHECK_THROWS_AS(NumberField::from_polynomial({-2, 0, 2}), Error);
}

TEST_CASE("traces and element discriminants") {
  auto q2 = real_quadratic_field(2);
  AlgebraicInt s2(q2, {0, 1}), e(q2, {3, 1});
  CHECK(s2.trace() == 0);
  CHECK(e.trace() == 6);
  CHECK(s2.discriminant() == 8);
  CHECK(AlgebraicInt::from_integer(q2, 5).discriminant() == 0);
  auto q5 = real_quadratic_field(5);
  CHECK(AlgebraicInt(q5, {0, 1}).discriminant() == 5);
  auto c0 = simplest_cubic(0).field;
  CHECK(AlgebraicInt(c0, {0, 1, 0}).trace() == 0);

  // Delta = Tr^2 - 4 N for quadratic elements
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    AlgebraicInt a(q5, random_coords(rng, 2, 30));
    CHECK(a.discriminant() == a.trace() * a.trace() - 4 * a.norm());
    CHECK(a.trace() == matrix_trace(q5->multiplication_matrix(a.coords())));
  }
}

TEST_CASE("total positivity") {
  auto q2 = real_quadratic_field(2);
  CHECK(AlgebraicInt(q2, {3, 1}).is_totally_positive());
  CHECK_FALSE(AlgebraicInt(q2, {1, 1}).is_totally_positive());
  CHECK_FALSE(AlgebraicInt(q2, {0, 0}).is_totally_positive());
  // 3 + 2 sqrt 2 and 3 - 2 sqrt 2 are units close to 0 in one embedding
  CHECK(AlgebraicInt(q2, {3, -2}).is_totally_positive());
  CHECK(AlgebraicInt(q2, {577, -408}).is_totally_positive());
  CHECK_FALSE(AlgebraicInt(q2, {-577, 408}).is_totally_positive());
}

TEST_CASE("embedding enclosures") {
  auto q2 = real_quadratic_field(2);
  auto enc = q2->embeddings({0, 1}, Rational(1, 100));
  REQUIRE(enc.size() == 2);
  CHECK(enc[0].width() <= Rational(1, 100));
  CHECK(enc[0].lo().get_d() <= -1.41421356);
  CHECK(enc[0].hi().get_d() >= -1.41421357);
  CHECK(enc[1].lo().get_d() <= 1.41421357);
  auto one = q2->embeddings(q2->one(), Rational(1, 10));
  for (const auto& e : one) CHECK(e == Interval::point(1));

  auto cm1 = simplest_cubic(-1).field;
  auto roots = cm1->embeddings({0, 1, 0}, Rational(1, 10));
  REQUIRE(roots.size() == 3);
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) CHECK(roots[i].hi() < roots[i + 1].lo());
  for (const auto& r : roots) {
    CHECK(poly::sign_at(cm1->min_poly(), r.lo()) * poly::sign_at(cm1->min_poly(), r.hi()) <= 0);
  }
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    Coords a = random_coords(rng, 3, 20);
    Rational w(1, static_cast<long>(rng() % 1000 + 1));
    auto coarse = cm1->embeddings(a, w);
    auto fine = cm1->embeddings(a, w / 2);
    for (std::size_t h = 0; h < 3; ++h) {
      CHECK(coarse[h].width() <= w);
      CHECK(coarse[h].contains(fine[h]));
    }
  }
}

TEST_CASE("field properties on random elements") {
  std::mt19937_64 rng(9);
  std::vector<FieldPtr> fields{real_quadratic_field(2), real_quadratic_field(5), real_quadratic_field(15),
                               simplest_cubic(-1).field, simplest_cubic(2).field,
                               NumberField::from_polynomial({-1, -4, 0, 1})};
  for (const auto& f : fields) {
    const std::size_t n = f->degree();
    for (int i = 0; i < 60; ++i) {
      Coords a = random_coords(rng, n, 15), b = random_coords(rng, n, 15);
      CHECK(f->trace(f->add(a, b)) == f->trace(a) + f->trace(b));
      CHECK(f->trace(f->mul(a, b)) == f->trace_product(a, b));
      const Integer disc = f->element_discriminant(a);
      if (disc != 0) CHECK(disc % f->discriminant() == 0);
      // sum of embedding products encloses the exact trace
      auto ea = f->embeddings(a, Rational(1, 1000000)), eb = f->embeddings(b, Rational(1, 1000000));
      Interval sum = Interval::point(0);
      for (std::size_t h = 0; h < n; ++h) sum += ea[h] * eb[h];
      CHECK(sum.contains(Rational(f->trace_product(a, b))));
      if (f->is_totally_positive(a) && f->is_totally_positive(b)) {
        CHECK(f->is_totally_positive(f->add(a, b)));
        CHECK(f->is_totally_positive(f->mul(a, b)));
      }
      Coords sq = f->mul(a, a);
      if (!f->is_zero(a)) CHECK(f->is_totally_positive(sq));
    }
  }
}

TEST_CASE("compositum") {
  auto q2 = real_quadratic_field(2);
  auto q5 = real_quadratic_field(5);
  auto c = compositum(q2, q5);
  CHECK(c.field->degree() == 4);
  Coords s5 = c.embed_l({-1, 2});  // sqrt 5 = 2 w - 1
  CHECK(c.field->trace(s5) == 0);
  CHECK(c.field->discriminant() == ipow(q2->discriminant(), 2) * ipow(q5->discriminant(), 2));

  auto K = NumberField::from_polynomial({-1, -4, 0, 1});
  CHECK(K->discriminant() == 229);
  auto kl = compositum(K, q2);
  CHECK(kl.field->degree() == 6);
  Coords x = kl.embed_l({3, 1});
  CHECK(kl.field->trace(x) == 18);
  CHECK(matrix_trace(kl.field->multiplication_matrix(x)) == 18);

  CHECK_THROWS_WITH_AS(compositum(q2, q2), doctest::Contains("not coprime"), HypothesisError);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    Coords a = random_coords(rng, 2, 50);
    CHECK(kl.field->trace(kl.embed_l(a)) == 3 * q2->trace(a));
    Coords b = random_coords(rng, 3, 10);
    CHECK(kl.field->trace(kl.embed_k(b)) == 2 * K->trace(b));
    // the embeddings are ring maps
    Coords a2 = random_coords(rng, 2, 20);
    CHECK(kl.embed_l(q2->mul(a, a2)) == kl.field->mul(kl.embed_l(a), kl.embed_l(a2)));
  }
}

TEST_CASE("descriptor round trip") {
  auto q5 = real_quadratic_field(5);
  auto j = q5->to_json();
  CHECK(j.at("disc") == "5");
  auto back = NumberField::from_json(j);
  CHECK(back->same_as(*q5));
  j["disc"] = "6";
  CHECK_THROWS(NumberField::from_json(j));
}
