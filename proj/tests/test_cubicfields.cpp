#include <random>
#include <set>

#include "doctest.h"
#include "univrank/cubicfields.hpp"
#include "univrank/errors.hpp"

using namespace univrank;

namespace {

// x^3 + b x^2 + c x + d
Integer cubic_disc(const Integer& b, const Integer& c, const Integer& d) {
  return b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
}

Coords random_coords(std::mt19937_64& rng, int range) {
  Coords c(3);
  for (auto& x : c) x = static_cast<long>(rng() % (2 * range + 1)) - range;
  return c;
}

}  // namespace

TEST_CASE("simplest cubic discriminants") {
  CHECK(simplest_cubic(-1).field->discriminant() == 49);
  CHECK(simplest_cubic(0).field->discriminant() == 81);
  CHECK(simplest_cubic(1).field->discriminant() == 169);
  CHECK(simplest_cubic(-1).field->min_poly() == ZPoly{-1, -2, 1, 1});
  int admitted = 0;
  for (long a = -1; a <= 50; ++a) {
    const Integer c = Integer(a) * a + 3 * a + 9;
    const Integer oracle = cubic_disc(-Integer(a), -Integer(a + 3), -1);
    CHECK(oracle == c * c);
    try {
      auto L = simplest_cubic(a);
      ++admitted;
      CHECK(L.field->discriminant() == oracle);
    } catch (const HypothesisError&) {
      bool square_factor = false;
      for (long q = 2; q * q <= c; ++q) square_factor = square_factor || c % (q * q) == 0;
      CHECK(square_factor);
    }
  }
  CHECK(admitted >= 40);
  CHECK_THROWS_AS(simplest_cubic(-2), HypothesisError);
  CHECK_THROWS_AS(simplest_cubic(3), HypothesisError);
}

TEST_CASE("cyclic automorphism") {
  std::mt19937_64 rng(13);
  for (long a : {-1L, 0L, 1L, 2L, 4L, 22L}) {
    auto L = simplest_cubic(a);
    const auto& f = *L.field;
    Coords rho{0, 1, 0};
    Coords img = L.apply(rho);
    CHECK(img != rho);
    // img is a root of the defining polynomial
    Coords val = f.from_integer(-1);
    val = f.sub(val, f.scale(img, a + 3));
    val = f.sub(val, f.scale(f.mul(img, img), a));
    val = f.add(val, f.mul(img, f.mul(img, img)));
    CHECK(f.is_zero(val));
    for (int i = 0; i < 200; ++i) {
      Coords x = random_coords(rng, 50), y = random_coords(rng, 50);
      CHECK(L.apply(L.apply(L.apply(x))) == x);
      CHECK(f.trace(L.apply(x)) == f.trace(x));
      CHECK(L.apply(f.mul(x, y)) == f.mul(L.apply(x), L.apply(y)));
    }
  }
}

TEST_CASE("codifferent") {
  for (long a : {-1L, 0L, 1L, 2L, 4L}) {
    auto L = simplest_cubic(a);
    const auto& f = *L.field;
    auto basis = codifferent_basis(L);
    REQUIRE(basis.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(in_codifferent(f, basis[i]));
      for (std::size_t j = 0; j < 3; ++j) {
        Coords e(3, Integer(0));
        e[j] = 1;
        CHECK(codifferent_trace(f, basis[i], e) == (i == j ? 1 : 0));
      }
    }
    if (a == -1) {
      for (const auto& d : basis) CHECK(7 % d.den == 0);
    }
  }
  CHECK_FALSE(in_codifferent(*simplest_cubic(-1).field, make_codifferent({1, 0, 0}, 2)));
}

TEST_CASE("positive codifferent element") {
  for (long a : {-1L, 0L, 1L, 2L, 10L, 22L}) {
    auto L = simplest_cubic(a);
    auto pc = positive_codifferent_element(L, 10);
    CHECK(is_totally_positive(*L.field, pc.delta));
    CHECK(in_codifferent(*L.field, pc.delta));
    CHECK(pc.trace == codifferent_trace(*L.field, pc.delta, L.field->one()));
    CHECK(pc.trace >= 1);
  }
  // nothing smaller exists: scan every dual vector of trace <= the minimum
  auto L = simplest_cubic(-1);
  auto pc = positive_codifferent_element(L, 10);
  auto basis = codifferent_basis(L);
  for (long c0 = 1; c0 <= pc.trace.get_si(); ++c0) {
    for (long c1 = -10; c1 <= 10; ++c1) {
      for (long c2 = -10; c2 <= 10; ++c2) {
        std::vector<Integer> c{c0, c1, c2};
        if (c0 == pc.trace && c >= pc.dual_coords) continue;
        std::vector<Rational> v(3, Rational(0));
        for (std::size_t i = 0; i < 3; ++i) {
          for (std::size_t k = 0; k < 3; ++k) v[k] += Rational(c[i]) * basis[i].coords()[k];
        }
        Integer den = 1;
        for (const auto& x : v) den = lcm(den, Integer(x.get_den()));
        Coords num;
        for (const auto& x : v) num.push_back(Integer(x * den));
        CHECK_FALSE(is_totally_positive(*L.field, make_codifferent(num, den)));
      }
    }
  }
  CHECK_THROWS_AS(positive_codifferent_element(L, 0), UsageError);
}

TEST_CASE("trace-one elements") {
  const long expected_counts[] = {3, 4, 6};  // a = -1, 0, 1 with the minimal delta
  for (long a = -1; a <= 1; ++a) {
    auto L = simplest_cubic(a);
    auto pc = positive_codifferent_element(L, 10);
    auto els = trace_one_elements(L.field, pc.delta);
    CHECK(els.size() == static_cast<std::size_t>(expected_counts[a + 1]));
  }
  for (long a : {-1L, 0L, 1L, 2L, 4L, 9L, 22L}) {
    auto L = simplest_cubic(a);
    auto pc = positive_codifferent_element(L, 10);
    auto els = trace_one_elements(L.field, pc.delta);
    REQUIRE_FALSE(els.empty());
    for (const auto& e : els) {
      CHECK(e.is_totally_positive());
      CHECK(codifferent_trace(*L.field, pc.delta, e.coords()) == 1);
    }
    auto doubled = trace_one_elements(L.field, pc.delta, 6);
    CHECK(doubled.size() == els.size());
    auto ellipsoid = trace_one_elements_by_trace_form(L.field, pc.delta);
    REQUIRE(ellipsoid.size() == els.size());
    for (std::size_t i = 0; i < els.size(); ++i) CHECK(ellipsoid[i] == els[i]);
  }
  CHECK(trace_one_elements(simplest_cubic(22).field,
                           positive_codifferent_element(simplest_cubic(22), 10).delta)
            .size() >= 240);
}

TEST_CASE("Galois-invariant delta gives an invariant inventory") {
  auto L = simplest_cubic(-1);
  const auto& f = *L.field;
  // delta = Tr-dual sum invariant under the automorphism: sum of an orbit
  auto pc = positive_codifferent_element(L, 10);
  Coords s = pc.delta.num;
  Coords orbit = f.add(s, f.add(L.apply(s), L.apply(L.apply(s))));
  auto delta = make_codifferent(orbit, pc.delta.den);
  REQUIRE(L.apply(delta.num) == delta.num);
  REQUIRE(is_totally_positive(f, delta));
  auto els = trace_one_elements(L.field, delta);
  std::set<Coords> set;
  for (const auto& e : els) set.insert(e.coords());
  for (const auto& e : els) CHECK(set.count(L.apply(e.coords())));
}

TEST_CASE("cubic rank bound") {
  CHECK(cubic_rank_bound(9) == 1);
  CHECK(cubic_rank_bound(240) == 5);
  for (long m = 1; m < 40; ++m) CHECK(cubic_rank_bound(9 * m * m) == m);
  CHECK(cubic_rank_bound(35) == 1);
  CHECK(cubic_rank_bound(36) == 2);
  CHECK_THROWS_AS(cubic_rank_bound(0), UsageError);
}
