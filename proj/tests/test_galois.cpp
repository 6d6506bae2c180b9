#include <map>
#include <random>

#include "doctest.h"
#include "univrank/errors.hpp"
#include "univrank/galois.hpp"
#include "univrank/quadfields.hpp"

using namespace univrank;

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int roots_mod(const ZPoly& f, std::int64_t p) {
  int count = 0;
  for (std::int64_t x = 0; x < p; ++x) {
    Integer v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = (v * x + f[i]) % p;
    if (v == 0) ++count;
  }
  return count;
}

std::size_t divisor_count(int n) {
  std::size_t c = 0;
  for (int d = 1; d <= n; ++d) c += n % d == 0;
  return c;
}

}  // namespace

TEST_CASE("product group axioms") {
  for (auto [k, l] : std::vector<std::pair<int, int>>{{2, 1}, {3, 2}, {4, 3}}) {
    ProductGroup G(k, l);
    std::size_t fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    CHECK(G.order() == fact * l);
    const auto e = G.index_of(G.identity());
    std::mt19937_64 rng(k * 10 + l);
    for (int it = 0; it < 200; ++it) {
      std::size_t a = rng() % G.order(), b = rng() % G.order(), c = rng() % G.order();
      CHECK(G.multiply(G.multiply(a, b), c) == G.multiply(a, G.multiply(b, c)));
      CHECK(G.multiply(a, e) == a);
      CHECK(G.multiply(e, a) == a);
      CHECK(G.multiply(a, G.index_of(G.inverse(G.element(a)))) == e);
    }
    for (std::size_t i = 0; i < G.order(); ++i) CHECK(G.index_of(G.element(i)) == i);
    CHECK(G.base_subgroup().size() == fact / k);
    CHECK(G.coset_representatives().size() == static_cast<std::size_t>(k * l));
    CHECK(G.closure({}).size() == 1);
  }
}

TEST_CASE("subgroups over the base") {
  CHECK(subgroups_between(2, 1).size() == 2);
  CHECK(subgroups_between(2, 2).size() == 5);
  for (auto [k, l] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {3, 3}, {3, 4}, {4, 2}, {5, 2}, {5, 3}}) {
    auto a = subgroups_between(k, l);
    auto b = subgroups_between_by_subsets(k, l);
    CHECK(a.size() == 2 * divisor_count(l));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].members == b[i].members);
    for (const auto& s : a) CHECK((s.fixes_last_point || s.contains_Sk));
  }
  CHECK_THROWS(subgroups_between(7, 2));
}

TEST_CASE("subgroup lemma") {
  for (auto [k, l] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {3, 4}, {5, 2}, {6, 2}}) {
    auto r = verify_subgroup_lemma(k, l);
    CHECK(r.hypothesis);
    CHECK(r.holds);
    CHECK(r.counts_match);
    CHECK(r.violators.empty());
  }
  auto four = verify_subgroup_lemma(4, 2);
  CHECK_FALSE(four.hypothesis);
  CHECK(four.counts_match);
  auto j = four.to_json();
  CHECK(j.at("hypothesis_k3_or_k5plus") == false);
}

TEST_CASE("factorization patterns mod p") {
  CHECK(factor_degrees_mod_p({-2, 0, 1}, 7) == std::vector<int>{1, 1});
  CHECK(factor_degrees_mod_p({-2, 0, 1}, 5) == std::vector<int>{2});
  const ZPoly cyc{-1, -3, 0, 1};
  const ZPoly s3{-1, -4, 0, 1};
  for (std::int64_t p = 5; p < 400; ++p) {
    if (!is_prime(p)) continue;
    auto pat = factor_degrees_mod_p(cyc, p);
    const int r = roots_mod(cyc, p);
    CHECK(pat == (r == 3 ? std::vector<int>{1, 1, 1} : std::vector<int>{3}));
    CHECK((r == 3) == (p % 9 == 1 || p % 9 == 8));
    if (p == 229) continue;
    auto pat2 = factor_degrees_mod_p(s3, p);
    const int r2 = roots_mod(s3, p);
    CHECK(pat2 == (r2 == 3 ? std::vector<int>{1, 1, 1} : r2 == 1 ? std::vector<int>{2, 1} : std::vector<int>{3}));
  }
  for (const auto& ev : dedekind_patterns(s3, 1000)) CHECK(ev.p != 229);
}

TEST_CASE("certify S_k") {
  auto r = certify_Sk({-1, -4, 0, 1});
  CHECK(r.verdict == SkVerdict::certified);
  CHECK(r.transposition.has_value());
  CHECK(certify_Sk({-1, -3, 0, 1}).verdict == SkVerdict::inconclusive);
  CHECK(certify_Sk({-2, 0, 1}).verdict == SkVerdict::certified);
  // (x-1)(x-2)(x-3)(x-4)(x-5) - 1
  auto q = certify_Sk({-121, 274, -225, 85, -15, 1});
  CHECK(q.k == 5);
  CHECK(q.verdict == SkVerdict::certified);
  CHECK(q.large_prime_cycle.has_value());
  CHECK_THROWS_AS(certify_Sk({2, -3, 1}), HypothesisError);
  CHECK(certify_Sk({-1, -4, 0, 1}, 2).primes_used == 1);
}

TEST_CASE("Chebotarev frequencies for an S_3 cubic") {
  std::map<std::vector<int>, int> freq;
  auto ev = dedekind_patterns({-1, -4, 0, 1}, 20000);
  for (const auto& e : ev) ++freq[e.pattern];
  const double n = static_cast<double>(ev.size());
  CHECK(freq[{1, 1, 1}] / n == doctest::Approx(1.0 / 6).epsilon(0.2));
  CHECK(freq[{2, 1}] / n == doctest::Approx(1.0 / 2).epsilon(0.1));
  CHECK(freq[{3}] / n == doctest::Approx(1.0 / 3).epsilon(0.15));
}

TEST_CASE("K validation") {
  auto L = real_quadratic_field(2);
  auto v = validate_K_for_theorem({-1, -4, 0, 1}, *L, 100);
  CHECK(v.poly_disc == 229);
  CHECK(v.disc_certified);
  CHECK(v.gcd_with_L == 1);
  CHECK(v.margin == 129);
  CHECK(v.admissible());
  CHECK(v.unmet().empty());

  auto high = validate_K_for_theorem({-1, -4, 0, 1}, *L, 1426576072);
  CHECK_FALSE(high.admissible());
  CHECK(high.unmet() == std::vector<std::string>{"disc_K_exceeds_B"});
  CHECK(high.margin < 0);

  auto clash = validate_K_for_theorem({-1, -4, 0, 1}, *real_quadratic_field(229), 100);
  CHECK(clash.gcd_with_L == 229);
  CHECK(clash.unmet() == std::vector<std::string>{"coprime_discriminants"});

  auto cyc = validate_K_for_theorem({-1, -3, 0, 1}, *L, 10);
  CHECK_FALSE(cyc.disc_certified);
  CHECK_THROWS_AS(validate_K_for_theorem({1, 0, 1}, *L, 10), HypothesisError);
}
