#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "univrank/bounds.hpp"
#include "univrank/cubicfields.hpp"
#include "univrank/errors.hpp"
#include "univrank/galois.hpp"
#include "univrank/lattice.hpp"
#include "univrank/pipeline.hpp"
#include "univrank/quadfields.hpp"

using namespace univrank;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

Integer ipow(const Integer& x, unsigned long n) {
  Integer r = 1;
  for (unsigned long i = 0; i < n; ++i) r *= x;
  return r;
}

Outcome schur_exactness() {
  Outcome o;
  auto c = schur_constant(2);
  require(o, c.exact && c.enclosure.is_point() && c.enclosure.lo() == Rational(1, 2), "c_2 != 1/2");
  for (long D : {2L, 3L, 7L, 11L}) {
    auto F = real_quadratic_field(D);
    auto r = schur_check(AlgebraicInt(F, {0, 1}));
    require(o, r.holds && r.equality, "no equality for sqrt " + std::to_string(D));
    require(o, r.lhs == 2 * D, "Tr(beta^2) != 2D for D = " + std::to_string(D));
    require(o, c.enclosure.lo() * Rational(r.disc) == Rational(2 * D), "c_2 Delta != 2D for D = " + std::to_string(D));
  }
  o.detail = o.pass ? "c_2 = 1/2 exactly; equality for D = 2, 3, 7, 11" : o.detail;
  return o;
}

Outcome schur_suite() {
  Outcome o;
  std::vector<FieldPtr> fields{real_quadratic_field(2), real_quadratic_field(5), simplest_cubic(-1).field,
                               simplest_cubic(0).field, simplest_cubic(1).field};
  std::mt19937_64 rng(20261017);
  std::size_t n = 0;
  for (int i = 0; i < 600; ++i) {
    const auto& f = fields[i % fields.size()];
    Coords c(f->degree());
    for (auto& x : c) x = static_cast<long>(rng() % 41) - 20;
    if (f->is_zero(c)) continue;
    ++n;
    require(o, schur_check(AlgebraicInt(f, c)).holds, "schur_check false");
  }
  require(o, n >= 500, "fewer than 500 samples");
  if (o.pass) o.detail = std::to_string(n) + " random elements over 5 fields";
  return o;
}

Outcome subgroup_lemma() {
  Outcome o;
  std::string counts;
  for (auto [k, l] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {3, 4}, {5, 2}}) {
    auto r = verify_subgroup_lemma(k, l);
    const std::string tag = "(" + std::to_string(k) + "," + std::to_string(l) + ")";
    require(o, r.hypothesis && r.holds, "lemma fails for " + tag);
    require(o, r.counts_match && r.count == r.second_count, "second enumeration disagrees for " + tag);
    counts += (counts.empty() ? "" : " ") + tag + ":" + std::to_string(r.count);
  }
  if (o.pass) o.detail = "subgroup counts " + counts;
  return o;
}

Outcome diagonality() {
  Outcome o;
  auto hit = scan_rank_forcing(3, 200, 2, 199);
  require(o, hit.has_value(), "no D < 200 with three rank-forcing elements");
  if (!hit) return o;
  auto cert = diagonality_certificate(hit->elements);
  require(o, cert.valid && cert.rank_bound >= 3, "certificate not valid with bound >= 3");
  auto replay = replay_certificate(GramCertificate::from_json(cert.to_json()));
  require(o, replay.ok, "independent replay failed");
  if (o.pass) o.detail = "D = " + hit->D.get_str() + ", bound " + std::to_string(cert.rank_bound);
  return o;
}

Outcome universality() {
  Outcome o;
  auto Q = NumberField::rationals();
  require(o, universality_check(QuadLatticeForm::sum_of_squares(Q, 4), 300).universal_up_to_bound(),
          "four squares miss a value <= 300");
  require(o, !represents(QuadLatticeForm::sum_of_squares(Q, 2), AlgebraicInt(Q, {7})).represented,
          "x^2 + y^2 represents 7");
  auto F = real_quadratic_field(5);
  require(o, universality_check(QuadLatticeForm::sum_of_squares(F, 3), 40).universal_up_to_bound(),
          "x^2 + y^2 + z^2 over Q(sqrt 5) misses an element of trace <= 40");
  auto bin = universality_check(QuadLatticeForm::sum_of_squares(F, 2), 10);
  require(o, !bin.missed.empty(), "x^2 + y^2 over Q(sqrt 5) misses nothing");
  if (o.pass) {
    const auto& m = bin.missed.front().coords();
    o.detail = "binary form over Q(sqrt 5) misses (" + m[0].get_str() + "," + m[1].get_str() + ")";
  }
  return o;
}

Outcome threshold_B() {
  Outcome o;
  auto F = real_quadratic_field(2);
  std::vector<AlgebraicInt> els{AlgebraicInt(F, {1, 0}), AlgebraicInt(F, {3, 2})};
  auto coarse = compute_B(3, 2, els, F, Rational(1, 1000000));
  auto fine = compute_B(3, 2, els, F, Rational(1, Integer("1000000000000")));
  require(o, coarse.T == 24 && fine.T == 24, "T != 24");
  require(o, coarse.B_ceiling == fine.B_ceiling, "B_ceiling changes under refinement");
  for (unsigned long e : {1UL, 2UL}) {
    const Integer edge = ipow(coarse.B_ceiling, e);
    auto r = replay_contradiction(coarse, e, edge + 1);
    require(o, r.contradiction, "no contradiction for Delta > B_ceiling^" + std::to_string(e));
    require(o, r.middle.hi() > Rational(r.kT), "middle enclosure below kT at the edge");
    auto far = replay_contradiction(coarse, e, 2 * edge);
    require(o, far.contradiction && far.middle.lo() > Rational(far.kT), "chain direction: middle term not above kT");
    Rational v = 1;
    for (unsigned long i = 0; i < e; ++i) v *= coarse.per_e[e - 1].enclosure.lo();
    auto below = replay_contradiction(coarse, e, Integer(v.get_num() / v.get_den()) / 2 + 1);
    require(o, !below.contradiction && below.middle.hi() < Rational(below.kT), "contradiction below the threshold");
  }
  if (o.pass) o.detail = "T = 24, B_ceiling = " + coarse.B_ceiling.get_str() + " at 1e-6 and 1e-12";
  return o;
}

Outcome simplest_cubics() {
  Outcome o;
  std::size_t admitted = 0, inventories = 0;
  for (long a = -1; a <= 50; ++a) {
    SimplestCubicField L;
    try {
      L = simplest_cubic(a);
    } catch (const HypothesisError&) {
      continue;
    }
    ++admitted;
    const std::string tag = " for a = " + std::to_string(a);
    // x^3 + b x^2 + c x + d with b = -a, c = -(a+3), d = -1
    const Integer b = -a, c = -(a + 3), d = -1;
    const Integer oracle = b * b * c * c - 4 * c * c * c - 4 * b * b * b * d - 27 * d * d + 18 * b * c * d;
    const Integer sq = Integer(a) * a + 3 * a + 9;
    require(o, oracle == sq * sq && L.field->discriminant() == oracle, "disc != (a^2+3a+9)^2" + tag);
    auto basis = codifferent_basis(L);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        Coords e(3, Integer(0));
        e[j] = 1;
        require(o, codifferent_trace(*L.field, basis[i], e) == (i == j ? 1 : 0), "duality not identity" + tag);
      }
    }
    auto pc = positive_codifferent_element(L, 10);
    auto els = trace_one_elements(L.field, pc.delta);
    auto doubled = trace_one_elements(L.field, pc.delta, 1 + 2 * static_cast<long>(els.size() % 3));
    require(o, els.size() == doubled.size(), "box padding changes the inventory" + tag);
    for (std::size_t i = 0; i < els.size() && i < doubled.size(); ++i) {
      require(o, els[i] == doubled[i], "box padding changes the inventory" + tag);
    }
    for (const auto& x : els) {
      require(o, x.is_totally_positive() && codifferent_trace(*L.field, pc.delta, x.coords()) == 1,
              "member with Tr(delta a) != 1" + tag);
    }
    ++inventories;
  }
  if (o.pass) o.detail = std::to_string(admitted) + " admissible a in [-1, 50], " + std::to_string(inventories) +
                         " complete inventories";
  return o;
}

Outcome sk_certification() {
  Outcome o;
  require(o, certify_Sk({-1, -4, 0, 1}).verdict == SkVerdict::certified, "x^3 - 4x - 1 not certified");
  require(o, certify_Sk({-1, -3, 0, 1}).verdict == SkVerdict::inconclusive, "x^3 - 3x - 1 not inconclusive");
  require(o, certify_Sk({-2, 0, 1}).verdict == SkVerdict::certified, "x^2 - 2 not certified");
  if (o.pass) o.detail = "S_3, inconclusive, S_2";
  return o;
}

Outcome pipeline_smoke() {
  Outcome o;
  std::ostringstream out, err;
  const int code = cli::run({"pipeline", "--d", "6", "--m", "2"}, out, err);
  auto cert = nlohmann::json::parse(out.str());
  if (code == 0) {
    require(o, cert.at("valid") == true, "exit 0 without a valid certificate");
    auto v = verify_certificate(cert);
    require(o, v.ok, "verify-certificate rejects the certificate");
    std::ostringstream vout, verr;
    require(o, cli::run({"verify-certificate", out.str()}, vout, verr) == 0, "verify-certificate exit code");
    if (o.pass) {
      o.detail = "valid certificate, L = " + cert.at("L_choice").get<std::string>() + ", margin " +
                 cert.at("K").at("validation").at("margin").get<std::string>();
    }
  } else {
    const auto& unmet = cert.at("K").at("validation").at("unmet");
    require(o, unmet == nlohmann::json::array({"disc_K_exceeds_B"}), "failure report with other unmet items");
    if (o.pass) o.detail = "margin report, only disc_K <= B_ceiling unmet";
  }
  for (auto [d, needle] : std::vector<std::pair<std::string, std::string>>{{"5", "unsupported degree"},
                                                                            {"8", "prior work"}}) {
    std::ostringstream o2, e2;
    const int c = cli::run({"pipeline", "--d", d, "--m", "2"}, o2, e2);
    auto j = nlohmann::json::parse(e2.str());
    require(o, c == 2 && j.at("exit_code") == 2, "--d " + d + " exit code");
    require(o, j.at("message").get<std::string>().find(needle) != std::string::npos, "--d " + d + " message");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Schur exactness, N=2", 1, schur_exactness},
      {2, "Schur property suite", 60, schur_suite},
      {3, "Subgroup lemma", 60, subgroup_lemma},
      {4, "Diagonality certificate", 300, diagonality},
      {5, "Universality desk checks", 600, universality},
      {6, "B-threshold", 60, threshold_B},
      {7, "Simplest cubic suite", 300, simplest_cubics},
      {8, "S_k certification", 10, sk_certification},
      {9, "Pipeline smoke", 600, pipeline_smoke},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && s > c.limit_s) {
      o.pass = false;
      o.detail = "runtime limit exceeded";
    }
    failed += !o.pass;
    std::printf("%s criterion %d (%s): %s [%.2fs, limit %.0fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), s, c.limit_s);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
