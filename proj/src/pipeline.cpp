#include "univrank/pipeline.hpp"

#include <algorithm>

#include "univrank/bounds.hpp"
#include "univrank/cubicfields.hpp"
#include "univrank/errors.hpp"
#include "univrank/galois.hpp"
#include "univrank/lattice.hpp"
#include "univrank/quadfields.hpp"

namespace univrank {

namespace {

bool k_allowed(unsigned long k) { return k == 3 || k >= 5; }

struct LSpec {
  std::string kind;  // "quadratic" or "cubic" or ""
  Integer value;
};

LSpec parse_L_choice(const std::string& text) {
  if (text.empty()) return {};
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("L must be given as quadratic:D or cubic:a");
  LSpec s{text.substr(0, colon), parse_integer(text.substr(colon + 1))};
  if (s.kind != "quadratic" && s.kind != "cubic") throw UsageError("L must be given as quadratic:D or cubic:a");
  return s;
}

nlohmann::json coords_list(const std::vector<AlgebraicInt>& els) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : els) out.push_back(coords_to_json(e.coords()));
  return out;
}

nlohmann::json poly_json(const ZPoly& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : p) out.push_back(c.get_str());
  return out;
}

ZPoly poly_from_json(const nlohmann::json& j) {
  ZPoly p;
  for (const auto& c : j) p.push_back(integer_from_json(c));
  return p;
}

std::string conclusion_text(const BranchChoice& bc, unsigned long d, unsigned long m) {
  std::string s = "every universal quadratic lattice over KL (degree " + std::to_string(d) + ") has rank >= " +
                  std::to_string(m);
  if (bc.branch == Branch::cubic) s += " (conditional on the cited sqrt(n)/3 rank bound)";
  return s;
}

}  // namespace

BranchChoice choose_branch(unsigned long d, const std::string& L_choice) {
  if (d == 2 || d == 3 || d == 4 || d == 8) {
    throw HypothesisError("d = " + std::to_string(d) + " is covered by cited prior work, out of scope");
  }
  if (d % 2 != 0 && d % 3 != 0) {
    throw HypothesisError("unsupported degree d = " + std::to_string(d) + ": divisible by neither 2 nor 3");
  }
  const LSpec spec = parse_L_choice(L_choice);
  auto pick = [&](Branch b, unsigned long l) -> std::optional<BranchChoice> {
    if (d % l != 0) return std::nullopt;
    const unsigned long k = d / l;
    if (!k_allowed(k)) return std::nullopt;
    return BranchChoice{b, k, l};
  };
  if (spec.kind == "quadratic" || spec.kind == "cubic") {
    const bool quad = spec.kind == "quadratic";
    const unsigned long l = quad ? 2 : 3;
    if (d % l != 0) throw HypothesisError("d is not divisible by [L:Q] = " + std::to_string(l));
    if (d / l == 4) throw HypothesisError("k = 4 is excluded by the theorem's hypothesis");
    if (auto c = pick(quad ? Branch::quadratic : Branch::cubic, l)) return *c;
    throw HypothesisError("k = " + std::to_string(d / l) + " violates k = 3 or k >= 5");
  }
  if (auto c = pick(Branch::quadratic, 2)) return *c;
  if (auto c = pick(Branch::cubic, 3)) return *c;
  throw HypothesisError("k = 4 is excluded by the theorem's hypothesis");
}

ZPoly K_family(unsigned long k, const Integer& t) {
  if (k == 3) return {-1, -t, 0, 1};
  ZPoly p{1};
  for (unsigned long i = 1; i <= k; ++i) p = poly::mul(p, ZPoly{-t * Integer(i), 1});
  p[0] -= 1;
  return p;
}

namespace {

struct KSearch {
  ZPoly poly;
  KValidation validation;
  unsigned tried = 0;
  bool found = false;
};

std::optional<KValidation> try_K(const ZPoly& p, const NumberField& L, const Integer& B, const PipelineOptions& o) {
  try {
    return validate_K_for_theorem(p, L, B, o.prime_budget, o.squarefree_limit);
  } catch (const HypothesisError&) {
    return std::nullopt;
  }
}

KSearch scan_K(unsigned long k, const NumberField& L, const Integer& B, const PipelineOptions& o) {
  auto disc_of = [&](const Integer& t) { return poly::discriminant(K_family(k, t)); };
  Integer hi = 1;
  while (disc_of(hi) <= B) hi *= 2;
  Integer lo = hi / 2;
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (disc_of(mid) > B) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  KSearch s;
  bool have_report = false;
  for (Integer t = hi; s.tried < o.K_scan_tries; ++t) {
    ZPoly p = K_family(k, t);
    if (poly::discriminant(p) <= B) continue;
    ++s.tried;
    auto v = try_K(p, L, B, o);
    if (!v) continue;
    if (!have_report || v->admissible()) {
      s.poly = p;
      s.validation = *v;
      have_report = true;
    }
    if (v->admissible()) {
      s.found = true;
      return s;
    }
  }
  if (!have_report) throw HypothesisError("no totally real irreducible K found in the scanned family");
  return s;
}

}  // namespace

nlohmann::json run_pipeline(const PipelineOptions& o) {
  const BranchChoice bc = choose_branch(o.d, o.L_choice);
  if (o.m < 1) throw UsageError("m must be positive");
  const LSpec spec = parse_L_choice(o.L_choice);
  nlohmann::json cert;
  cert["d"] = o.d;
  cert["m"] = o.m;
  cert["k"] = bc.k;
  cert["l"] = bc.l;
  cert["branch"] = bc.branch == Branch::quadratic ? "quadratic" : "cubic";

  FieldPtr L;
  std::vector<AlgebraicInt> elements;
  nlohmann::json evidence;
  bool conditional = false;
  if (bc.branch == Branch::quadratic) {
    // at least two elements so that T is defined
    const std::size_t want = std::max<std::size_t>(o.m, 2);
    Integer D;
    if (spec.kind == "quadratic") {
      auto els = rank_forcing_elements(spec.value, want, o.search_trace_bound);
      if (!els) throw HypothesisError("rank-forcing search exhausted for D = " + spec.value.get_str());
      D = spec.value;
      elements = std::move(*els);
    } else {
      auto hit = scan_rank_forcing(want, o.search_trace_bound, 2, o.D_max);
      if (!hit) throw HypothesisError("no D <= " + o.D_max.get_str() + " gives enough rank-forcing elements");
      D = hit->D;
      elements = std::move(hit->elements);
    }
    L = elements.front().field();
    cert["L_choice"] = "quadratic:" + D.get_str();
    auto gram = diagonality_certificate(elements);
    evidence = gram.to_json();
    evidence.erase("field");
    evidence["rank_bound"] = gram.rank_bound;
  } else {
    conditional = true;
    const Integer needed = std::max<Integer>(9 * Integer(o.m) * Integer(o.m), 240);
    std::optional<CubicChoice> choice;
    if (spec.kind == "cubic") {
      choice = scan_simplest_cubics(needed, spec.value, spec.value, o.delta_bound);
      if (!choice) {
        auto Lc = simplest_cubic(spec.value);
        auto delta = positive_codifferent_element(Lc, o.delta_bound);
        auto n = trace_one_elements(Lc.field, delta.delta).size();
        throw HypothesisError("a = " + spec.value.get_str() + " yields n = " + std::to_string(n) + " < " +
                              needed.get_str());
      }
    } else {
      choice = scan_simplest_cubics(needed, -1, o.cubic_a_max, o.delta_bound);
      if (!choice) throw HypothesisError("no simplest cubic with a <= " + o.cubic_a_max.get_str() + " reaches n >= " +
                                         needed.get_str());
    }
    L = choice->L.field;
    elements = choice->elements;
    cert["L_choice"] = "cubic:" + choice->L.a.get_str();
    const Integer n(static_cast<unsigned long>(elements.size()));
    nlohmann::json dual = nlohmann::json::array();
    for (const auto& c : choice->delta.dual_coords) dual.push_back(c.get_str());
    evidence = {{"delta", choice->delta.delta.to_json()},
                {"delta_dual_coords", dual},
                {"n", elements.size()},
                {"required_n", needed.get_str()},
                {"cubic_rank_bound", cubic_rank_bound(n).get_str()},
                {"conditional", true},
                {"conditional_on", "cited result: n totally positive a_i with Tr(delta a_i) = 1 force rank >= sqrt(n)/3"}};
  }
  cert["L"] = L->to_json();
  cert["elements"] = coords_list(elements);
  cert["rank_evidence"] = evidence;
  cert["conditional"] = conditional;

  const ThresholdB B = compute_B(bc.k, bc.l, elements, L, o.precision);
  cert["T"] = B.T.get_str();
  cert["B"] = B.to_json();

  KValidation validation;
  ZPoly K_poly;
  nlohmann::json K_json;
  if (o.K_poly) {
    K_poly = *o.K_poly;
    if (poly::degree(K_poly) != static_cast<int>(bc.k)) {
      throw UsageError("K must have degree k = " + std::to_string(bc.k));
    }
    validation = validate_K_for_theorem(K_poly, *L, B.B_ceiling, o.prime_budget, o.squarefree_limit);
    K_json["source"] = "supplied";
  } else {
    auto s = scan_K(bc.k, *L, B.B_ceiling, o);
    K_poly = s.poly;
    validation = s.validation;
    K_json["source"] = bc.k == 3 ? "scan x^3 - t x - 1" : "scan prod_{i=1}^{k} (x - t i) - 1";
    K_json["candidates_tried"] = s.tried;
  }
  K_json["poly"] = poly_json(K_poly);
  K_json["validation"] = validation.to_json();
  cert["K"] = K_json;

  nlohmann::json lemma_json;
  try {
    auto lemma = verify_subgroup_lemma(static_cast<int>(bc.k), static_cast<int>(bc.l));
    lemma_json = {{"checked", true}, {"holds", lemma.holds}, {"subgroups", lemma.count}};
  } catch (const BudgetExceeded&) {
    lemma_json = {{"checked", false}, {"holds", nullptr}, {"reason", "outside the enumeration budget"}};
  }
  cert["subgroup_lemma"] = lemma_json;

  bool rank_ok = false;
  if (bc.branch == Branch::quadratic) {
    rank_ok = evidence.at("valid").get<bool>() && evidence.at("rank_bound").get<std::size_t>() >= o.m;
  } else {
    rank_ok = cubic_rank_bound(Integer(static_cast<unsigned long>(elements.size()))) >= Integer(o.m);
  }
  const bool lemma_ok = !lemma_json.at("checked").get<bool>() || lemma_json.at("holds").get<bool>();

  nlohmann::json compositum_json = nullptr;
  if (validation.admissible() && o.d <= 12) {
    auto K = NumberField::from_polynomial(K_poly);
    auto KL = compositum(K, L);
    bool tower = true;
    for (const auto& a : elements) {
      if (KL.field->trace(KL.embed_l(a.coords())) != Integer(bc.k) * a.trace()) tower = false;
    }
    const Integer expected = ipow(K->discriminant(), bc.l) * ipow(L->discriminant(), bc.k);
    compositum_json = {{"degree", KL.field->degree()},
                       {"disc", KL.field->discriminant().get_str()},
                       {"disc_matches_product", KL.field->discriminant() == expected},
                       {"trace_tower", tower}};
  }
  cert["compositum"] = compositum_json;

  const bool valid = rank_ok && validation.admissible() && lemma_ok;
  cert["valid"] = valid;
  cert["conclusion"] = valid ? conclusion_text(bc, o.d, o.m) : "not established: unmet " + [&] {
    std::string s;
    for (const auto& u : validation.unmet()) s += (s.empty() ? "" : ", ") + u;
    if (!rank_ok) s += (s.empty() ? "" : ", ") + std::string("rank_evidence");
    if (!lemma_ok) s += (s.empty() ? "" : ", ") + std::string("subgroup_lemma");
    return s;
  }();
  return cert;
}

nlohmann::json VerifyReport::to_json() const { return {{"ok", ok}, {"problems", problems}, {"checked", checked}}; }

VerifyReport verify_certificate(const nlohmann::json& cert) {
  VerifyReport r;
  auto fail = [&](const std::string& why) {
    r.ok = false;
    r.problems.push_back(why);
  };
  auto note = [&](const std::string& what) { r.checked.push_back(what); };
  try {
    const auto d = cert.at("d").get<unsigned long>();
    const auto m = cert.at("m").get<unsigned long>();
    const auto k = cert.at("k").get<unsigned long>();
    const auto l = cert.at("l").get<unsigned long>();
    const std::string branch = cert.at("branch").get<std::string>();
    if (k * l != d) fail("k l != d");
    if (!k_allowed(k)) fail("k violates k = 3 or k >= 5");
    if (d == 2 || d == 3 || d == 4 || d == 8) fail("d is a prior-work case");
    if ((branch == "quadratic") != (l == 2) || (branch == "cubic") != (l == 3)) fail("branch and l disagree");
    note("degree bookkeeping");

    auto L = NumberField::from_json(cert.at("L"));
    if (L->degree() != l) fail("[L:Q] != l");
    note("L descriptor and discriminant");
    std::vector<AlgebraicInt> elements;
    for (const auto& e : cert.at("elements")) elements.emplace_back(L, coords_from_json(e));
    for (const auto& e : elements) {
      if (!e.is_totally_positive()) fail("an element is not totally positive");
    }

    const auto& ev = cert.at("rank_evidence");
    bool rank_ok = false;
    if (branch == "quadratic") {
      nlohmann::json g = ev;
      g["field"] = cert.at("L");
      auto gram = GramCertificate::from_json(g);
      std::vector<Coords> a, b;
      for (const auto& e : gram.elements) a.push_back(e.coords());
      for (const auto& e : elements) b.push_back(e.coords());
      if (a != b) fail("Gram certificate elements differ from the element list");
      auto replay = replay_certificate(gram);
      for (const auto& p : replay.problems) fail("gram: " + p);
      rank_ok = replay.ok && gram.valid && gram.rank_bound >= m;
      note("Cauchy-Schwarz boxes re-enumerated through the trace form");
    } else {
      auto delta = CodifferentElement::from_json(ev.at("delta"));
      if (!in_codifferent(*L, delta)) fail("delta is not in the codifferent");
      if (!is_totally_positive(*L, delta)) fail("delta is not totally positive");
      for (const auto& e : elements) {
        if (codifferent_trace(*L, delta, e.coords()) != 1) fail("Tr(delta a) != 1 for a listed element");
      }
      auto again = trace_one_elements_by_trace_form(L, delta);
      std::vector<Coords> a, b;
      for (const auto& e : again) a.push_back(e.coords());
      for (const auto& e : elements) b.push_back(e.coords());
      std::sort(b.begin(), b.end());
      if (a != b) fail("trace-one inventory differs from the trace-form enumeration");
      const Integer n(static_cast<unsigned long>(elements.size()));
      if (ev.at("n").get<std::size_t>() != elements.size()) fail("n does not match the element count");
      if (n < std::max<Integer>(9 * Integer(m) * Integer(m), 240)) fail("n < max(9 m^2, 240)");
      if (!ev.at("conditional").get<bool>() || !cert.at("conditional").get<bool>()) {
        fail("cubic certificate must be flagged conditional");
      }
      rank_ok = cubic_rank_bound(n) >= Integer(m);
      note("trace-one inventory re-enumerated through the trace form");
    }
    if (!rank_ok) fail("rank evidence does not reach m");

    const Integer T = trace_pair_max(elements);
    if (T != integer_from_json(cert.at("T"))) fail("T differs from 4 max Tr(a_i a_j)");
    note("T");
    auto B = ThresholdB::from_json(cert.at("B"));
    if (B.k != k || B.l != l || B.T != T) fail("B parameters disagree");
    Rational best = 0;
    std::size_t divisors = 0;
    for (unsigned long e = 1; e <= l; ++e) divisors += l % e == 0;
    if (B.per_e.size() != divisors) fail("B must list every divisor e of l");
    for (const auto& p : B.per_e) {
      const unsigned long N = k * p.e;
      if (l % p.e != 0 || p.N != N) fail("bad divisor entry in B");
      const Integer P = schur_product(N);
      Rational base(T, Integer(l) * Integer(N - 1));
      base.canonicalize();
      if (rpow(base, N * (N - 1)) * Rational(P * P) != p.radicand) fail("radicand for e = " + std::to_string(p.e));
      // lo^(2e) <= radicand <= hi^(2e)
      if (p.enclosure.lo() < 0 || rpow(p.enclosure.lo(), 2 * p.e) > p.radicand ||
          rpow(p.enclosure.hi(), 2 * p.e) < p.radicand) {
        fail("enclosure for e = " + std::to_string(p.e) + " does not contain the root");
      }
      best = std::max(best, p.enclosure.hi());
    }
    if (B.B_ceiling != floor_of(best) + 1) fail("B_ceiling is not floor(max upper endpoint) + 1");
    note("B enclosures by exact powering");

    const auto& K = cert.at("K");
    const ZPoly K_poly = poly_from_json(K.at("poly"));
    if (poly::degree(K_poly) != static_cast<int>(k)) fail("K has the wrong degree");
    auto Kf = NumberField::from_polynomial(K_poly);
    const Integer pd = poly::discriminant(K_poly);
    if (pd != Kf->discriminant()) fail("polynomial discriminant disagrees with the trace form");
    const bool sqf = certify_squarefree(pd, 100000).verdict == Squarefree::yes;
    if (!sqf) fail("disc_K not certified (polynomial discriminant not shown squarefree)");
    if (pd <= B.B_ceiling) fail("disc_K <= B_ceiling (margin " + Integer(pd - B.B_ceiling).get_str() + ")");
    if (gcd(pd, L->discriminant()) != 1) fail("disc_K and disc_L are not coprime");
    auto sk = certify_Sk(K_poly, 1000);
    if (sk.verdict != SkVerdict::certified) fail("Galois group of K not certified S_k");
    note("K admissibility");

    const auto& lemma = cert.at("subgroup_lemma");
    if (lemma.at("checked").get<bool>()) {
      auto rep = verify_subgroup_lemma(static_cast<int>(k), static_cast<int>(l));
      if (!rep.holds || !lemma.at("holds").get<bool>()) fail("subgroup lemma fails");
      if (rep.count != lemma.at("subgroups").get<std::size_t>()) fail("subgroup count differs");
      note("subgroup lemma");
    }
    if (cert.at("valid").get<bool>() != r.ok) fail("validity flag disagrees with the replay");
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("malformed certificate: ") + e.what());
  } catch (const Error& e) {
    fail(e.what());
  }
  return r;
}

}  // namespace univrank
