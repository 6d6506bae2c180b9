#include "univrank/galois.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "univrank/errors.hpp"

namespace univrank {

namespace {

std::size_t factorial(int k) {
  std::size_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

std::size_t perm_rank(const std::vector<int>& perm) {
  const int k = static_cast<int>(perm.size());
  std::size_t rank = 0;
  for (int i = 0; i < k; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < k; ++j) {
      if (perm[j] < perm[i]) ++smaller;
    }
    rank = rank * static_cast<std::size_t>(k - i) + static_cast<std::size_t>(smaller);
  }
  return rank;
}

}  // namespace

ProductGroup::ProductGroup(int k, int l) : k_(k), l_(l) {
  if (k < 1 || l < 1) throw UsageError("need k >= 1 and l >= 1");
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (int t = 0; t < l; ++t) elements_.push_back({perm, t});
  } while (std::next_permutation(perm.begin(), perm.end()));
}

std::size_t ProductGroup::index_of(const GroupElement& g) const {
  return perm_rank(g.perm) * static_cast<std::size_t>(l_) + static_cast<std::size_t>(g.twist);
}

GroupElement ProductGroup::compose(const GroupElement& a, const GroupElement& b) const {
  GroupElement c;
  c.perm.resize(a.perm.size());
  for (std::size_t x = 0; x < a.perm.size(); ++x) c.perm[x] = a.perm[static_cast<std::size_t>(b.perm[x])];
  c.twist = (a.twist + b.twist) % l_;
  return c;
}

GroupElement ProductGroup::inverse(const GroupElement& a) const {
  GroupElement c;
  c.perm.resize(a.perm.size());
  for (std::size_t x = 0; x < a.perm.size(); ++x) c.perm[static_cast<std::size_t>(a.perm[x])] = static_cast<int>(x);
  c.twist = (l_ - a.twist) % l_;
  return c;
}

GroupElement ProductGroup::identity() const { return elements_.front(); }

std::size_t ProductGroup::multiply(std::size_t a, std::size_t b) const {
  return index_of(compose(elements_[a], elements_[b]));
}

std::vector<std::size_t> ProductGroup::closure(const std::vector<std::size_t>& gens) const {
  std::vector<char> in(elements_.size(), 0);
  std::vector<std::size_t> members{0};
  in[0] = 1;
  for (std::size_t pos = 0; pos < members.size(); ++pos) {
    for (std::size_t g : gens) {
      std::size_t x = multiply(members[pos], g);
      if (!in[x]) {
        in[x] = 1;
        members.push_back(x);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<std::size_t> ProductGroup::base_subgroup() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const auto& g = elements_[i];
    if (g.twist == 0 && g.perm.back() == k_ - 1) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> ProductGroup::coset_representatives() const {
  std::vector<std::size_t> reps;
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const auto& g = elements_[i];
    if (seen.insert({g.perm.back(), g.twist}).second) reps.push_back(i);
  }
  return reps;
}

namespace {

void check_budget(int k, int l) {
  if (k < 2 || l < 1) throw UsageError("need k >= 2 and l >= 1");
  if (k > 6 || l > 4) throw BudgetExceeded("subgroup enumeration supports k <= 6 and l <= 4");
}

/// Generators of S_{k-1} x {1}: adjacent transpositions below k-1.
std::vector<std::size_t> base_generators(const ProductGroup& G) {
  std::vector<std::size_t> gens;
  for (int i = 0; i + 2 < G.k(); ++i) {
    GroupElement t = G.identity();
    std::swap(t.perm[static_cast<std::size_t>(i)], t.perm[static_cast<std::size_t>(i + 1)]);
    gens.push_back(G.index_of(t));
  }
  return gens;
}

SubgroupInfo describe(const ProductGroup& G, std::vector<std::size_t> members) {
  SubgroupInfo info;
  info.fixes_last_point = true;
  std::size_t untwisted = 0;
  std::set<int> twists;
  for (std::size_t i : members) {
    const auto& g = G.element(i);
    if (g.perm.back() != G.k() - 1) info.fixes_last_point = false;
    if (g.twist == 0) ++untwisted;
    twists.insert(g.twist);
  }
  info.contains_Sk = untwisted == factorial(G.k());
  info.twist_image = twists.size();
  info.members = std::move(members);
  return info;
}

std::vector<SubgroupInfo> describe_all(const ProductGroup& G, const std::set<std::vector<std::size_t>>& found) {
  std::vector<std::vector<std::size_t>> sorted(found.begin(), found.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<SubgroupInfo> out;
  for (auto& m : sorted) out.push_back(describe(G, std::move(m)));
  return out;
}

}  // namespace

std::vector<SubgroupInfo> subgroups_between(int k, int l) {
  check_budget(k, l);
  ProductGroup G(k, l);
  const auto reps = G.coset_representatives();
  std::set<std::vector<std::size_t>> found;
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> queue;  // (gens, members)
  auto base_gens = base_generators(G);
  auto base = G.closure(base_gens);
  found.insert(base);
  queue.push_back({base_gens, base});
  for (std::size_t pos = 0; pos < queue.size(); ++pos) {
    for (std::size_t r : reps) {
      const auto& members = queue[pos].second;
      if (std::binary_search(members.begin(), members.end(), r)) continue;
      auto gens = queue[pos].first;
      gens.push_back(r);
      auto bigger = G.closure(gens);
      if (found.insert(bigger).second) queue.push_back({std::move(gens), std::move(bigger)});
    }
  }
  return describe_all(G, found);
}

std::vector<SubgroupInfo> subgroups_between_by_subsets(int k, int l) {
  check_budget(k, l);
  ProductGroup G(k, l);
  const auto reps = G.coset_representatives();
  if (reps.size() > 16) throw BudgetExceeded("subset enumeration supports at most 16 cosets");
  const auto base_gens = base_generators(G);
  std::set<std::vector<std::size_t>> found;
  for (std::size_t mask = 0; mask < (std::size_t{1} << reps.size()); ++mask) {
    auto gens = base_gens;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (mask & (std::size_t{1} << i)) gens.push_back(reps[i]);
    }
    found.insert(G.closure(gens));
  }
  return describe_all(G, found);
}

LemmaReport verify_subgroup_lemma(int k, int l) {
  LemmaReport r;
  r.k = k;
  r.l = l;
  r.hypothesis = k == 3 || k >= 5;
  r.subgroups = subgroups_between(k, l);
  r.count = r.subgroups.size();
  r.holds = true;
  for (std::size_t i = 0; i < r.subgroups.size(); ++i) {
    const auto& s = r.subgroups[i];
    if (!s.fixes_last_point && !s.contains_Sk) {
      r.holds = false;
      r.violators.push_back(i);
    }
  }
  try {
    auto second = subgroups_between_by_subsets(k, l);
    r.second_count = second.size();
    std::set<std::vector<std::size_t>> a, b;
    for (const auto& s : r.subgroups) a.insert(s.members);
    for (const auto& s : second) b.insert(s.members);
    r.counts_match = a == b;
  } catch (const BudgetExceeded&) {
    r.second_count = 0;
    r.counts_match = false;
  }
  return r;
}

nlohmann::json LemmaReport::to_json() const {
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& s : subgroups) {
    subs.push_back({{"order", s.members.size()},
                    {"inside_S_{k-1}xC_l", s.fixes_last_point},
                    {"contains_S_kx1", s.contains_Sk},
                    {"twist_image", s.twist_image}});
  }
  return {{"k", k},
          {"l", l},
          {"hypothesis_k3_or_k5plus", hypothesis},
          {"holds", holds},
          {"count", count},
          {"second_count", second_count},
          {"counts_match", counts_match},
          {"violators", violators},
          {"subgroups", subs}};
}

namespace {

using ModPoly = std::vector<std::int64_t>;  // low to high, reduced mod p

struct Fp {
  std::int64_t p;

  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
  }
  std::int64_t inv(std::int64_t a) const {
    std::int64_t r = 1, e = p - 2;
    a %= p;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  void trim(ModPoly& f) const {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }
  ModPoly reduce(const ZPoly& f) const {
    ModPoly out;
    for (const auto& c : f) {
      Integer r = c % Integer(p);
      if (r < 0) r += p;
      out.push_back(r.get_si());
    }
    trim(out);
    return out;
  }
  ModPoly rem(ModPoly a, const ModPoly& b) const {
    const std::int64_t lead_inv = inv(b.back());
    while (a.size() >= b.size()) {
      const std::int64_t c = mul(a.back(), lead_inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        a[shift + i] = (a[shift + i] - mul(c, b[i]) + p) % p;
      }
      trim(a);
    }
    return a;
  }
  ModPoly quot(ModPoly a, const ModPoly& b) const {
    const std::int64_t lead_inv = inv(b.back());
    ModPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size()) {
      const std::int64_t c = mul(a.back(), lead_inv);
      const std::size_t shift = a.size() - b.size();
      q[shift] = c;
      for (std::size_t i = 0; i < b.size(); ++i) {
        a[shift + i] = (a[shift + i] - mul(c, b[i]) + p) % p;
      }
      trim(a);
    }
    return q;
  }
  ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m) const {
    if (a.empty() || b.empty()) return {};
    ModPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mul(a[i], b[j])) % p;
    }
    trim(c);
    return rem(std::move(c), m);
  }
  ModPoly powmod(ModPoly base, std::int64_t e, const ModPoly& m) const {
    ModPoly r{1};
    r = rem(r, m);
    base = rem(std::move(base), m);
    while (e > 0) {
      if (e & 1) r = mulmod(r, base, m);
      base = mulmod(base, base, m);
      e >>= 1;
    }
    return r;
  }
  ModPoly gcd(ModPoly a, ModPoly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      ModPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.empty()) {
      const std::int64_t li = inv(a.back());
      for (auto& c : a) c = mul(c, li);
    }
    return a;
  }
  ModPoly sub(ModPoly a, const ModPoly& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] - b[i] + p) % p;
    trim(a);
    return a;
  }
};

int mod_degree(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

void require_monic(const ZPoly& poly) {
  if (poly::degree(poly) < 1 || poly.back() != 1) throw UsageError("polynomial must be monic of positive degree");
}

}  // namespace

std::vector<int> factor_degrees_mod_p(const ZPoly& poly, std::int64_t p) {
  require_monic(poly);
  Fp F{p};
  ModPoly f = F.reduce(poly);
  std::vector<int> degrees;
  const ModPoly x{0, 1};
  ModPoly h = F.rem(x, f);
  for (int d = 1; mod_degree(f) >= 2 * d; ++d) {
    h = F.powmod(h, p, f);
    ModPoly g = F.gcd(F.sub(h, x), f);
    if (mod_degree(g) > 0) {
      for (int i = 0; i < mod_degree(g) / d; ++i) degrees.push_back(d);
      f = F.quot(f, g);
      h = F.rem(h, f);
    }
  }
  if (mod_degree(f) > 0) degrees.push_back(mod_degree(f));
  std::sort(degrees.rbegin(), degrees.rend());
  return degrees;
}

std::vector<CycleTypeEvidence> dedekind_patterns(const ZPoly& poly, std::int64_t prime_budget) {
  require_monic(poly);
  const Integer disc = poly::discriminant(poly);
  if (disc == 0) throw HypothesisError("polynomial is not squarefree");
  std::vector<CycleTypeEvidence> out;
  for (std::int64_t p : primes_up_to(prime_budget)) {
    if (disc % Integer(p) == 0) continue;
    out.push_back({p, factor_degrees_mod_p(poly, p)});
  }
  return out;
}

namespace {

bool is_prime_small(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

/// Exactly one part equal to 2 and every other part odd: an odd power of the
/// Frobenius is then a transposition.
bool yields_transposition(const std::vector<int>& pattern) {
  int twos = 0;
  for (int d : pattern) {
    if (d == 2) {
      ++twos;
    } else if (d % 2 == 0) {
      return false;
    }
  }
  return twos == 1;
}

/// A prime part q > k/2; the other parts are smaller than q, so a power of
/// the Frobenius is a q-cycle.
int large_prime_part(const std::vector<int>& pattern, int k) {
  for (int d : pattern) {
    if (is_prime_small(d) && 2 * d > k) return d;
  }
  return 0;
}

nlohmann::json evidence_json(const CycleTypeEvidence& e) { return {{"p", e.p}, {"pattern", e.pattern}}; }

}  // namespace

nlohmann::json SkReport::to_json() const {
  nlohmann::json j = {{"verdict", verdict == SkVerdict::certified ? "certified" : "inconclusive"},
                      {"k", k},
                      {"irreducibility", irreducibility},
                      {"primes_used", primes_used}};
  j["transposition"] = transposition ? evidence_json(*transposition) : nlohmann::json(nullptr);
  j["large_prime_cycle"] = large_prime_cycle ? evidence_json(*large_prime_cycle) : nlohmann::json(nullptr);
  j["large_prime"] = large_prime;
  return j;
}

SkReport certify_Sk(const ZPoly& poly, std::int64_t prime_budget) {
  require_monic(poly);
  SkReport r;
  r.k = poly::degree(poly);
  if (!poly::is_squarefree(poly)) throw HypothesisError("reducible polynomial (not squarefree)");
  const auto patterns = dedekind_patterns(poly, prime_budget);
  r.primes_used = patterns.size();
  if (r.k == 1) {
    r.irreducibility = "degree one";
    r.verdict = SkVerdict::certified;
    return r;
  }
  if (poly::count_real_roots(poly) == r.k) {
    NumberField::from_polynomial(poly);  // throws for a reducible polynomial
    r.irreducibility = "exact real-root subset test";
  } else {
    // subset sums of factor degrees that stay possible at every prime
    std::vector<char> possible(static_cast<std::size_t>(r.k) + 1, 1);
    for (const auto& e : patterns) {
      std::vector<char> sums(possible.size(), 0);
      sums[0] = 1;
      for (int d : e.pattern) {
        for (int s = r.k; s >= d; --s) sums[s] = sums[s] || sums[s - d];
      }
      for (std::size_t s = 0; s < possible.size(); ++s) possible[s] = possible[s] && sums[s];
    }
    bool proper = false;
    for (int s = 1; s < r.k; ++s) proper = proper || possible[static_cast<std::size_t>(s)];
    if (proper) {
      r.irreducibility = "not established";
      return r;
    }
    r.irreducibility = "factor degree patterns mod p";
  }
  for (const auto& e : patterns) {
    if (!r.transposition && yields_transposition(e.pattern)) r.transposition = e;
    if (!r.large_prime_cycle) {
      if (int q = large_prime_part(e.pattern, r.k)) {
        r.large_prime_cycle = e;
        r.large_prime = q;
      }
    }
  }
  if (r.transposition && r.large_prime_cycle) r.verdict = SkVerdict::certified;
  return r;
}

std::vector<std::string> KValidation::unmet() const {
  std::vector<std::string> out;
  if (!disc_certified) out.push_back("disc_K_certified");
  if (!exceeds_B) out.push_back("disc_K_exceeds_B");
  if (!coprime) out.push_back("coprime_discriminants");
  if (sk.verdict != SkVerdict::certified) out.push_back("galois_group_S_k");
  return out;
}

nlohmann::json KValidation::to_json() const {
  return {{"poly_disc", poly_disc.get_str()},
          {"disc_certified", disc_certified},
          {"disc_K", disc_certified ? nlohmann::json(disc_K.get_str()) : nlohmann::json(nullptr)},
          {"B_ceiling", B_ceiling.get_str()},
          {"disc_K_exceeds_B", exceeds_B},
          {"margin", margin.get_str()},
          {"gcd_with_disc_L", gcd_with_L.get_str()},
          {"coprime", coprime},
          {"galois", sk.to_json()},
          {"admissible", admissible()},
          {"unmet", unmet()}};
}

KValidation validate_K_for_theorem(const ZPoly& K_poly, const NumberField& L, const Integer& B_ceiling,
                                   std::int64_t prime_budget, std::int64_t squarefree_limit) {
  auto K = NumberField::from_polynomial(K_poly);
  KValidation v;
  v.poly_disc = K->discriminant();
  v.B_ceiling = B_ceiling;
  auto sq = certify_squarefree(v.poly_disc, squarefree_limit);
  v.disc_certified = sq.verdict == Squarefree::yes;
  v.disc_K = v.poly_disc;
  v.margin = v.poly_disc - B_ceiling;
  v.exceeds_B = v.disc_certified && v.poly_disc > B_ceiling;
  // disc_K divides the polynomial discriminant, so coprimality transfers
  v.gcd_with_L = gcd(v.poly_disc, L.discriminant());
  v.coprime = v.gcd_with_L == 1;
  v.sk = certify_Sk(K_poly, prime_budget);
  return v;
}

}  // namespace univrank
