#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "univrank/number_field.hpp"
#include "univrank/poly.hpp"

namespace univrank {

/// (perm, twist) in S_k x C_l; perm in one-line notation on {0..k-1}.
struct GroupElement {
  std::vector<int> perm;
  int twist = 0;
  friend bool operator==(const GroupElement& a, const GroupElement& b) = default;
};

/// S_k x C_l with elements indexed 0..k! l - 1.
class ProductGroup {
 public:
  ProductGroup(int k, int l);
  int k() const { return k_; }
  int l() const { return l_; }
  std::size_t order() const { return elements_.size(); }
  const GroupElement& element(std::size_t i) const { return elements_[i]; }
  std::size_t index_of(const GroupElement& g) const;
  /// (a b)(x) = a(b(x)), twists added mod l.
  GroupElement compose(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  GroupElement identity() const;
  std::size_t multiply(std::size_t a, std::size_t b) const;
  /// Sorted element indices of the subgroup generated by `gens`.
  std::vector<std::size_t> closure(const std::vector<std::size_t>& gens) const;
  /// S_{k-1} x {1}: permutations fixing k-1, twist 0.
  std::vector<std::size_t> base_subgroup() const;
  /// One element from each left coset of base_subgroup(): the cosets are
  /// labelled by (g(k-1), twist).
  std::vector<std::size_t> coset_representatives() const;

 private:
  int k_;
  int l_;
  std::vector<GroupElement> elements_;
};

struct SubgroupInfo {
  std::vector<std::size_t> members;
  bool fixes_last_point = false;  // G inside S_{k-1} x C_l
  bool contains_Sk = false;       // G contains S_k x {1}
  std::size_t twist_image = 1;    // order of the projection to C_l
};

/// Every subgroup between S_{k-1} x {1} and S_k x C_l, by closing H plus one
/// coset representative at a time over the growing list. Budget: k <= 6, l <= 4.
std::vector<SubgroupInfo> subgroups_between(int k, int l);
/// The same set from <H, X> over all subsets X of coset representatives.
std::vector<SubgroupInfo> subgroups_between_by_subsets(int k, int l);

struct LemmaReport {
  int k = 0;
  int l = 0;
  bool hypothesis = false;  // k = 3 or k >= 5
  bool holds = false;
  std::size_t count = 0;
  std::size_t second_count = 0;
  bool counts_match = false;
  std::vector<SubgroupInfo> subgroups;
  std::vector<std::size_t> violators;  // indices into subgroups
  nlohmann::json to_json() const;
};

LemmaReport verify_subgroup_lemma(int k, int l);

struct CycleTypeEvidence {
  std::int64_t p = 0;
  std::vector<int> pattern;  // factor degrees, descending
};

/// Degree patterns of poly mod p for primes p <= prime_budget not dividing
/// the discriminant, by distinct-degree factorization.
std::vector<CycleTypeEvidence> dedekind_patterns(const ZPoly& poly, std::int64_t prime_budget);
/// Factor degrees of poly mod p (poly squarefree mod p, monic).
std::vector<int> factor_degrees_mod_p(const ZPoly& poly, std::int64_t p);

enum class SkVerdict { certified, inconclusive };

struct SkReport {
  SkVerdict verdict = SkVerdict::inconclusive;
  int k = 0;
  std::string irreducibility;  // how irreducibility was established
  std::optional<CycleTypeEvidence> transposition;
  std::optional<CycleTypeEvidence> large_prime_cycle;
  std::int64_t large_prime = 0;
  std::size_t primes_used = 0;
  nlohmann::json to_json() const;
};

/// One-sided: certified only if the group is provably S_k. Throws
/// HypothesisError for a reducible polynomial.
SkReport certify_Sk(const ZPoly& poly, std::int64_t prime_budget = 1000);

struct KValidation {
  Integer poly_disc;
  bool disc_certified = false;  // poly disc squarefree, so it equals disc_K
  Integer disc_K;
  Integer B_ceiling;
  bool exceeds_B = false;
  Integer margin;  // disc_K - B_ceiling
  Integer gcd_with_L;
  bool coprime = false;
  SkReport sk;
  bool admissible() const { return disc_certified && exceeds_B && coprime && sk.verdict == SkVerdict::certified; }
  /// Unmet checklist items by name.
  std::vector<std::string> unmet() const;
  nlohmann::json to_json() const;
};

/// Throws HypothesisError if K_poly is reducible or not totally real.
KValidation validate_K_for_theorem(const ZPoly& K_poly, const NumberField& L, const Integer& B_ceiling,
                                   std::int64_t prime_budget = 1000, std::int64_t squarefree_limit = 100000);

}  // namespace univrank
