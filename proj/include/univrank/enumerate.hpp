#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "univrank/interval.hpp"
#include "univrank/number_field.hpp"

namespace univrank {

/// Process-wide knobs for the enumeration kernels.
struct EnumerationLimits {
  std::uint64_t max_points = 50'000'000;
  unsigned threads = 1;
};

EnumerationLimits enumeration_limits();
void set_enumeration_limits(const EnumerationLimits& limits);

/// Integer coordinate vectors c such that every embedding sigma_h(c) may lie
/// in bounds[h]. The candidate set is a superset (outward rounding); callers
/// filter exactly. `padding` widens every coordinate range, which must never
/// change a filtered result.
///
/// `accept` runs on every candidate and decides membership; results are
/// returned in lexicographic coordinate order regardless of thread count.
std::vector<Coords> enumerate_embedding_box(const NumberField& field, const std::vector<Interval>& bounds,
                                            const std::function<bool(const Coords&)>& accept, long padding = 0);

/// Same candidate walk, stopping at the first accepted vector.
std::optional<Coords> find_in_embedding_box(const NumberField& field, const std::vector<Interval>& bounds,
                                            const std::function<bool(const Coords&)>& accept, long padding = 0);

/// Fincke-Pohst enumeration of all integer vectors v with v^T G v <= bound,
/// G symmetric positive definite (checked; throws HypothesisError
/// otherwise). The visitor receives v and the exact value v^T G v and may
/// return false to stop early.
class ShortVectorEnumerator {
 public:
  ShortVectorEnumerator(const RatMatrix& gram, Rational bound);
  void run(const std::function<bool(const std::vector<Integer>&, const Rational&)>& visit);
  std::uint64_t nodes_visited() const { return nodes_; }

 private:
  bool recurse(std::size_t level, const Rational& remaining);

  std::size_t n_;
  RatMatrix lower_;
  std::vector<Rational> diag_;
  Rational bound_;
  std::vector<Integer> v_;
  std::function<bool(const std::vector<Integer>&, const Rational&)> visit_;
  std::uint64_t nodes_ = 0;
  std::uint64_t max_nodes_ = 0;
};

}  // namespace univrank
