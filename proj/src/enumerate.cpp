#include "univrank/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <optional>
#include <thread>

#include "univrank/errors.hpp"

namespace univrank {

namespace {

std::mutex g_limits_mutex;
EnumerationLimits g_limits;

struct BoxPlan {
  std::size_t n = 0;
  std::vector<Integer> lo;  // per coordinate
  std::vector<Integer> hi;
  bool slice_first = false;  // coordinate 0 solved from the other ones
  std::shared_ptr<const EmbeddingTable> table;
};

BoxPlan plan_box(const NumberField& field, const std::vector<Interval>& bounds, long padding) {
  BoxPlan plan;
  plan.n = field.degree();
  if (bounds.size() != plan.n) throw UsageError("one bound per embedding required");
  const auto& inv = field.inverse_embedding();
  for (std::size_t j = 0; j < plan.n; ++j) {
    Interval acc = Interval::point(0);
    for (std::size_t h = 0; h < plan.n; ++h) acc += inv[j][h] * bounds[h];
    plan.lo.push_back(floor_of(acc.lo()) - padding);
    plan.hi.push_back(ceil_of(acc.hi()) + padding);
  }
  plan.slice_first = field.first_basis_is_one() && plan.n > 1;
  plan.table = field.embedding_table(0);
  return plan;
}

/// Walks the outer coordinates (1..n-1 when slicing) of the box and, for
/// each, the admissible range of coordinate 0. `visit` returns false to stop.
template <typename Visit>
bool walk_box(const BoxPlan& plan, const std::vector<Interval>& bounds, long padding, const Integer& outer_lo,
              const Integer& outer_hi, std::uint64_t& counter, std::uint64_t max_points, Visit&& visit) {
  const std::size_t n = plan.n;
  Coords c(n, Integer(0));
  if (n == 0) return true;
  if (!plan.slice_first) {
    // plain odometer over every coordinate; coordinate n-1 is split
    for (std::size_t j = 0; j + 1 < n; ++j) c[j] = plan.lo[j];
    c[n - 1] = outer_lo;
    if (outer_lo > outer_hi) return true;
    for (;;) {
      if (++counter > max_points) throw BudgetExceeded("enumeration budget exhausted");
      if (!visit(c)) return false;
      std::size_t j = 0;
      for (; j < n; ++j) {
        const Integer& top = (j == n - 1) ? outer_hi : plan.hi[j];
        if (c[j] < top) {
          ++c[j];
          break;
        }
        c[j] = (j == n - 1) ? outer_lo : plan.lo[j];
      }
      if (j == n) return true;
    }
  }
  // outer coordinates 1..n-1, coordinate n-1 restricted to [outer_lo, outer_hi]
  for (std::size_t j = 1; j + 1 < n; ++j) c[j] = plan.lo[j];
  c[n - 1] = outer_lo;
  if (outer_lo > outer_hi) return true;
  for (;;) {
    // sigma_h(c) = c_0 + s_h with s_h enclosed from the table
    Rational lo0 = Rational(plan.lo[0]);
    Rational hi0 = Rational(plan.hi[0]);
    bool empty = false;
    for (std::size_t h = 0; h < n && !empty; ++h) {
      Interval s = Interval::point(0);
      for (std::size_t j = 1; j < n; ++j) {
        if (c[j] != 0) s += plan.table->basis[h][j] * Rational(c[j]);
      }
      Rational l = bounds[h].lo() - s.hi();
      Rational u = bounds[h].hi() - s.lo();
      if (l > lo0) lo0 = l;
      if (u < hi0) hi0 = u;
      if (lo0 > hi0) empty = true;
    }
    if (!empty) {
      Integer from = floor_of(lo0) - padding;
      Integer to = ceil_of(hi0) + padding;
      if (from < plan.lo[0]) from = plan.lo[0];
      if (to > plan.hi[0]) to = plan.hi[0];
      for (Integer x = from; x <= to; ++x) {
        if (++counter > max_points) throw BudgetExceeded("enumeration budget exhausted");
        c[0] = x;
        if (!visit(c)) return false;
      }
    } else if (++counter > max_points) {
      throw BudgetExceeded("enumeration budget exhausted");
    }
    std::size_t j = 1;
    for (; j < n; ++j) {
      const Integer& top = (j == n - 1) ? outer_hi : plan.hi[j];
      if (c[j] < top) {
        ++c[j];
        break;
      }
      c[j] = (j == n - 1) ? outer_lo : plan.lo[j];
    }
    if (j == n) return true;
  }
}

}  // namespace

EnumerationLimits enumeration_limits() {
  std::lock_guard<std::mutex> lock(g_limits_mutex);
  return g_limits;
}

void set_enumeration_limits(const EnumerationLimits& limits) {
  std::lock_guard<std::mutex> lock(g_limits_mutex);
  g_limits = limits;
  if (g_limits.threads == 0) g_limits.threads = 1;
}

std::vector<Coords> enumerate_embedding_box(const NumberField& field, const std::vector<Interval>& bounds,
                                            const std::function<bool(const Coords&)>& accept, long padding) {
  const auto limits = enumeration_limits();
  BoxPlan plan = plan_box(field, bounds, padding);
  const std::size_t n = plan.n;
  const Integer& first = plan.lo[n - 1];
  const Integer& last = plan.hi[n - 1];
  if (first > last) return {};
  Integer span = last - first + 1;
  unsigned workers = limits.threads;
  if (span < workers) workers = static_cast<unsigned>(span.get_ui());
  if (workers == 0) workers = 1;

  std::vector<std::vector<Coords>> partial(workers);
  std::atomic<std::uint64_t> total{0};
  std::vector<std::exception_ptr> errors(workers);
  auto job = [&](unsigned w) {
    try {
      Integer lo = first + span * w / workers;
      Integer hi = first + span * (w + 1) / workers - 1;
      std::uint64_t counter = 0;
      walk_box(plan, bounds, padding, lo, hi, counter, limits.max_points, [&](const Coords& c) {
        if (accept(c)) partial[w].push_back(c);
        return true;
      });
      total += counter;
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Coords> out;
  for (auto& p : partial) {
    for (auto& c : p) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Coords> find_in_embedding_box(const NumberField& field, const std::vector<Interval>& bounds,
                                            const std::function<bool(const Coords&)>& accept, long padding) {
  const auto limits = enumeration_limits();
  BoxPlan plan = plan_box(field, bounds, padding);
  const std::size_t n = plan.n;
  std::optional<Coords> found;
  std::uint64_t counter = 0;
  walk_box(plan, bounds, padding, plan.lo[n - 1], plan.hi[n - 1], counter, limits.max_points, [&](const Coords& c) {
    if (accept(c)) {
      found = c;
      return false;
    }
    return true;
  });
  return found;
}

ShortVectorEnumerator::ShortVectorEnumerator(const RatMatrix& gram, Rational bound)
    : n_(gram.size()), bound_(std::move(bound)) {
  if (!matrix::ldl_positive_definite(gram, lower_, diag_)) {
    throw HypothesisError("quadratic form is not positive definite");
  }
  max_nodes_ = enumeration_limits().max_points;
}

void ShortVectorEnumerator::run(const std::function<bool(const std::vector<Integer>&, const Rational&)>& visit) {
  visit_ = visit;
  v_.assign(n_, Integer(0));
  nodes_ = 0;
  if (bound_ < 0) return;
  if (n_ == 0) {
    visit_(v_, Rational(0));
    return;
  }
  recurse(n_ - 1, bound_);
}

// q(v) = sum_i d_i (v_i + sum_{j>i} L_{ji} v_j)^2, walked from the last
// coordinate down
bool ShortVectorEnumerator::recurse(std::size_t level, const Rational& remaining) {
  if (++nodes_ > max_nodes_) throw BudgetExceeded("short vector enumeration budget exhausted");
  Rational center = 0;
  for (std::size_t j = level + 1; j < n_; ++j) {
    if (v_[j] != 0) center += lower_[j][level] * v_[j];
  }
  const Rational& d = diag_[level];
  Rational radius = sqrt_upper(remaining / d, 32);
  Integer from = ceil_of(-center - radius);
  Integer to = floor_of(-center + radius);
  for (Integer x = from; x <= to; ++x) {
    Rational t = Rational(x) + center;
    Rational rest = remaining - d * t * t;
    if (rest < 0) continue;
    v_[level] = x;
    if (level == 0) {
      if (!visit_(v_, bound_ - rest)) return false;
    } else if (!recurse(level - 1, rest)) {
      return false;
    }
  }
  v_[level] = 0;
  return true;
}

}  // namespace univrank
