#pragma once

// Reference implementations used only by tests. Each is the slowest obvious
// way to compute its answer and shares no code with the library algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "dronesched/core_model.hpp"
#include "dronesched/interval_generator.hpp"

namespace dronesched::testing {

// Least positive integer not in `used`.
inline IdNumber naive_mex(const std::set<IdNumber>& used) {
  IdNumber candidate = 1;
  while (used.count(candidate)) ++candidate;
  return candidate;
}

// First-fit by linear scan over the bins of one id, in bin-number order.
class NaiveFirstFit {
 public:
  explicit NaiveFirstFit(Rational budget) : budget_(std::move(budget)) {}

  BinNumber place(IdNumber id, const Rational& cost) {
    auto& bins = bins_[id];
    for (auto& [bin, rem] : bins) {
      if (rem >= cost) {
        rem -= cost;
        BinNumber chosen = bin;
        if (rem == 0) bins.erase(std::find_if(bins.begin(), bins.end(), [&](auto& b) { return b.first == chosen; }));
        return chosen;
      }
    }
    BinNumber fresh = ++created_[id];
    if (budget_ - cost > 0) bins.emplace_back(fresh, budget_ - cost);
    return fresh;
  }

  std::vector<std::pair<BinNumber, Rational>> bins(IdNumber id) const {
    auto it = bins_.find(id);
    return it == bins_.end() ? std::vector<std::pair<BinNumber, Rational>>{} : it->second;
  }

 private:
  Rational budget_;
  std::map<IdNumber, std::vector<std::pair<BinNumber, Rational>>> bins_;
  std::map<IdNumber, BinNumber> created_;
};

// Next-fit as a list of bin loads per id; only the last bin is open.
class NaiveNextFit {
 public:
  explicit NaiveNextFit(Rational budget) : budget_(std::move(budget)) {}

  BinNumber place(IdNumber id, const Rational& cost) {
    auto& loads = loads_[id];
    if (loads.empty() || loads.back() + cost > budget_) loads.push_back(0);
    loads.back() += cost;
    return static_cast<BinNumber>(loads.size());
  }

 private:
  Rational budget_;
  std::map<IdNumber, std::vector<Rational>> loads_;
};

inline bool pairwise_disjoint(const std::vector<const Interval*>& group) {
  for (std::size_t a = 0; a < group.size(); ++a)
    for (std::size_t b = a + 1; b < group.size(); ++b)
      if (overlaps(*group[a], *group[b])) return false;
  return true;
}

// Largest pairwise-overlapping subset, by enumerating all subsets.
inline std::size_t brute_max_clique(const std::vector<Interval>& intervals) {
  const std::size_t n = intervals.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::size_t size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size <= best) continue;
    bool clique = true;
    for (std::size_t a = 0; a < n && clique; ++a)
      for (std::size_t b = a + 1; b < n && clique; ++b)
        if ((mask >> a & 1) && (mask >> b & 1) && !overlaps(intervals[a], intervals[b])) clique = false;
    if (clique) best = size;
  }
  return best;
}

// Calls visit(block_of) for every set partition of {0..n-1}, in restricted
// growth string form.
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> block(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      visit(block);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      block[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) {
    visit(block);
    return;
  }
  rec(0, 0);
}

// Loads of each block when every block is pairwise disjoint, else empty.
inline std::optional<std::vector<Rational>> feasible_loads(const std::vector<Interval>& intervals,
                                                           const std::vector<std::size_t>& block_of) {
  std::size_t blocks = block_of.empty() ? 0 : *std::max_element(block_of.begin(), block_of.end()) + 1;
  std::vector<std::vector<const Interval*>> groups(blocks);
  std::vector<Rational> loads(blocks, 0);
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    groups[block_of[i]].push_back(&intervals[i]);
    loads[block_of[i]] += intervals[i].cost;
  }
  for (const auto& g : groups)
    if (!pairwise_disjoint(g)) return std::nullopt;
  return loads;
}

// Minimum number of disjoint, budget-respecting groups over all partitions.
inline std::size_t brute_opt_budgeted(const std::vector<Interval>& intervals, const Rational& budget) {
  std::size_t best = intervals.size();
  for_each_partition(intervals.size(), [&](const std::vector<std::size_t>& block_of) {
    auto loads = feasible_loads(intervals, block_of);
    if (!loads || loads->size() >= best) return;
    if (std::all_of(loads->begin(), loads->end(), [&](const Rational& l) { return l <= budget; }))
      best = loads->size();
  });
  return best;
}

// Fewest drones, taken from the multiset `capacities`, that can serve every
// interval offline (each drone: disjoint intervals with load <= capacity).
// Returns nullopt when even all capacities do not suffice.
inline std::optional<std::size_t> brute_ovds_opt(const std::vector<Interval>& intervals,
                                                 std::vector<Rational> capacities) {
  std::sort(capacities.begin(), capacities.end(), std::greater<>());
  std::optional<std::size_t> best;
  for_each_partition(intervals.size(), [&](const std::vector<std::size_t>& block_of) {
    auto loads = feasible_loads(intervals, block_of);
    if (!loads || loads->size() > capacities.size()) return;
    if (best && loads->size() >= *best) return;
    std::sort(loads->begin(), loads->end(), std::greater<>());
    for (std::size_t k = 0; k < loads->size(); ++k)
      if ((*loads)[k] > capacities[k]) return;
    best = loads->size();
  });
  return best;
}

// n intervals over 2n distinct integer endpoints drawn from [0, spread*n];
// costs budget * k / 20, k uniform in [1, 20]; arrival = left.
inline std::vector<Interval> random_distinct_intervals(std::mt19937_64& rng, std::size_t n,
                                                       const Rational& budget, std::size_t spread = 3) {
  std::vector<std::int64_t> points(spread * n + 2);
  std::iota(points.begin(), points.end(), 0);
  std::shuffle(points.begin(), points.end(), rng);
  points.resize(2 * n);
  std::uniform_int_distribution<int> step(1, 20);
  std::vector<Interval> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t a = points[2 * i], b = points[2 * i + 1];
    if (a > b) std::swap(a, b);
    Interval iv;
    iv.id = "t" + std::to_string(i);
    iv.left = Rational(a);
    iv.right = Rational(b);
    iv.arrival = iv.left;
    iv.cost = budget * step(rng) / 20;
    out.push_back(std::move(iv));
  }
  std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.left < y.left; });
  return out;
}

inline Interval make_interval(std::string id, Rational left, Rational right, Rational cost) {
  Interval iv;
  iv.id = std::move(id);
  iv.arrival = left;
  iv.left = std::move(left);
  iv.right = std::move(right);
  iv.cost = std::move(cost);
  return iv;
}

// sqrt(a) + sqrt(b) <= c, decided with rationals only.
inline bool root_sum_at_most(const Rational& a, const Rational& b, const Rational& c) {
  if (c < 0) return false;
  Rational rest = c * c - a - b;
  return rest >= 0 && 4 * a * b <= rest * rest;
}

// Flight cost on the grid: the least m * quantum (m >= 1) with
// dist(S_i, q) + dist(q, S_j) <= m * quantum * speed.
inline Rational grid_cost(const Stop& from, const DeliveryRequest& q, const Stop& to, const Rational& speed,
                          const Rational& quantum) {
  auto sq = [](const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1) {
    return (x0 - x1) * (x0 - x1) + (y0 - y1) * (y0 - y1);
  };
  const Rational a = sq(from.x, from.y, q.x, q.y);
  const Rational b = sq(q.x, q.y, to.x, to.y);
  const double guess = (std::sqrt(a.convert_to<double>()) + std::sqrt(b.convert_to<double>())) /
                       (speed * quantum).convert_to<double>();
  BigInt m = BigInt(static_cast<long long>(std::max(0.0, guess - 2)));
  while (!root_sum_at_most(a, b, Rational(m) * quantum * speed)) ++m;
  while (m > 0 && root_sum_at_most(a, b, Rational(m - 1) * quantum * speed)) --m;
  if (m == 0) m = 1;
  return Rational(m) * quantum;
}

struct BrutePair {
  std::size_t i = 0;
  std::size_t j = 0;
  Rational cost;
};

// Cheapest valid pair scanning landing stops from the back, then takeoff
// stops from the back; ties resolved explicitly toward small (i, j).
inline std::optional<BrutePair> brute_best_pair(const Route& route, const DeliveryRequest& q,
                                                const Rational& quantum) {
  std::optional<BrutePair> best;
  const std::size_t k = route.stops.size();
  for (std::size_t j = k; j-- > 0;) {
    for (std::size_t i = j; i-- > 0;) {
      if (route.stops[i].visit_time < q.received_at) continue;
      Rational c = grid_cost(route.stops[i], q, route.stops[j], route.drone_speed, quantum);
      if (c > route.stops[j].visit_time - route.stops[i].visit_time) continue;
      bool better = !best || c < best->cost ||
                    (c == best->cost && (i < best->i || (i == best->i && j < best->j)));
      if (better) best = BrutePair{i, j, c};
    }
  }
  return best;
}

}  // namespace dronesched::testing
