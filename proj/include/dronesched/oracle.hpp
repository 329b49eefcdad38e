#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "dronesched/core_model.hpp"

namespace dronesched {

template <typename Witness>
struct OracleResult {
  std::size_t value = 0;
  Witness witness;
};

struct CliqueWitness {
  std::optional<TimePoint> point;
  std::vector<std::size_t> members;  // indices into the input
};

// Indices of intervals into groups; groups[g] lists one color class.
struct GroupingWitness {
  std::vector<std::size_t> group_of;
  std::vector<std::vector<std::size_t>> groups;
};

// Maximum number of intervals sharing a point. Closed intervals: at equal
// values left endpoints are counted before right endpoints.
inline OracleResult<CliqueWitness> clique_number(std::span<const Interval> intervals) {
  struct Event {
    const TimePoint* at;
    bool is_right;
  };
  std::vector<Event> events;
  events.reserve(intervals.size() * 2);
  for (const auto& iv : intervals) {
    events.push_back({&iv.left, false});
    events.push_back({&iv.right, true});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (*a.at != *b.at) return *a.at < *b.at;
    return !a.is_right && b.is_right;
  });

  OracleResult<CliqueWitness> result;
  std::size_t live = 0;
  for (const auto& e : events) {
    if (e.is_right) {
      --live;
    } else if (++live > result.value) {
      result.value = live;
      result.witness.point = *e.at;
    }
  }
  if (result.witness.point) {
    const TimePoint& p = *result.witness.point;
    for (std::size_t i = 0; i < intervals.size(); ++i)
      if (intervals[i].left <= p && p <= intervals[i].right) result.witness.members.push_back(i);
  }
  return result;
}

// Offline greedy: intervals by left endpoint, each takes the least color not
// used by an overlapping, already colored interval.
inline OracleResult<GroupingWitness> greedy_offline_coloring(std::span<const Interval> intervals) {
  std::vector<std::size_t> order(intervals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return intervals[a].left < intervals[b].left;
  });

  using Active = std::pair<TimePoint, std::size_t>;  // (right, color)
  std::priority_queue<Active, std::vector<Active>, std::greater<>> active;
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> free;

  OracleResult<GroupingWitness> result;
  result.witness.group_of.assign(intervals.size(), 0);
  for (std::size_t index : order) {
    const Interval& iv = intervals[index];
    while (!active.empty() && active.top().first < iv.left) {
      free.push(active.top().second);
      active.pop();
    }
    std::size_t color;
    if (free.empty()) {
      color = result.witness.groups.size();
      result.witness.groups.emplace_back();
    } else {
      color = free.top();
      free.pop();
    }
    result.witness.group_of[index] = color;
    result.witness.groups[color].push_back(index);
    active.emplace(iv.right, color);
  }
  result.value = result.witness.groups.size();
  return result;
}

inline Rational total_cost(std::span<const Interval> intervals) {
  Rational sum = 0;
  for (const auto& iv : intervals) sum += iv.cost;
  return sum;
}

// max(clique number, ceil(total cost / B)).
inline std::size_t lower_bound(std::span<const Interval> intervals, const Rational& budget) {
  if (intervals.empty()) return 0;
  auto volume = ceil_int(total_cost(intervals) / budget).convert_to<std::size_t>();
  return std::max(clique_number(intervals).value, volume);
}

// max(clique number, ceil(total cost / largest capacity)).
inline std::size_t ovds_lower_bound(std::span<const Interval> intervals,
                                    std::span<const Rational> capacities) {
  if (capacities.empty()) throw Error(ErrorKind::contract_violation, "no capacities given");
  if (intervals.empty()) return 0;
  const Rational& b_max = *std::max_element(capacities.begin(), capacities.end());
  auto volume = ceil_int(total_cost(intervals) / b_max).convert_to<std::size_t>();
  return std::max(clique_number(intervals).value, volume);
}

inline constexpr std::size_t default_exhaustive_limit = 12;

/**
 * Fewest groups such that every group is pairwise disjoint and its costs sum
 * to at most `budget`.
 *
 * Depth-first branch and bound over intervals in left-endpoint order: each
 * interval joins an existing compatible group or opens the next one (never a
 * later index, which removes relabelled duplicates). A branch dies once it
 * uses as many groups as the best solution found; the search stops early
 * when the best meets lower_bound().
 */
inline OracleResult<GroupingWitness> exact_opt_budgeted(std::span<const Interval> intervals,
                                                        const Rational& budget,
                                                        std::size_t limit = default_exhaustive_limit) {
  const std::size_t n = intervals.size();
  if (n > limit)
    throw Error(ErrorKind::size_limit, std::to_string(n) + " intervals exceed the exhaustive limit " +
                                           std::to_string(limit));
  for (const auto& iv : intervals)
    if (iv.cost > budget)
      throw Error(ErrorKind::infeasible_request, "request '" + iv.id + "' exceeds the budget");

  OracleResult<GroupingWitness> result;
  result.witness.group_of.assign(n, 0);
  if (n == 0) return result;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return intervals[a].left < intervals[b].left;
  });

  struct Group {
    TimePoint last_right;
    Rational load;
  };
  std::vector<Group> groups;
  std::vector<std::size_t> current(n, 0);
  std::size_t best = n + 1;
  std::vector<std::size_t> best_assignment;
  const std::size_t floor = lower_bound(intervals, budget);
  bool done = false;

  std::function<void(std::size_t)> search = [&](std::size_t depth) {
    if (done || groups.size() >= best) return;
    if (depth == n) {
      best = groups.size();
      best_assignment = current;
      done = best <= floor;
      return;
    }
    const Interval& iv = intervals[order[depth]];
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (!(groups[g].last_right < iv.left) || groups[g].load + iv.cost > budget) continue;
      Group saved = groups[g];
      groups[g].last_right = iv.right;
      groups[g].load += iv.cost;
      current[order[depth]] = g;
      search(depth + 1);
      groups[g] = std::move(saved);  // the recursion may have reallocated `groups`
      if (done) return;
    }
    if (groups.size() + 1 < best) {
      groups.push_back({iv.right, iv.cost});
      current[order[depth]] = groups.size() - 1;
      search(depth + 1);
      groups.pop_back();
    }
  };
  search(0);

  result.value = best;
  result.witness.group_of = best_assignment;
  result.witness.groups.assign(best, {});
  for (std::size_t i = 0; i < n; ++i) result.witness.groups[best_assignment[i]].push_back(i);
  return result;
}

}  // namespace dronesched
