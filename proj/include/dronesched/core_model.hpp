#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "dronesched/rational.hpp"

namespace dronesched {

using RequestId = std::string;
using IdNumber = std::uint32_t;
using BinNumber = std::uint32_t;

enum class ErrorKind {
  malformed_request,
  infeasible_request,
  bad_epsilon,
  duplicate_id,
  out_of_order,
  endpoint_collision,
  contract_violation,
  no_feasible_delivery,
  size_limit,
  parse_error,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::malformed_request: return "malformed-request";
    case ErrorKind::infeasible_request: return "infeasible-request";
    case ErrorKind::bad_epsilon: return "bad-epsilon";
    case ErrorKind::duplicate_id: return "duplicate-id";
    case ErrorKind::out_of_order: return "out-of-order";
    case ErrorKind::endpoint_collision: return "endpoint-collision";
    case ErrorKind::contract_violation: return "contract-violation";
    case ErrorKind::no_feasible_delivery: return "no-feasible-delivery";
    case ErrorKind::size_limit: return "size-limit";
    case ErrorKind::parse_error: return "parse-error";
  }
  return "unknown";
}

// Domain error. Precondition violations by the caller (double release and
// similar) are reported with std::logic_error instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// A delivery request as a closed time window [left, right] with a battery cost.
struct Interval {
  RequestId id;
  TimePoint arrival;
  TimePoint left;
  TimePoint right;
  Cost cost;

  bool operator==(const Interval&) const = default;
};

// Closed intervals: touching endpoints count as overlap.
inline bool overlaps(const Interval& a, const Interval& b) {
  return a.left <= b.right && b.left <= a.right;
}

// The drone serving a request: (idNumber, binNumber), both 1-based.
struct Color {
  IdNumber id_number = 0;
  BinNumber bin_number = 0;

  auto operator<=>(const Color&) const = default;
};

struct Instance {
  std::vector<Interval> intervals;
  Rational budget;
};

struct Assignment {
  std::map<RequestId, Color> colors;
  std::size_t drone_count = 0;
};

inline std::size_t count_distinct_colors(const std::map<RequestId, Color>& colors) {
  std::set<Color> distinct;
  for (const auto& [id, color] : colors) distinct.insert(color);
  return distinct.size();
}

inline bool has_distinct_endpoints(std::span<const Interval> intervals) {
  std::vector<Rational> values;
  values.reserve(intervals.size() * 2);
  for (const auto& iv : intervals) {
    values.push_back(iv.left);
    values.push_back(iv.right);
  }
  std::sort(values.begin(), values.end());
  return std::adjacent_find(values.begin(), values.end()) == values.end();
}

// Quarter of the smallest positive gap between endpoint values, or nullopt
// when there are fewer than two distinct values.
inline std::optional<Rational> default_epsilon(std::span<const Interval> intervals) {
  std::vector<Rational> values;
  for (const auto& iv : intervals) {
    values.push_back(iv.left);
    values.push_back(iv.right);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.size() < 2) return std::nullopt;
  Rational gap = values[1] - values[0];
  for (std::size_t i = 2; i < values.size(); ++i) gap = std::min(gap, Rational(values[i] - values[i - 1]));
  return gap / 4;
}

/**
 * Makes all 2n endpoints pairwise distinct by shrinking intervals inward.
 *
 * At a value v shared by several endpoints, in arrival order:
 *  - lefts only: the first keeps v, the k-th later one moves to v + eps*k/(L-1);
 *  - rights only: symmetric, moving left;
 *  - lefts and rights mixed: every endpoint leaves v, the k-th left to
 *    v + eps*(k+1)/L and the k-th right to v - eps*(k+1)/R, which separates
 *    the touching intervals.
 * Every endpoint moves by at most eps, so with eps below half the smallest
 * gap and half the shortest length no strict order between distinct values
 * changes and no interval inverts.
 */
inline std::vector<Interval> normalize_endpoints(std::span<const Interval> intervals,
                                                 const Rational& epsilon) {
  std::vector<Interval> out(intervals.begin(), intervals.end());
  if (out.empty()) return out;
  if (epsilon <= 0) throw Error(ErrorKind::bad_epsilon, "epsilon must be positive");

  std::vector<Rational> values;
  values.reserve(out.size() * 2);
  Rational min_length = out.front().right - out.front().left;
  for (const auto& iv : out) {
    if (!(iv.left < iv.right))
      throw Error(ErrorKind::malformed_request, "interval '" + iv.id + "' has left >= right");
    values.push_back(iv.left);
    values.push_back(iv.right);
    min_length = std::min(min_length, Rational(iv.right - iv.left));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (2 * epsilon >= values[i] - values[i - 1])
      throw Error(ErrorKind::bad_epsilon,
                  "epsilon " + to_string(epsilon) + " is not below half the endpoint gap " +
                      to_string(values[i] - values[i - 1]));
  }
  if (2 * epsilon >= min_length)
    throw Error(ErrorKind::bad_epsilon, "epsilon " + to_string(epsilon) +
                                            " is not below half the shortest interval length " +
                                            to_string(min_length));

  // Arrival rank: by arrival, then by position in the input.
  std::vector<std::size_t> order(out.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return out[a].arrival < out[b].arrival; });
  std::vector<std::size_t> rank(out.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

  struct EndpointRef {
    const Rational* value;
    std::size_t rank;
    std::size_t index;
    bool is_right;
  };
  std::vector<EndpointRef> refs;
  refs.reserve(out.size() * 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    refs.push_back({&intervals[i].left, rank[i], i, false});
    refs.push_back({&intervals[i].right, rank[i], i, true});
  }
  std::sort(refs.begin(), refs.end(), [](const EndpointRef& a, const EndpointRef& b) {
    if (*a.value != *b.value) return *a.value < *b.value;
    return a.rank < b.rank;
  });

  for (std::size_t begin = 0; begin < refs.size();) {
    std::size_t end = begin + 1;
    while (end < refs.size() && *refs[end].value == *refs[begin].value) ++end;
    if (end - begin > 1) {
      const Rational v = *refs[begin].value;
      std::vector<std::size_t> lefts, rights;
      for (std::size_t k = begin; k < end; ++k)
        (refs[k].is_right ? rights : lefts).push_back(refs[k].index);

      if (!lefts.empty() && !rights.empty()) {
        for (std::size_t k = 0; k < lefts.size(); ++k)
          out[lefts[k]].left = v + epsilon * (k + 1) / lefts.size();
        for (std::size_t k = 0; k < rights.size(); ++k)
          out[rights[k]].right = v - epsilon * (k + 1) / rights.size();
      } else if (!lefts.empty()) {
        for (std::size_t k = 1; k < lefts.size(); ++k)
          out[lefts[k]].left = v + epsilon * k / (lefts.size() - 1);
      } else {
        for (std::size_t k = 1; k < rights.size(); ++k)
          out[rights[k]].right = v - epsilon * k / (rights.size() - 1);
      }
    }
    begin = end;
  }
  return out;
}

// Checks every Instance invariant, orders by arrival (stable) and separates
// shared endpoints with `epsilon`, or with default_epsilon() when unset.
inline Instance validate_instance(Instance instance, std::optional<Rational> epsilon = std::nullopt) {
  if (instance.budget <= 0) throw Error(ErrorKind::malformed_request, "budget must be positive");

  std::unordered_set<RequestId> seen;
  for (const auto& iv : instance.intervals) {
    if (!seen.insert(iv.id).second)
      throw Error(ErrorKind::duplicate_id, "request id '" + iv.id + "' appears twice");
    if (iv.arrival < 0)
      throw Error(ErrorKind::malformed_request, "request '" + iv.id + "' arrives before time 0");
    if (!(iv.left < iv.right))
      throw Error(ErrorKind::malformed_request, "request '" + iv.id + "' has left >= right");
    if (iv.arrival > iv.left)
      throw Error(ErrorKind::malformed_request,
                  "request '" + iv.id + "' arrives after its left endpoint");
    if (iv.cost <= 0)
      throw Error(ErrorKind::malformed_request, "request '" + iv.id + "' has non-positive cost");
    if (iv.cost > instance.budget)
      throw Error(ErrorKind::infeasible_request, "request '" + iv.id + "' costs " +
                                                     to_string(iv.cost) + " > budget " +
                                                     to_string(instance.budget));
  }

  std::stable_sort(instance.intervals.begin(), instance.intervals.end(),
                   [](const Interval& a, const Interval& b) { return a.arrival < b.arrival; });

  if (!has_distinct_endpoints(instance.intervals)) {
    Rational eps = epsilon ? *epsilon : *default_epsilon(instance.intervals);
    instance.intervals = normalize_endpoints(instance.intervals, eps);
  }
  return instance;
}

}  // namespace dronesched
