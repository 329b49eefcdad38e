#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "dronesched/core_model.hpp"
#include "dronesched/id_assigner.hpp"

namespace dronesched {

// Supplies drone capacities one at a time; the scheduler never sees ahead.
class DroneSource {
 public:
  virtual ~DroneSource() = default;
  virtual Rational request_drone() = 0;
};

// Replays a fixed capacity list, wrapping around when it runs out.
class CapacityListSource final : public DroneSource {
 public:
  explicit CapacityListSource(std::vector<Rational> capacities) : capacities_(std::move(capacities)) {
    if (capacities_.empty()) throw Error(ErrorKind::contract_violation, "empty capacity list");
  }

  Rational request_drone() override {
    Rational b = capacities_[next_];
    next_ = (next_ + 1) % capacities_.size();
    return b;
  }

 private:
  std::vector<Rational> capacities_;
  std::size_t next_ = 0;
};

// Capacities uniform on the grid lo + (hi - lo) * k / steps, k in [0, steps].
class UniformCapacitySource final : public DroneSource {
 public:
  UniformCapacitySource(Rational lo, Rational hi, std::uint64_t seed, unsigned steps = 1000)
      : lo_(std::move(lo)), hi_(std::move(hi)), rng_(seed), pick_(0, steps), steps_(steps) {
    if (lo_ <= 0 || hi_ < lo_ || steps_ == 0)
      throw Error(ErrorKind::contract_violation, "capacity range must satisfy 0 < lo <= hi");
  }

  Rational request_drone() override {
    return lo_ + (hi_ - lo_) * Rational(pick_(rng_)) / steps_;
  }

 private:
  Rational lo_, hi_;
  std::mt19937_64 rng_;
  std::uniform_int_distribution<unsigned> pick_;
  unsigned steps_;
};

// Intervals grouped by idNumber; lists[i - 1] holds idNumber i, cheapest first.
struct IdLists {
  std::vector<std::vector<Interval>> lists;
  std::map<RequestId, IdNumber> id_of;

  IdNumber g() const noexcept { return static_cast<IdNumber>(lists.size()); }
};

// Assigns idNumbers with the same sweep and release rule as the online
// scheduler (left endpoints acquire, right endpoints release, in time order),
// then buckets and sorts each bucket by non-decreasing cost.
inline IdLists partition_by_id(std::span<const Interval> intervals) {
  if (!has_distinct_endpoints(intervals))
    throw Error(ErrorKind::malformed_request, "endpoints must be pairwise distinct");

  struct Event {
    const TimePoint* at;
    std::size_t index;
    bool is_right;
  };
  std::vector<Event> events;
  events.reserve(intervals.size() * 2);
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (!(intervals[i].left < intervals[i].right))
      throw Error(ErrorKind::malformed_request, "request '" + intervals[i].id + "' has left >= right");
    events.push_back({&intervals[i].left, i, false});
    events.push_back({&intervals[i].right, i, true});
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return *a.at < *b.at; });

  IdPool pool;
  std::vector<IdNumber> ids(intervals.size(), 0);
  for (const auto& e : events) {
    if (e.is_right)
      pool.release(ids[e.index]);
    else
      ids[e.index] = pool.acquire();
  }

  IdLists result;
  result.lists.resize(pool.max_issued());
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    result.lists[ids[i] - 1].push_back(intervals[i]);
    result.id_of.emplace(intervals[i].id, ids[i]);
  }
  for (auto& list : result.lists)
    std::stable_sort(list.begin(), list.end(),
                     [](const Interval& a, const Interval& b) { return a.cost < b.cost; });
  return result;
}

struct DroneRecord {
  IdNumber id_number = 0;
  BinNumber ordinal = 0;
  Rational capacity;
  Rational load;
  std::vector<RequestId> served;
  // Cost of the cheapest interval still in the list when this drone was let
  // go; unset when the list was emptied.
  std::optional<Cost> cheapest_left;
};

struct OvdsReport {
  std::map<RequestId, Color> colors;
  std::size_t total_drones = 0;
  std::vector<BinNumber> drones_per_list;  // L_i
  std::vector<DroneRecord> drones;
  std::vector<std::vector<Interval>> lists;
  std::optional<Rational> min_capacity;
  std::optional<Rational> max_capacity;

  // B_max / B_min over the capacities actually drawn.
  std::optional<Rational> alpha() const {
    if (!min_capacity) return std::nullopt;
    return *max_capacity / *min_capacity;
  }
};

// Lists are served in order 1..g. Each drawn drone walks its list cheapest
// first, taking intervals while they fit and stopping at the first that does
// not; the list is sorted, so nothing after that point could fit either.
inline OvdsReport schedule_ovds(IdLists lists, DroneSource& source) {
  OvdsReport report;
  report.drones_per_list.assign(lists.lists.size(), 0);

  for (std::size_t i = 0; i < lists.lists.size(); ++i) {
    const auto& list = lists.lists[i];
    const IdNumber id = static_cast<IdNumber>(i + 1);
    std::size_t head = 0;
    while (head < list.size()) {
      Rational capacity = source.request_drone();
      if (capacity < list.back().cost)
        throw Error(ErrorKind::contract_violation,
                    "drone capacity " + to_string(capacity) + " is below the largest cost " +
                        to_string(list.back().cost) + " in list " + std::to_string(id));
      if (!report.min_capacity || capacity < *report.min_capacity) report.min_capacity = capacity;
      if (!report.max_capacity || capacity > *report.max_capacity) report.max_capacity = capacity;

      DroneRecord drone;
      drone.id_number = id;
      drone.ordinal = ++report.drones_per_list[i];
      drone.capacity = capacity;
      Rational remaining = capacity;
      while (head < list.size() && list[head].cost <= remaining) {
        remaining -= list[head].cost;
        drone.load += list[head].cost;
        drone.served.push_back(list[head].id);
        report.colors.emplace(list[head].id, Color{id, drone.ordinal});
        ++head;
      }
      if (head < list.size()) drone.cheapest_left = list[head].cost;
      report.drones.push_back(std::move(drone));
      ++report.total_drones;
    }
  }
  report.lists = std::move(lists.lists);
  return report;
}

}  // namespace dronesched
