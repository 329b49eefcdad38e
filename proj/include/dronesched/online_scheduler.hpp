#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "dronesched/bin_packing.hpp"
#include "dronesched/core_model.hpp"
#include "dronesched/id_assigner.hpp"

namespace dronesched {

enum class EventKind { inserted, deleted, colored, idle };

inline const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::inserted: return "inserted";
    case EventKind::deleted: return "deleted";
    case EventKind::colored: return "colored";
    case EventKind::idle: return "idle";
  }
  return "unknown";
}

struct EventOutcome {
  EventKind kind = EventKind::idle;
  RequestId request;
  std::optional<Color> color;
};

// Event-driven online drone scheduler.
//
// Intervals are submitted when they arrive. tick(t) then handles the single
// endpoint event at t: a right endpoint releases the interval's idNumber, a
// left endpoint colors the interval with (min free idNumber, bin chosen by
// the packing strategy). Endpoints must be pairwise distinct, so one tick
// never both deletes and colors.
class OnlineScheduler {
 public:
  struct ArchivedColor {
    RequestId request;
    Color color;
  };

  OnlineScheduler(Rational budget, Strategy strategy)
      : budget_(std::move(budget)), strategy_(strategy) {
    if (budget_ <= 0) throw Error(ErrorKind::malformed_request, "budget must be positive");
    if (strategy_ == Strategy::next_fit)
      packing_.emplace<NextFitState>();
    else
      packing_.emplace<FirstFitTree>();
  }

  EventOutcome submit(Interval interval) {
    if (index_.count(interval.id))
      throw Error(ErrorKind::duplicate_id, "request '" + interval.id + "' already submitted");
    if (!(interval.left < interval.right) || interval.arrival > interval.left || interval.cost <= 0)
      throw Error(ErrorKind::malformed_request, "request '" + interval.id + "' is malformed");
    if (interval.cost > budget_)
      throw Error(ErrorKind::infeasible_request, "request '" + interval.id + "' costs " +
                                                     to_string(interval.cost) + " > budget " +
                                                     to_string(budget_));
    if (last_tick_ && (interval.arrival < *last_tick_ || interval.left <= *last_tick_))
      throw Error(ErrorKind::out_of_order, "request '" + interval.id + "' arrives at " +
                                               to_string(interval.arrival) +
                                               " after time " + to_string(*last_tick_) +
                                               " was processed");
    if (last_arrival_ && interval.arrival < *last_arrival_)
      throw Error(ErrorKind::out_of_order,
                  "request '" + interval.id + "' arrives before the previous submission");
    if (last_arrival_ && interval.arrival == *last_arrival_)
      throw Error(ErrorKind::out_of_order, "a request already arrived at time " +
                                               to_string(interval.arrival));
    if (live_endpoints_.count(interval.left) || live_endpoints_.count(interval.right))
      throw Error(ErrorKind::endpoint_collision,
                  "request '" + interval.id + "' shares an endpoint with an earlier request");

    const std::size_t slot = records_.size();
    live_endpoints_.insert(interval.left);
    live_endpoints_.insert(interval.right);
    left_heap_.emplace(interval.left, slot);
    right_heap_.emplace(interval.right, slot);
    last_arrival_ = interval.arrival;
    index_.emplace(interval.id, slot);
    records_.push_back(Record{std::move(interval), std::nullopt, Phase::pending});
    return {EventKind::inserted, records_.back().interval.id, std::nullopt};
  }

  EventOutcome tick(const TimePoint& t) {
    if (last_tick_ && t <= *last_tick_)
      throw Error(ErrorKind::out_of_order, "tick at " + to_string(t) + " is not after " +
                                               to_string(*last_tick_));
    if (auto next = next_event_time(); next && *next < t)
      throw std::logic_error("tick at " + to_string(t) + " skips the pending event at " +
                             to_string(*next));
    last_tick_ = t;

    if (!right_heap_.empty() && right_heap_.top().first == t) {
      const std::size_t slot = right_heap_.top().second;
      right_heap_.pop();
      Record& record = records_[slot];
      pool_.release(record.color->id_number);
      live_endpoints_.erase(record.interval.left);
      live_endpoints_.erase(record.interval.right);
      archive_.push_back({record.interval.id, *record.color});
      record.color.reset();
      record.phase = Phase::done;
      --live_colored_;
      return {EventKind::deleted, record.interval.id, archive_.back().color};
    }

    if (!left_heap_.empty() && left_heap_.top().first == t) {
      const std::size_t slot = left_heap_.top().second;
      left_heap_.pop();
      Record& record = records_[slot];
      const IdNumber id = pool_.acquire();
      const BinNumber bin = std::visit(
          [&](auto& packing) { return packing.place(id, record.interval.cost, budget_, trace_); },
          packing_);
      record.color = Color{id, bin};
      record.phase = Phase::active;
      ++live_colored_;
      peak_live_ = std::max(peak_live_, live_colored_);
      if (on_color_) on_color_(record.interval, *record.color);
      return {EventKind::colored, record.interval.id, record.color};
    }
    return {EventKind::idle, {}, std::nullopt};
  }

  // Smallest unprocessed endpoint, if any.
  std::optional<TimePoint> next_event_time() const {
    std::optional<TimePoint> next;
    if (!right_heap_.empty()) next = right_heap_.top().first;
    if (!left_heap_.empty() && (!next || left_heap_.top().first < *next))
      next = left_heap_.top().first;
    return next;
  }

  // Records every placement decision into `trace` (O(#active bins) extra per
  // placement under first-fit). Pass nullptr to stop.
  void set_trace(PlacementTrace* trace) noexcept { trace_ = trace; }

  // Called right after an interval is colored; used by audits.
  void set_color_observer(std::function<void(const Interval&, const Color&)> observer) {
    on_color_ = std::move(observer);
  }

  const Rational& budget() const noexcept { return budget_; }
  Strategy strategy() const noexcept { return strategy_; }
  const IdPool& id_pool() const noexcept { return pool_; }
  IdNumber max_id_number() const noexcept { return pool_.max_issued(); }
  std::size_t live_colored_count() const noexcept { return live_colored_; }
  std::size_t peak_live() const noexcept { return peak_live_; }
  std::size_t submitted() const noexcept { return records_.size(); }
  const std::vector<ArchivedColor>& archive() const noexcept { return archive_; }
  const NextFitState* next_fit() const { return std::get_if<NextFitState>(&packing_); }
  const FirstFitTree* first_fit() const { return std::get_if<FirstFitTree>(&packing_); }

  // Color of a colored, not yet deleted request.
  std::optional<Color> live_color(const RequestId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return records_[it->second].color;
  }

  bool is_pending(const RequestId& id) const {
    auto it = index_.find(id);
    return it != index_.end() && records_[it->second].phase == Phase::pending;
  }

  // Colored intervals whose right endpoint has not been processed yet.
  std::vector<std::pair<Interval, Color>> live_intervals() const {
    std::vector<std::pair<Interval, Color>> live;
    for (const auto& record : records_)
      if (record.phase == Phase::active) live.emplace_back(record.interval, *record.color);
    return live;
  }

  // Every color handed out so far, live or archived.
  Assignment assignment() const {
    Assignment result;
    for (const auto& entry : archive_) result.colors.emplace(entry.request, entry.color);
    for (const auto& record : records_)
      if (record.color) result.colors.emplace(record.interval.id, *record.color);
    result.drone_count = count_distinct_colors(result.colors);
    return result;
  }

 private:
  enum class Phase { pending, active, done };
  struct Record {
    Interval interval;
    std::optional<Color> color;
    Phase phase;
  };
  using HeapEntry = std::pair<TimePoint, std::size_t>;
  using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

  Rational budget_;
  Strategy strategy_;
  std::vector<Record> records_;
  std::unordered_map<RequestId, std::size_t> index_;
  MinHeap left_heap_;
  MinHeap right_heap_;
  std::set<TimePoint> live_endpoints_;
  IdPool pool_;
  std::variant<NextFitState, FirstFitTree> packing_;
  std::vector<ArchivedColor> archive_;
  std::optional<TimePoint> last_tick_;
  std::optional<TimePoint> last_arrival_;
  std::size_t live_colored_ = 0;
  std::size_t peak_live_ = 0;
  PlacementTrace* trace_ = nullptr;
  std::function<void(const Interval&, const Color&)> on_color_;
};

// Feeds `stream` through `scheduler`: at each distinct endpoint value,
// submits the intervals that have arrived by then and ticks. Every submit and
// tick is passed to `step` as a callable, which lets callers time updates.
template <typename Step>
void drive(OnlineScheduler& scheduler, std::span<const Interval> stream, Step&& step) {
  std::vector<const Interval*> by_arrival;
  by_arrival.reserve(stream.size());
  std::vector<TimePoint> endpoints;
  endpoints.reserve(stream.size() * 2);
  for (const auto& iv : stream) {
    by_arrival.push_back(&iv);
    endpoints.push_back(iv.left);
    endpoints.push_back(iv.right);
  }
  std::stable_sort(by_arrival.begin(), by_arrival.end(),
                   [](const Interval* a, const Interval* b) { return a->arrival < b->arrival; });
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());

  auto next_arrival = by_arrival.begin();
  for (const TimePoint& t : endpoints) {
    while (next_arrival != by_arrival.end() && (*next_arrival)->arrival <= t) {
      const Interval& arriving = **next_arrival;
      step([&] { scheduler.submit(arriving); });
      ++next_arrival;
    }
    step([&] { scheduler.tick(t); });
  }
}

inline void drive(OnlineScheduler& scheduler, std::span<const Interval> stream) {
  drive(scheduler, stream, [](auto&& update) { update(); });
}

inline Assignment run(std::span<const Interval> stream, const Rational& budget, Strategy strategy,
                      PlacementTrace* trace = nullptr) {
  OnlineScheduler scheduler(budget, strategy);
  scheduler.set_trace(trace);
  drive(scheduler, stream);
  return scheduler.assignment();
}

}  // namespace dronesched
