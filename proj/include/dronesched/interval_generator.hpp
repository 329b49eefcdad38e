#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dronesched/core_model.hpp"

namespace dronesched {

struct Stop {
  Rational x;
  Rational y;
  TimePoint visit_time;
};

struct Route {
  std::vector<Stop> stops;
  Rational drone_speed;

  void validate() const {
    if (stops.size() < 2) throw Error(ErrorKind::malformed_request, "a route needs at least two stops");
    if (drone_speed <= 0) throw Error(ErrorKind::malformed_request, "drone speed must be positive");
    if (stops.front().visit_time < 0)
      throw Error(ErrorKind::malformed_request, "stop times must be non-negative");
    for (std::size_t i = 1; i < stops.size(); ++i)
      if (!(stops[i - 1].visit_time < stops[i].visit_time))
        throw Error(ErrorKind::malformed_request, "stops must be strictly increasing in visit time");
  }
};

struct DeliveryRequest {
  RequestId id;
  Rational x;
  Rational y;
  TimePoint received_at;
};

struct GeneratedInterval {
  std::size_t takeoff_index = 0;  // 0-based stop index
  std::size_t landing_index = 0;
  TimePoint left;
  TimePoint right;
  Cost cost;
};

inline Rational default_quantum() { return Rational(1, 1000); }

namespace detail {

using Float = boost::multiprecision::cpp_bin_float_50;

inline Float to_float(const Rational& value) {
  return Float(BigInt(boost::multiprecision::numerator(value)).str()) /
         Float(BigInt(boost::multiprecision::denominator(value)).str());
}

// `value` must be integral.
inline BigInt to_big_int(const Float& value) {
  return BigInt(value.str(0, std::ios_base::fixed).substr(0, value.str(0, std::ios_base::fixed).find('.')));
}

// sqrt(value) when it is rational, i.e. numerator and denominator are squares.
inline std::optional<Rational> exact_sqrt(const Rational& value) {
  const BigInt n = boost::multiprecision::numerator(value);
  const BigInt d = boost::multiprecision::denominator(value);
  BigInt rn = boost::multiprecision::sqrt(n);
  BigInt rd = boost::multiprecision::sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Rational(rn, rd);
}

inline Rational squared_distance(const Rational& ax, const Rational& ay, const Rational& bx,
                                 const Rational& by) {
  Rational dx = ax - bx;
  Rational dy = ay - by;
  return dx * dx + dy * dy;
}

}  // namespace detail

// Flight time takeoff -> request -> landing at `speed`, rounded up to a
// multiple of `quantum`. Legs with a rational length are summed exactly;
// otherwise the sum is evaluated with 50 significant digits before rounding.
// A zero-length flight is charged one quantum so every cost stays positive.
inline Cost delivery_cost(const Stop& takeoff, const DeliveryRequest& request, const Stop& landing,
                          const Rational& speed, const Rational& quantum = default_quantum()) {
  const Rational out2 = detail::squared_distance(takeoff.x, takeoff.y, request.x, request.y);
  const Rational back2 = detail::squared_distance(request.x, request.y, landing.x, landing.y);
  auto out = detail::exact_sqrt(out2);
  auto back = detail::exact_sqrt(back2);

  Rational cost;
  if (out && back) {
    cost = ceil_to_grid((*out + *back) / speed, quantum);
  } else {
    detail::Float legs = (out ? detail::to_float(*out) : boost::multiprecision::sqrt(detail::to_float(out2))) +
                         (back ? detail::to_float(*back) : boost::multiprecision::sqrt(detail::to_float(back2)));
    detail::Float steps = legs * detail::to_float(1 / (speed * quantum));
    cost = Rational(detail::to_big_int(boost::multiprecision::ceil(steps))) * quantum;
  }
  return cost > 0 ? cost : quantum;
}

// A pair is valid when the drone is back no later than the truck reaches
// the landing stop.
inline bool is_valid(std::size_t i, std::size_t j, const Cost& cost, const Route& route) {
  if (i >= j) throw std::invalid_argument("takeoff index must be below landing index");
  if (j >= route.stops.size()) throw std::out_of_range("stop index outside the route");
  return cost <= route.stops[j].visit_time - route.stops[i].visit_time;
}

/**
 * Cheapest valid (takeoff, landing) stop pair for `request`.
 *
 * Only stops the truck has not passed yet (visit time >= the request time)
 * are eligible. All pairs i < j are scanned, O(k^2) cost evaluations; ties
 * go to the smallest takeoff index, then the smallest landing index.
 */
inline GeneratedInterval generate_interval(const Route& route, const DeliveryRequest& request,
                                           const Rational& quantum = default_quantum()) {
  route.validate();
  if (request.received_at < route.stops.front().visit_time ||
      request.received_at > route.stops.back().visit_time)
    throw Error(ErrorKind::malformed_request,
                "request '" + request.id + "' is received outside the route's time span");

  const auto first = static_cast<std::size_t>(
      std::lower_bound(route.stops.begin(), route.stops.end(), request.received_at,
                       [](const Stop& s, const TimePoint& t) { return s.visit_time < t; }) -
      route.stops.begin());

  std::optional<GeneratedInterval> best;
  for (std::size_t i = first; i < route.stops.size(); ++i) {
    for (std::size_t j = i + 1; j < route.stops.size(); ++j) {
      Cost cost = delivery_cost(route.stops[i], request, route.stops[j], route.drone_speed, quantum);
      if (!is_valid(i, j, cost, route)) continue;
      if (!best || cost < best->cost)
        best = GeneratedInterval{i, j, route.stops[i].visit_time, route.stops[j].visit_time, std::move(cost)};
    }
  }
  if (!best)
    throw Error(ErrorKind::no_feasible_delivery,
                "request '" + request.id + "' has no valid takeoff/landing pair");
  return *best;
}

struct RejectedRequest {
  std::size_t index = 0;
  RequestId id;
  std::string reason;
};

struct GeneratedStream {
  std::vector<Interval> intervals;
  std::vector<GeneratedInterval> sources;  // stop pair behind each interval
  std::vector<RejectedRequest> rejected;
};

/**
 * Turns a time-ordered request stream into scheduler input.
 *
 * Each request becomes [T_takeoff, T_landing] arriving at its receive time.
 * Requests that cannot be served are listed in `rejected` instead. Shared
 * endpoints are then separated with normalize_endpoints, using an epsilon
 * small enough that every interval with spare time keeps cost <= length.
 * An interval with no spare time that would still have to shrink is
 * rejected, since no perturbation keeps it valid.
 */
inline GeneratedStream stream_generate(const Route& route, std::span<const DeliveryRequest> requests,
                                       const Rational& quantum = default_quantum()) {
  route.validate();
  GeneratedStream out;
  std::vector<std::size_t> origin;
  std::optional<TimePoint> last_time;
  for (std::size_t k = 0; k < requests.size(); ++k) {
    const auto& request = requests[k];
    if (last_time && request.received_at <= *last_time) {
      out.rejected.push_back({k, request.id,
                              request.received_at == *last_time
                                  ? "another request was received at the same time"
                                  : "request is out of time order"});
      continue;
    }
    try {
      GeneratedInterval g = generate_interval(route, request, quantum);
      out.intervals.push_back(Interval{request.id, request.received_at, g.left, g.right, g.cost});
      out.sources.push_back(std::move(g));
      origin.push_back(k);
      last_time = request.received_at;
    } catch (const Error& e) {
      out.rejected.push_back({k, request.id, e.what()});
    }
  }

  while (!has_distinct_endpoints(out.intervals)) {
    Rational eps = *default_epsilon(out.intervals);
    for (const auto& iv : out.intervals) {
      Rational slack = iv.right - iv.left - iv.cost;
      if (slack > 0) eps = std::min(eps, Rational(slack / 4));
    }
    auto normalized = normalize_endpoints(out.intervals, eps);

    std::vector<std::size_t> broken;
    for (std::size_t i = 0; i < normalized.size(); ++i)
      if (normalized[i].cost > normalized[i].right - normalized[i].left) broken.push_back(i);
    if (broken.empty()) {
      out.intervals = std::move(normalized);
      break;
    }
    for (auto it = broken.rbegin(); it != broken.rend(); ++it) {
      out.rejected.push_back({origin[*it], out.intervals[*it].id,
                              "no spare time to separate a shared stop time"});
      out.intervals.erase(out.intervals.begin() + static_cast<std::ptrdiff_t>(*it));
      out.sources.erase(out.sources.begin() + static_cast<std::ptrdiff_t>(*it));
      origin.erase(origin.begin() + static_cast<std::ptrdiff_t>(*it));
    }
  }
  std::sort(out.rejected.begin(), out.rejected.end(),
            [](const RejectedRequest& a, const RejectedRequest& b) { return a.index < b.index; });
  return out;
}

}  // namespace dronesched
