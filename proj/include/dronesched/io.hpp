#pragma once

#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dronesched/core_model.hpp"
#include "dronesched/interval_generator.hpp"
#include "dronesched/online_scheduler.hpp"
#include "dronesched/oracle.hpp"
#include "dronesched/variable_size.hpp"

namespace dronesched::io {

using Json = nlohmann::ordered_json;

// Rationals travel as "n/d" strings; integers may also be plain numbers.
inline Json rational_to_json(const Rational& value) { return to_string(value); }

inline Rational rational_from_json(const Json& j, const char* field) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::parse_error, std::string(field) + ": " + e.what());
  }
  throw Error(ErrorKind::parse_error, std::string(field) + " must be an integer or an \"n/d\" string");
}

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw Error(ErrorKind::parse_error, std::string("missing field '") + name + "'");
  return j.at(name);
}

inline Interval interval_from_json(const Json& j) {
  Interval iv;
  const Json& id = field(j, "id");
  iv.id = id.is_string() ? id.get<std::string>() : id.dump();
  iv.arrival = rational_from_json(field(j, "arrival"), "arrival");
  iv.left = rational_from_json(field(j, "l"), "l");
  iv.right = rational_from_json(field(j, "r"), "r");
  iv.cost = rational_from_json(field(j, "cost"), "cost");
  return iv;
}

inline Json interval_to_json(const Interval& iv) {
  Json j;
  j["id"] = iv.id;
  j["arrival"] = rational_to_json(iv.arrival);
  j["l"] = rational_to_json(iv.left);
  j["r"] = rational_to_json(iv.right);
  j["cost"] = rational_to_json(iv.cost);
  return j;
}

template <typename F>
void for_each_jsonl(std::istream& in, F&& handle) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::parse_error, "line " + std::to_string(number) + ": " + e.what());
    }
    handle(j);
  }
}

inline std::vector<Interval> read_intervals(std::istream& in) {
  std::vector<Interval> intervals;
  for_each_jsonl(in, [&](const Json& j) { intervals.push_back(interval_from_json(j)); });
  return intervals;
}

inline void write_intervals(std::ostream& out, const std::vector<Interval>& intervals) {
  for (const auto& iv : intervals) out << interval_to_json(iv).dump() << '\n';
}

inline Route route_from_json(const Json& j) {
  Route route;
  route.drone_speed = rational_from_json(field(j, "drone_speed"), "drone_speed");
  for (const auto& s : field(j, "stops"))
    route.stops.push_back(Stop{rational_from_json(field(s, "x"), "x"), rational_from_json(field(s, "y"), "y"),
                               rational_from_json(field(s, "t"), "t")});
  route.validate();
  return route;
}

inline Json route_to_json(const Route& route) {
  Json j;
  j["drone_speed"] = rational_to_json(route.drone_speed);
  j["stops"] = Json::array();
  for (const auto& s : route.stops)
    j["stops"].push_back({{"x", rational_to_json(s.x)}, {"y", rational_to_json(s.y)}, {"t", rational_to_json(s.visit_time)}});
  return j;
}

inline std::vector<DeliveryRequest> read_requests(std::istream& in) {
  std::vector<DeliveryRequest> requests;
  for_each_jsonl(in, [&](const Json& j) {
    DeliveryRequest q;
    if (j.contains("id"))
      q.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
    else
      q.id = "q" + std::to_string(requests.size());
    q.x = rational_from_json(field(j, "x"), "x");
    q.y = rational_from_json(field(j, "y"), "y");
    q.received_at = rational_from_json(field(j, "received_at"), "received_at");
    requests.push_back(std::move(q));
  });
  return requests;
}

inline Json color_to_json(const Color& c) { return Json::array({c.id_number, c.bin_number}); }

struct DroneSummary {
  Color color;
  Rational load;
  std::vector<RequestId> served;
};

// Drones in (idNumber, binNumber) order; served lists follow input order.
inline std::vector<DroneSummary> summarize_drones(const std::vector<Interval>& intervals,
                                                  const std::map<RequestId, Color>& colors) {
  std::map<Color, DroneSummary> drones;
  for (const auto& iv : intervals) {
    auto it = colors.find(iv.id);
    if (it == colors.end()) continue;
    auto& d = drones[it->second];
    d.color = it->second;
    d.load += iv.cost;
    d.served.push_back(iv.id);
  }
  std::vector<DroneSummary> out;
  for (auto& [color, d] : drones) out.push_back(std::move(d));
  return out;
}

inline Json schedule_report(const Instance& instance, Strategy strategy, const Assignment& assignment,
                            IdNumber max_id_number) {
  Json j;
  j["strategy"] = to_string(strategy);
  j["budget"] = rational_to_json(instance.budget);
  j["drone_count"] = assignment.drone_count;
  j["max_id_number"] = max_id_number;
  j["requests"] = Json::array();
  for (const auto& iv : instance.intervals) {
    Json r;
    r["id"] = iv.id;
    r["l"] = rational_to_json(iv.left);
    r["r"] = rational_to_json(iv.right);
    r["cost"] = rational_to_json(iv.cost);
    r["color"] = color_to_json(assignment.colors.at(iv.id));
    j["requests"].push_back(std::move(r));
  }
  j["drones"] = Json::array();
  for (const auto& d : summarize_drones(instance.intervals, assignment.colors))
    j["drones"].push_back({{"color", color_to_json(d.color)}, {"load", rational_to_json(d.load)}, {"served", d.served}});
  return j;
}

inline Json ovds_report(const std::vector<Interval>& intervals, const OvdsReport& report) {
  Json j;
  j["total_drones"] = report.total_drones;
  j["g"] = report.drones_per_list.size();
  j["drones_per_list"] = report.drones_per_list;
  if (auto alpha = report.alpha()) {
    j["min_capacity"] = rational_to_json(*report.min_capacity);
    j["max_capacity"] = rational_to_json(*report.max_capacity);
    j["alpha"] = rational_to_json(*alpha);
  }
  j["requests"] = Json::array();
  for (const auto& iv : intervals)
    j["requests"].push_back({{"id", iv.id}, {"color", color_to_json(report.colors.at(iv.id))}});
  j["drones"] = Json::array();
  for (const auto& d : report.drones)
    j["drones"].push_back({{"color", color_to_json(Color{d.id_number, d.ordinal})},
                           {"capacity", rational_to_json(d.capacity)},
                           {"load", rational_to_json(d.load)},
                           {"served", d.served}});
  return j;
}

inline Json generated_interval_to_json(const Interval& iv, const GeneratedInterval& source) {
  Json j = interval_to_json(iv);
  j["takeoff_index"] = source.takeoff_index;
  j["landing_index"] = source.landing_index;
  return j;
}

}  // namespace dronesched::io
