// dronesched: command-line front end for the scheduling library.
//
//   gen | schedule | ovds | genintervals | oracle | bench | compare
//
// Paths may be "-" for stdin/stdout. Outputs are JSON, JSONL or CSV.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dronesched/dronesched.hpp"
#include "dronesched/io.hpp"

namespace ds = dronesched;
using ds::io::Json;

namespace {

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

class Input {
 public:
  explicit Input(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open '" + path + "' for reading");
    }
  }
  std::istream& stream() { return file_ ? *file_ : std::cin; }

 private:
  std::unique_ptr<std::ifstream> file_;
};

ds::Rational rational_arg(const std::string& text, const char* name) {
  try {
    return ds::parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError(name, "expected an integer, n/d or decimal, got '" + text + "'");
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("DRONESCHED_SEED")) return std::stoull(env);
  return 1;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find("..");
    if (colon != std::string::npos) {
      // "lo..hi" expands to powers of two between lo and hi
      std::size_t lo = std::stoull(item.substr(0, colon));
      std::size_t hi = std::stoull(item.substr(colon + 2));
      for (std::size_t n = lo; n <= hi; n *= 2) sizes.push_back(n);
    } else if (!item.empty()) {
      sizes.push_back(std::stoull(item));
    }
  }
  return sizes;
}

std::unique_ptr<ds::DroneSource> capacity_source(const std::string& spec) {
  const std::string prefix = "uniform:";
  if (spec.rfind(prefix, 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(spec.substr(prefix.size()));
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 3) throw CLI::ValidationError("--capacities", "expected uniform:lo,hi,seed");
    return std::make_unique<ds::UniformCapacitySource>(rational_arg(parts[0], "lo"), rational_arg(parts[1], "hi"),
                                                       std::stoull(parts[2]));
  }
  Input in(spec);
  std::vector<ds::Rational> capacities;
  std::string line;
  while (std::getline(in.stream(), line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::stringstream ls(line);
    std::string token;
    while (ls >> token) capacities.push_back(rational_arg(token, "--capacities"));
  }
  return std::make_unique<ds::CapacityListSource>(std::move(capacities));
}

ds::Instance load_instance(const std::string& path, const std::string& budget,
                           const std::string& epsilon) {
  Input in(path);
  ds::Instance instance{ds::io::read_intervals(in.stream()), rational_arg(budget, "--budget")};
  std::optional<ds::Rational> eps;
  if (!epsilon.empty()) eps = rational_arg(epsilon, "--epsilon");
  return ds::validate_instance(std::move(instance), eps);
}

Json metrics_to_json(const ds::RunMetrics& m, bool timings) {
  Json j{{"strategy", ds::to_string(m.strategy)},
         {"drone_count", m.drone_count},
         {"reference", m.oracle_value},
         {"reference_is_exact", m.oracle_exact},
         {"ratio", m.ratio},
         {"max_id_number", m.max_id_number},
         {"peak_live", m.peak_live}};
  // Wall-clock numbers differ run to run, so they are opt-in.
  if (timings) j["latency_ns"] = {{"p50", m.p50_ns}, {"p90", m.p90_ns}, {"p99", m.p99_ns}, {"max", m.max_ns}};
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online drone scheduling for truck-based last-mile delivery"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random request stream (JSONL)");
  std::size_t gen_n = 10;
  std::string gen_horizon = "100", gen_min = "1", gen_max = "10", gen_budget = "10", gen_lead = "0";
  std::uint64_t gen_seed = default_seed();
  std::size_t gen_overlap = 0;
  std::string gen_out = "-";
  gen->add_option("--n", gen_n, "Number of requests");
  gen->add_option("--horizon", gen_horizon, "Time horizon");
  gen->add_option("--min-len", gen_min, "Minimum interval length");
  gen->add_option("--max-len", gen_max, "Maximum interval length");
  gen->add_option("--budget", gen_budget, "Budget B; costs are drawn from (0, B]");
  gen->add_option("--seed", gen_seed, "RNG seed (default: $DRONESCHED_SEED or 1)");
  gen->add_option("--max-overlap", gen_overlap, "Reject instances whose clique number exceeds this (0 = off)");
  gen->add_option("--arrival-lead", gen_lead, "Arrivals drawn up to this long before the left endpoint");
  gen->add_option("--output", gen_out, "Output JSONL path");

  // schedule
  auto* sched = app.add_subcommand("schedule", "Run the online scheduler");
  std::string s_budget, s_strategy = "first-fit", s_input, s_output = "-", s_eps, s_trace;
  sched->add_option("--budget", s_budget, "Drone battery budget B")->required();
  sched->add_option("--strategy", s_strategy, "next-fit | first-fit")
      ->check(CLI::IsMember({"next-fit", "first-fit"}));
  sched->add_option("--input", s_input, "Request JSONL")->required();
  sched->add_option("--output", s_output, "Report JSON");
  sched->add_option("--epsilon", s_eps, "Endpoint separation (default: quarter of the smallest gap)");
  sched->add_option("--trace", s_trace, "Placement trace CSV");

  // ovds
  auto* ovds = app.add_subcommand("ovds", "Offline requests, online drones of varying capacity");
  std::string o_input, o_caps, o_output = "-", o_eps;
  ovds->add_option("--input", o_input, "Request JSONL")->required();
  ovds->add_option("--capacities", o_caps, "Capacity file (one per line) or uniform:lo,hi,seed")->required();
  ovds->add_option("--output", o_output, "Report JSON");
  ovds->add_option("--epsilon", o_eps, "Endpoint separation");

  // genintervals
  auto* gi = app.add_subcommand("genintervals", "Turn delivery requests into intervals");
  std::string g_route, g_requests, g_output = "-", g_quantum = "1/1000", g_rejected;
  gi->add_option("--route", g_route, "Route JSON")->required();
  gi->add_option("--requests", g_requests, "Request JSONL")->required();
  gi->add_option("--output", g_output, "Interval JSONL");
  gi->add_option("--quantum", g_quantum, "Cost grid; flight times are rounded up to it");
  gi->add_option("--rejected", g_rejected, "JSONL of requests that could not be served");

  // oracle
  auto* orc = app.add_subcommand("oracle", "Offline optimum and lower bounds");
  std::string r_input, r_budget, r_output = "-";
  bool r_exact = false, r_lb = false;
  orc->add_option("--input", r_input, "Request JSONL")->required();
  orc->add_option("--budget", r_budget, "Budget B")->required();
  orc->add_option("--output", r_output, "Result JSON");
  auto* exact_flag = orc->add_flag("--exact", r_exact, "Exact budgeted optimum (n <= 12)");
  orc->add_flag("--lb", r_lb, "Lower bound only")->excludes(exact_flag);

  // bench
  auto* bench = app.add_subcommand("bench", "Doubling benchmark (CSV)");
  std::string b_kind = "scheduler", b_strategy = "first-fit", b_sizes = "1024..131072", b_output = "-";
  std::size_t b_seeds = 5;
  bench->add_option("--kind", b_kind, "scheduler | ovds")->check(CLI::IsMember({"scheduler", "ovds"}));
  bench->add_option("--strategy", b_strategy, "next-fit | first-fit")
      ->check(CLI::IsMember({"next-fit", "first-fit"}));
  bench->add_option("--sizes", b_sizes, "Comma list; lo..hi expands to powers of two");
  bench->add_option("--seeds", b_seeds, "Seeds per size");
  bench->add_option("--output", b_output, "CSV path");

  // compare
  auto* cmp = app.add_subcommand("compare", "Run both strategies against the oracle");
  std::string c_input, c_budget, c_output = "-", c_eps;
  std::size_t c_limit = 10;
  bool c_timings = false;
  cmp->add_option("--input", c_input, "Request JSONL")->required();
  cmp->add_option("--budget", c_budget, "Budget B")->required();
  cmp->add_option("--output", c_output, "Result JSON");
  cmp->add_option("--exact-limit", c_limit, "Use the exact optimum up to this many requests");
  cmp->add_option("--epsilon", c_eps, "Endpoint separation");
  cmp->add_flag("--timings", c_timings, "Include per-update latency quantiles (not reproducible)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      ds::GenSpec spec;
      spec.n = gen_n;
      spec.horizon = rational_arg(gen_horizon, "--horizon");
      spec.min_length = rational_arg(gen_min, "--min-len");
      spec.max_length = rational_arg(gen_max, "--max-len");
      spec.budget = rational_arg(gen_budget, "--budget");
      spec.arrival_lead = rational_arg(gen_lead, "--arrival-lead");
      spec.seed = gen_seed;
      if (gen_overlap > 0) spec.max_overlap = gen_overlap;
      Output out(gen_out);
      ds::io::write_intervals(out.stream(), ds::generate_instance(spec).intervals);
    } else if (*sched) {
      ds::Instance instance = load_instance(s_input, s_budget, s_eps);
      const ds::Strategy strategy = ds::parse_strategy(s_strategy);
      ds::OnlineScheduler scheduler(instance.budget, strategy);
      ds::PlacementTrace trace;
      if (!s_trace.empty()) scheduler.set_trace(&trace);
      ds::drive(scheduler, instance.intervals);
      Output out(s_output);
      out.stream() << ds::io::schedule_report(instance, strategy, scheduler.assignment(),
                                              scheduler.max_id_number())
                          .dump(2)
                   << '\n';
      if (!s_trace.empty()) {
        Output trace_out(s_trace);
        trace.write_csv(trace_out.stream());
      }
    } else if (*ovds) {
      Input in(o_input);
      std::vector<ds::Interval> intervals = ds::io::read_intervals(in.stream());
      ds::Rational max_cost = 0;
      for (const auto& iv : intervals) max_cost = std::max(max_cost, iv.cost);
      std::optional<ds::Rational> eps;
      if (!o_eps.empty()) eps = rational_arg(o_eps, "--epsilon");
      // Validation needs a budget; the largest cost admits every request.
      ds::Instance instance = ds::validate_instance({std::move(intervals), max_cost > 0 ? max_cost : 1}, eps);
      auto source = capacity_source(o_caps);
      ds::OvdsReport report = ds::schedule_ovds(ds::partition_by_id(instance.intervals), *source);
      Output out(o_output);
      out.stream() << ds::io::ovds_report(instance.intervals, report).dump(2) << '\n';
    } else if (*gi) {
      Input route_in(g_route);
      ds::Route route = ds::io::route_from_json(Json::parse(route_in.stream()));
      Input req_in(g_requests);
      auto requests = ds::io::read_requests(req_in.stream());
      auto generated = ds::stream_generate(route, requests, rational_arg(g_quantum, "--quantum"));
      Output out(g_output);
      for (std::size_t i = 0; i < generated.intervals.size(); ++i)
        out.stream() << ds::io::generated_interval_to_json(generated.intervals[i], generated.sources[i]).dump()
                     << '\n';
      if (!g_rejected.empty()) {
        Output rej(g_rejected);
        for (const auto& r : generated.rejected)
          rej.stream() << Json{{"index", r.index}, {"id", r.id}, {"reason", r.reason}}.dump() << '\n';
      }
      if (!generated.rejected.empty())
        std::cerr << generated.rejected.size() << " request(s) could not be served\n";
    } else if (*orc) {
      ds::Instance instance = load_instance(r_input, r_budget, "");
      Json j;
      j["n"] = instance.intervals.size();
      const auto clique = ds::clique_number(instance.intervals);
      j["clique_number"] = clique.value;
      if (clique.witness.point) j["clique_point"] = ds::io::rational_to_json(*clique.witness.point);
      j["lower_bound"] = ds::lower_bound(instance.intervals, instance.budget);
      if (!r_lb && (r_exact || instance.intervals.size() <= ds::default_exhaustive_limit)) {
        const auto opt = ds::exact_opt_budgeted(instance.intervals, instance.budget);
        j["exact"] = opt.value;
        Json groups = Json::array();
        for (const auto& group : opt.witness.groups) {
          Json ids = Json::array();
          for (std::size_t i : group) ids.push_back(instance.intervals[i].id);
          groups.push_back(std::move(ids));
        }
        j["groups"] = std::move(groups);
      }
      Output out(r_output);
      out.stream() << j.dump(2) << '\n';
    } else if (*bench) {
      auto sizes = parse_sizes(b_sizes);
      auto rows = b_kind == "ovds" ? ds::bench_ovds(sizes, b_seeds)
                                   : ds::bench_doubling(sizes, ds::parse_strategy(b_strategy), b_seeds);
      Output out(b_output);
      ds::write_bench_csv(out.stream(), rows);
    } else if (*cmp) {
      ds::Instance instance = load_instance(c_input, c_budget, c_eps);
      auto [next_fit, first_fit] = ds::compare_strategies(instance, c_limit);
      Output out(c_output);
      out.stream() << Json{{"n", instance.intervals.size()},
                           {"next_fit", metrics_to_json(next_fit, c_timings)},
                           {"first_fit", metrics_to_json(first_fit, c_timings)}}
                          .dump(2)
                   << '\n';
    }
  } catch (const ds::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
