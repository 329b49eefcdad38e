#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "dronesched/core_model.hpp"
#include "dronesched/online_scheduler.hpp"
#include "dronesched/oracle.hpp"
#include "dronesched/variable_size.hpp"

namespace dronesched {

// Random instance recipe. Times are drawn on a grid of 1/resolution; costs
// are budget * k / 1000 with k uniform in [1, 1000].
struct GenSpec {
  std::size_t n = 0;
  Rational horizon = 100;
  Rational min_length = 1;
  Rational max_length = 10;
  Rational budget = 10;
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_overlap;
  Rational arrival_lead = 0;  // arrival drawn in [left - lead, left]
  unsigned resolution = 1000;
  unsigned max_attempts = 1000;
};

inline Instance generate_instance(const GenSpec& spec) {
  Instance instance;
  instance.budget = spec.budget;
  if (spec.n == 0) return instance;
  if (spec.budget <= 0 || spec.min_length <= 0 || spec.max_length < spec.min_length ||
      spec.arrival_lead < 0 || spec.resolution == 0)
    throw Error(ErrorKind::malformed_request, "ill-formed generator distributions");
  const Rational res = spec.resolution;
  const BigInt horizon_ticks = floor_int(spec.horizon * res);
  const BigInt min_ticks = std::max(ceil_int(spec.min_length * res), BigInt(1));
  const BigInt max_ticks = std::min(floor_int(spec.max_length * res), horizon_ticks);
  if (max_ticks < min_ticks || horizon_ticks + 1 < 2 * BigInt(spec.n))
    throw Error(ErrorKind::malformed_request, "horizon too small to place " +
                                                  std::to_string(spec.n) + " distinct intervals");

  std::mt19937_64 rng(spec.seed);
  auto draw = [&](const BigInt& lo, const BigInt& hi) {
    std::uniform_int_distribution<std::int64_t> pick(lo.convert_to<std::int64_t>(),
                                                     hi.convert_to<std::int64_t>());
    return BigInt(pick(rng));
  };
  std::uniform_int_distribution<int> cost_step(1, 1000);
  std::uniform_int_distribution<int> lead_step(0, 1000);

  for (unsigned attempt = 0; attempt < spec.max_attempts; ++attempt) {
    std::vector<Interval> intervals;
    intervals.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
      BigInt length = draw(min_ticks, max_ticks);
      BigInt left = draw(BigInt(0), horizon_ticks - length);
      Interval iv;
      iv.left = Rational(left) / res;
      iv.right = Rational(left + length) / res;
      iv.arrival = iv.left;
      iv.cost = spec.budget * cost_step(rng) / 1000;
      intervals.push_back(std::move(iv));
    }
    std::stable_sort(intervals.begin(), intervals.end(),
                     [](const Interval& a, const Interval& b) { return a.left < b.left; });
    if (!has_distinct_endpoints(intervals))
      intervals = normalize_endpoints(intervals, *default_epsilon(intervals));

    std::set<TimePoint> arrivals;
    for (auto& iv : intervals) {
      iv.arrival = iv.left;
      if (spec.arrival_lead > 0) {
        iv.arrival = std::max(Rational(0), Rational(iv.left - spec.arrival_lead * lead_step(rng) / 1000));
        while (arrivals.count(iv.arrival)) iv.arrival = (iv.arrival + iv.left) / 2;
      }
      arrivals.insert(iv.arrival);
    }
    std::stable_sort(intervals.begin(), intervals.end(),
                     [](const Interval& a, const Interval& b) { return a.arrival < b.arrival; });
    for (std::size_t i = 0; i < intervals.size(); ++i) intervals[i].id = "r" + std::to_string(i);

    if (spec.max_overlap && clique_number(intervals).value > *spec.max_overlap) continue;
    instance.intervals = std::move(intervals);
    return instance;
  }
  throw Error(ErrorKind::malformed_request, "no instance met the overlap filter within " +
                                                std::to_string(spec.max_attempts) + " attempts");
}

// n intervals [i, n + i], i = 1..n, all containing [n, n + 1]; the online
// scheduler must issue n distinct idNumbers.
inline Instance all_overlapping_instance(std::size_t n, const Rational& budget, std::uint64_t seed) {
  Instance instance;
  instance.budget = budget;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cost_step(1, 1000);
  instance.intervals.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    Interval iv;
    iv.id = "a" + std::to_string(i);
    iv.left = Rational(i);
    iv.right = Rational(n + i);
    iv.arrival = iv.left;
    iv.cost = budget * cost_step(rng) / 1000;
    instance.intervals.push_back(std::move(iv));
  }
  return instance;
}

struct RunMetrics {
  Strategy strategy = Strategy::next_fit;
  std::size_t drone_count = 0;
  std::size_t oracle_value = 0;
  bool oracle_exact = false;
  double ratio = 0;
  IdNumber max_id_number = 0;
  std::size_t peak_live = 0;
  double p50_ns = 0;
  double p90_ns = 0;
  double p99_ns = 0;
  double max_ns = 0;
};

namespace detail {
inline double quantile(std::vector<double> sorted_values, double q) {
  if (sorted_values.empty()) return 0;
  std::sort(sorted_values.begin(), sorted_values.end());
  auto pos = static_cast<std::size_t>(q * static_cast<double>(sorted_values.size() - 1) + 0.5);
  return sorted_values[std::min(pos, sorted_values.size() - 1)];
}

inline double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }
}  // namespace detail

inline RunMetrics measure_run(const Instance& instance, Strategy strategy, std::size_t oracle_value,
                              bool oracle_exact) {
  using clock = std::chrono::steady_clock;
  OnlineScheduler scheduler(instance.budget, strategy);
  std::vector<double> latencies;
  latencies.reserve(instance.intervals.size() * 3);
  drive(scheduler, instance.intervals, [&](auto&& update) {
    auto start = clock::now();
    update();
    latencies.push_back(std::chrono::duration<double, std::nano>(clock::now() - start).count());
  });

  RunMetrics m;
  m.strategy = strategy;
  m.drone_count = scheduler.assignment().drone_count;
  m.oracle_value = oracle_value;
  m.oracle_exact = oracle_exact;
  m.ratio = static_cast<double>(m.drone_count) / static_cast<double>(std::max<std::size_t>(oracle_value, 1));
  m.max_id_number = scheduler.max_id_number();
  m.peak_live = scheduler.peak_live();
  m.p50_ns = detail::quantile(latencies, 0.5);
  m.p90_ns = detail::quantile(latencies, 0.9);
  m.p99_ns = detail::quantile(latencies, 0.99);
  m.max_ns = latencies.empty() ? 0 : *std::max_element(latencies.begin(), latencies.end());
  return m;
}

// Runs next-fit and first-fit on the same instance. The reference value is
// the exact budgeted optimum when n <= exact_limit, lower_bound() otherwise.
inline std::pair<RunMetrics, RunMetrics> compare_strategies(const Instance& instance,
                                                            std::size_t exact_limit = 10) {
  const bool exact = instance.intervals.size() <= exact_limit;
  const std::size_t reference = exact ? exact_opt_budgeted(instance.intervals, instance.budget).value
                                      : lower_bound(instance.intervals, instance.budget);
  return {measure_run(instance, Strategy::next_fit, reference, exact),
          measure_run(instance, Strategy::first_fit, reference, exact)};
}

struct BenchRow {
  std::size_t n = 0;
  std::size_t seeds = 0;
  double median_ns = 0;   // scheduler: per update; ovds: total
  double mean_ns = 0;
  double normalized = 0;  // scheduler: median per update; ovds: median / (n log2 n)
};

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "n,seeds,median_ns,mean_ns,normalized\n";
  for (const auto& r : rows)
    out << r.n << ',' << r.seeds << ',' << r.median_ns << ',' << r.mean_ns << ',' << r.normalized << '\n';
}

namespace detail {
// Repeats small sizes so each measurement covers roughly `target` units.
inline std::size_t repetitions(std::size_t n, std::size_t target) {
  return std::max<std::size_t>(1, target / std::max<std::size_t>(n, 1));
}
}  // namespace detail

/**
 * Doubling experiment for the online scheduler on all-overlapping instances.
 * Per (n, seed) the time of a full drive is divided by the number of updates
 * (one submit and two ticks per interval); the row reports the median and
 * mean over seeds, each seed itself the median of repeated runs.
 */
inline std::vector<BenchRow> bench_doubling(const std::vector<std::size_t>& sizes, Strategy strategy,
                                            std::size_t seeds = 5, std::uint64_t base_seed = 1) {
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    std::vector<double> per_seed;
    const std::size_t reps = detail::repetitions(n, std::size_t{1} << 15);
    for (std::size_t s = 0; s < seeds; ++s) {
      Instance instance = all_overlapping_instance(n, 10, base_seed + s);
      std::vector<double> runs;
      for (std::size_t r = 0; r < reps; ++r) {
        OnlineScheduler scheduler(instance.budget, strategy);
        auto start = clock::now();
        drive(scheduler, instance.intervals);
        double ns = std::chrono::duration<double, std::nano>(clock::now() - start).count();
        runs.push_back(ns / static_cast<double>(3 * n));
      }
      per_seed.push_back(detail::median(runs));
    }
    BenchRow row;
    row.n = n;
    row.seeds = seeds;
    row.median_ns = detail::median(per_seed);
    for (double v : per_seed) row.mean_ns += v / static_cast<double>(per_seed.size());
    row.normalized = row.median_ns;
    rows.push_back(row);
  }
  return rows;
}

// End-to-end variable-capacity scheduling (partition + fill) on random
// instances of constant density; capacities uniform in [budget, 2*budget].
inline std::vector<BenchRow> bench_ovds(const std::vector<std::size_t>& sizes, std::size_t seeds = 5,
                                        std::uint64_t base_seed = 1) {
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    std::vector<double> per_seed;
    const std::size_t reps = detail::repetitions(n, std::size_t{1} << 14);
    for (std::size_t s = 0; s < seeds; ++s) {
      GenSpec spec;
      spec.n = n;
      spec.horizon = Rational(n);
      spec.min_length = 1;
      spec.max_length = 8;
      spec.seed = base_seed + s;
      Instance instance = generate_instance(spec);
      std::vector<double> runs;
      for (std::size_t r = 0; r < reps; ++r) {
        UniformCapacitySource source(spec.budget, 2 * spec.budget, base_seed + s);
        auto start = clock::now();
        OvdsReport report = schedule_ovds(partition_by_id(instance.intervals), source);
        double ns = std::chrono::duration<double, std::nano>(clock::now() - start).count();
        runs.push_back(ns);
        if (report.total_drones == 0 && n > 0) throw std::logic_error("empty OVDS schedule");
      }
      per_seed.push_back(detail::median(runs));
    }
    BenchRow row;
    row.n = n;
    row.seeds = seeds;
    row.median_ns = detail::median(per_seed);
    for (double v : per_seed) row.mean_ns += v / static_cast<double>(per_seed.size());
    const double nlogn = static_cast<double>(n) * std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
    row.normalized = row.median_ns / nlogn;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dronesched
