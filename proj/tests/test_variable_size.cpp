#include <random>

#include <gtest/gtest.h>

#include "dronesched/oracle.hpp"
#include "dronesched/variable_size.hpp"
#include "support/brute_force.hpp"

namespace ds = dronesched;
using ds::Rational;
using ds::testing::make_interval;

namespace {

ds::IdLists single_list(std::vector<int> costs) {
  std::vector<ds::Interval> ivs;
  for (std::size_t i = 0; i < costs.size(); ++i)
    ivs.push_back(make_interval("c" + std::to_string(i), 10 * i, 10 * i + 5, costs[i]));
  return ds::partition_by_id(ivs);
}

}  // namespace

TEST(PartitionById, DisjointIntervalsShareOneList) {
  std::vector<ds::Interval> ivs{make_interval("a", 1, 2, 1), make_interval("b", 3, 4, 1), make_interval("c", 5, 6, 1)};
  auto lists = ds::partition_by_id(ivs);
  EXPECT_EQ(lists.g(), 1u);
  EXPECT_EQ(lists.lists[0].size(), 3u);
}

TEST(PartitionById, TripleOverlapNeedsThreeLists) {
  std::vector<ds::Interval> ivs{make_interval("a", 1, 4, 1), make_interval("b", 2, 5, 1), make_interval("c", 3, 6, 1)};
  auto lists = ds::partition_by_id(ivs);
  EXPECT_EQ(lists.g(), 3u);
  for (const auto& list : lists.lists) EXPECT_EQ(list.size(), 1u);
}

TEST(PartitionById, ListsAreSortedIndependentSetsAndGEqualsClique) {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 200; ++round) {
    auto ivs = ds::testing::random_distinct_intervals(rng, 8, 10);
    auto lists = ds::partition_by_id(ivs);
    EXPECT_EQ(lists.g(), ds::testing::brute_max_clique(ivs));
    for (const auto& list : lists.lists) {
      std::vector<const ds::Interval*> group;
      for (std::size_t k = 0; k < list.size(); ++k) {
        group.push_back(&list[k]);
        if (k) { EXPECT_LE(list[k - 1].cost, list[k].cost); }
      }
      EXPECT_TRUE(ds::testing::pairwise_disjoint(group));
    }
  }
}

TEST(PartitionById, RejectsSharedEndpoints) {
  std::vector<ds::Interval> ivs{make_interval("a", 1, 3, 1), make_interval("b", 3, 4, 1)};
  EXPECT_THROW(ds::partition_by_id(ivs), ds::Error);
}

TEST(ScheduleOvds, OneDroneTakesEverythingThatFits) {
  ds::CapacityListSource source({5});
  auto report = ds::schedule_ovds(single_list({2, 3}), source);
  EXPECT_EQ(report.total_drones, 1u);
  EXPECT_EQ(report.drones[0].served.size(), 2u);
}

TEST(ScheduleOvds, HandTracedTwoDrones) {
  ds::CapacityListSource source({5, 4});
  auto report = ds::schedule_ovds(single_list({2, 3, 4}), source);
  ASSERT_EQ(report.total_drones, 2u);
  EXPECT_EQ(report.drones[0].served, (std::vector<ds::RequestId>{"c0", "c1"}));
  EXPECT_EQ(report.drones[1].served, (std::vector<ds::RequestId>{"c2"}));
  EXPECT_EQ(report.colors.at("c2"), (ds::Color{1, 2}));
  EXPECT_EQ(*report.drones[0].cheapest_left, 4);
  EXPECT_EQ(*report.alpha(), Rational(5, 4));
}

TEST(ScheduleOvds, UndersizedDroneIsAContractViolation) {
  ds::CapacityListSource source({3});
  try {
    ds::schedule_ovds(single_list({2, 4}), source);
    FAIL();
  } catch (const ds::Error& e) {
    EXPECT_EQ(e.kind(), ds::ErrorKind::contract_violation);
  }
}

TEST(ScheduleOvds, UniformSourceStaysInRange) {
  ds::UniformCapacitySource source(5, 10, 42);
  for (int i = 0; i < 1000; ++i) {
    Rational b = source.request_drone();
    ASSERT_GE(b, 5);
    ASSERT_LE(b, 10);
  }
}

// Random instances: any-fit on release, per-drone budget, disjointness,
// ALG <= 2*sum/B_min + g, and the (2a+1) bound against the lower bound.
// The lower bound is itself checked against an exhaustive offline search
// over the drawn capacities.
TEST(ScheduleOvds, PropertiesOnRandomInstances) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 150; ++round) {
    const Rational B = 10;
    const std::size_t n = 1 + round % 8;
    auto ivs = ds::testing::random_distinct_intervals(rng, n, B);
    const Rational hi = round % 3 == 0 ? B : B * (1 + round % 5);
    ds::UniformCapacitySource source(B, hi, static_cast<std::uint64_t>(round));
    auto report = ds::schedule_ovds(ds::partition_by_id(ivs), source);

    std::map<ds::RequestId, const ds::Interval*> by_id;
    for (const auto& iv : ivs) by_id[iv.id] = &iv;
    std::vector<Rational> drawn;
    Rational total = 0;
    for (const auto& drone : report.drones) {
      drawn.push_back(drone.capacity);
      ASSERT_LE(drone.load, drone.capacity);
      if (drone.cheapest_left) { ASSERT_GT(*drone.cheapest_left, drone.capacity - drone.load); }
      std::vector<const ds::Interval*> group;
      for (const auto& id : drone.served) group.push_back(by_id.at(id));
      ASSERT_TRUE(ds::testing::pairwise_disjoint(group));
      total += drone.load;
    }
    ASSERT_EQ(report.colors.size(), n);

    const Rational alg = report.total_drones;
    ASSERT_LE(alg, 2 * total / *report.min_capacity + report.drones_per_list.size());
    const std::size_t lb = ds::ovds_lower_bound(ivs, drawn);
    ASSERT_LE(alg, (2 * *report.alpha() + 1) * lb);
    auto offline = ds::testing::brute_ovds_opt(ivs, drawn);
    ASSERT_TRUE(offline);
    ASSERT_LE(lb, *offline);
  }
}

TEST(ScheduleOvds, EqualCapacitiesMeetThreeTimesLowerBound) {
  std::mt19937_64 rng(4);
  for (int round = 0; round < 100; ++round) {
    auto ivs = ds::testing::random_distinct_intervals(rng, 12, 10);
    ds::CapacityListSource source({10});
    auto report = ds::schedule_ovds(ds::partition_by_id(ivs), source);
    std::vector<Rational> caps{10};
    EXPECT_LE(report.total_drones, 3 * ds::ovds_lower_bound(ivs, caps));
  }
}
