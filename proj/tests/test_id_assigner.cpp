#include <random>

#include <gtest/gtest.h>

#include "dronesched/id_assigner.hpp"
#include "support/brute_force.hpp"

namespace ds = dronesched;

TEST(IdPool, FreshPoolIssuesOne) {
  ds::IdPool pool;
  EXPECT_EQ(pool.acquire(), 1u);
  EXPECT_EQ(pool.max_issued(), 1u);
}

TEST(IdPool, GrowsWhenNothingIsFree) {
  ds::IdPool pool;
  pool.acquire();
  pool.acquire();
  EXPECT_EQ(pool.acquire(), 3u);
}

TEST(IdPool, ReusesSmallestFreeId) {
  ds::IdPool pool;
  pool.acquire();
  pool.acquire();
  pool.acquire();
  pool.release(2);  // used {1,3}, free {2}
  EXPECT_EQ(pool.acquire(), 2u);
  EXPECT_EQ(pool.max_issued(), 3u);
}

TEST(IdPool, ReleaseMovesIdToFree) {
  ds::IdPool pool;
  pool.acquire();
  pool.acquire();
  pool.release(1);
  EXPECT_EQ(pool.used(), (std::set<ds::IdNumber>{2}));
  EXPECT_EQ(pool.free_count(), 1u);
  EXPECT_EQ(pool.max_issued(), 2u);
  EXPECT_EQ(pool.acquire(), 1u);
}

TEST(IdPool, ReleasingUnknownIdIsALogicError) {
  ds::IdPool pool;
  pool.acquire();
  EXPECT_THROW(pool.release(5), std::logic_error);
  pool.release(1);
  EXPECT_THROW(pool.release(1), std::logic_error);
}

TEST(IdPool, MatchesMexOracleOnRandomSequences) {
  std::mt19937_64 rng(2024);
  for (int seq = 0; seq < 20; ++seq) {
    ds::IdPool pool;
    std::set<ds::IdNumber> used;
    ds::IdNumber historical_max = 0;
    for (int op = 0; op < 10000; ++op) {
      bool acquire = used.empty() || std::bernoulli_distribution(0.55)(rng);
      if (acquire) {
        ds::IdNumber expected = ds::testing::naive_mex(used);
        ASSERT_EQ(pool.acquire(), expected);
        used.insert(expected);
        historical_max = std::max(historical_max, expected);
      } else {
        auto it = used.begin();
        std::advance(it, std::uniform_int_distribution<std::size_t>(0, used.size() - 1)(rng));
        pool.release(*it);
        used.erase(it);
      }
      ASSERT_EQ(pool.max_issued(), historical_max);
      ASSERT_EQ(pool.used(), used);
      ASSERT_EQ(pool.used().size() + pool.free_count(), pool.max_issued());
    }
  }
}
