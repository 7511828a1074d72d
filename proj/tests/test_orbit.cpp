#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "ducci/orbit.hpp"
#include "oracles.hpp"

using namespace ducci;

namespace {

ResidueTuple T(const DucciSystem& sys, std::initializer_list<std::int64_t> e) {
  return ResidueTuple(sys, e);
}

}  // namespace

TEST(Orbit, ThreeOneThree) {
  const auto sys = make_system(4, 3);
  const auto s = orbit_summary(sys, T(sys, {3, 1, 3}));
  EXPECT_EQ(s.len, 2u);
  EXPECT_EQ(s.per, 3u);
  EXPECT_EQ(s.tail, (std::vector{T(sys, {3, 1, 3}), T(sys, {0, 0, 2})}));
  EXPECT_EQ(s.cycle, (std::vector{T(sys, {0, 2, 2}), T(sys, {2, 0, 2}), T(sys, {2, 2, 0})}));
  EXPECT_FALSE(s.vanishes());

  EXPECT_EQ(orbit_summary(sys, T(sys, {0, 0, 2})).len, 1u);
  EXPECT_EQ(orbit_summary(sys, T(sys, {0, 2, 2})).len, 0u);
}

TEST(Orbit, TwoByFour) {
  const auto sys = make_system(4, 2);
  const auto a = orbit_summary(sys, T(sys, {2, 3}));
  EXPECT_EQ(a.len, 3u);
  EXPECT_EQ(a.per, 1u);
  EXPECT_TRUE(a.vanishes());
  EXPECT_EQ(orbit_summary(sys, T(sys, {1, 3})).len, 1u);
  EXPECT_EQ(basic_len_per(sys), (LenPer{3, 1}));
}

TEST(Orbit, BasicSequences) {
  EXPECT_EQ(basic_len_per(make_system(2, 4)), (LenPer{4, 1}));
  EXPECT_EQ(basic_len_per(make_pow2_system(2, 2)), (LenPer{6, 1}));
  EXPECT_EQ(basic_len_per(make_pow2_system(1, 3)), (LenPer{4, 1}));
  EXPECT_TRUE(vanishes(make_system(8, 4), T(make_system(8, 4), {5, 1, 7, 2})));
  EXPECT_FALSE(vanishes(make_system(2, 3), T(make_system(2, 3), {0, 0, 1})));
}

TEST(Orbit, CapIsEnforced) {
  const auto sys = make_system(1000003, 7);
  EXPECT_THROW(orbit_summary(sys, basic_tuple(sys), 100), cap_exceeded);
}

TEST(Orbit, AgreesWithOracleExhaustively) {
  for (int m = 2; m <= 5; ++m)
    for (int n = 1; n <= 4; ++n) {
      const auto sys = make_system(m, n);
      for (const auto& u : oracle::all_tuples(sys)) {
        const auto want = oracle::len_per(sys, u);
        const auto got = orbit_summary(sys, u);
        ASSERT_EQ(got.len, want.len) << to_text(u) << " in Z_" << m << "^" << n;
        ASSERT_EQ(got.per, want.per) << to_text(u);
        ASSERT_EQ(brent_len_per(sys, u), (LenPer{want.len, want.per})) << to_text(u);
      }
    }
}

TEST(Orbit, BrentMatchesMapOnRandomLargeSystems) {
  std::mt19937_64 rng(42);
  for (auto [m, n] : {std::pair{3, 9}, std::pair{5, 7}, std::pair{6, 10}, std::pair{97, 4}}) {
    const auto sys = make_system(m, n);
    for (int t = 0; t < 20; ++t) {
      const auto u = oracle::random_tuple(sys, rng);
      const auto s = orbit_summary(sys, u);
      EXPECT_EQ(brent_len_per(sys, u), (LenPer{s.len, s.per}));
    }
  }
}

TEST(Orbit, BasicIsMaximal) {
  for (int m = 2; m <= 6; ++m)
    for (int n = 1; n <= 5; ++n) {
      const auto sys = make_system(m, n);
      const auto basic = basic_len_per(sys);
      for (const auto& u : oracle::all_tuples(sys)) {
        const auto s = orbit_summary(sys, u);
        EXPECT_LE(s.len, basic.len);
        EXPECT_EQ(basic.per % s.per, 0u);
      }
    }
}

TEST(Predecessors, TwoByFour) {
  const auto sys = make_system(4, 2);
  EXPECT_EQ(predecessors(sys, T(sys, {0, 0})),
            (std::vector{T(sys, {0, 0}), T(sys, {1, 3}), T(sys, {2, 2}), T(sys, {3, 1})}));
  EXPECT_TRUE(predecessors(sys, T(sys, {1, 3})).empty());
  EXPECT_TRUE(predecessors(sys, T(sys, {2, 3})).empty());
}

TEST(Predecessors, AgreeWithScan) {
  for (int m = 2; m <= 6; ++m)
    for (int n = 1; n <= 4; ++n) {
      const auto sys = make_system(m, n);
      for (const auto& u : oracle::all_tuples(sys)) {
        auto got = predecessors(sys, u);
        auto want = oracle::predecessors(sys, u);
        std::sort(got.begin(), got.end());
        ASSERT_EQ(got, want) << to_text(u) << " in Z_" << m << "^" << n;
        if (n % 2 == 0) {
          ASSERT_TRUE(got.empty() || got.size() == static_cast<std::size_t>(m));
        }
      }
    }
}

TEST(Kernel, SmallCases) {
  const auto z32 = make_system(3, 2);
  const auto k = kernel_set(z32);
  EXPECT_EQ(k.order(), 3u);
  EXPECT_EQ(k.members(), (std::vector{T(z32, {0, 0}), T(z32, {1, 1}), T(z32, {2, 2})}));
  EXPECT_TRUE(k.contains(T(z32, {2, 2})));
  EXPECT_FALSE(k.contains(T(z32, {1, 2})));

  const auto z22 = make_system(2, 2);
  EXPECT_EQ(kernel_set(z22).members(), (std::vector{T(z22, {0, 0})}));
  EXPECT_EQ(to_json(kernel_set(z32)).dump(), "[[0,0],[1,1],[2,2]]");
}

TEST(Kernel, AgreesWithStableImage) {
  for (int m = 2; m <= 6; ++m)
    for (int n = 1; n <= 5; ++n) {
      const auto sys = make_system(m, n);
      if (*sys.state_count() > 8000) continue;
      const auto want = oracle::kernel(sys);
      const auto got = kernel_set(sys).members();
      ASSERT_EQ(std::set<ResidueTuple>(got.begin(), got.end()), want)
          << "Z_" << m << "^" << n;
    }
}

TEST(Kernel, PowerOfTwoIsTrivial) {
  for (unsigned k = 0; k <= 3; ++k)
    for (unsigned l = 1; l <= 2; ++l) EXPECT_EQ(kernel_set(make_pow2_system(k, l)).order(), 1u);
}

TEST(Kernel, CapIsEnforced) {
  EXPECT_THROW(kernel_set(make_system(2, 30)), cap_exceeded);
  EXPECT_THROW(kernel_set(make_system(4, 8), 1000), cap_exceeded);
}

TEST(OrbitJson, FieldOrder) {
  const auto sys = make_system(4, 3);
  EXPECT_EQ(to_json(orbit_summary(sys, T(sys, {3, 1, 3}))).dump(),
            R"({"len":2,"per":3,"tail":[[3,1,3],[0,0,2]],"cycle":[[0,2,2],[2,0,2],[2,2,0]]})");
}
