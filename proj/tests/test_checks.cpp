#include <gtest/gtest.h>

#include <algorithm>

#include "ducci/checks.hpp"

using namespace ducci;

namespace {

bool all_ok(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.ok(); });
}

std::size_t count(const std::vector<CheckReport>& reports, Verdict v) {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [v](const auto& r) { return r.verdict == v; }));
}

}  // namespace

TEST(Checks, MainTheoremSmall) {
  const auto r = check_main_theorem(2, 2);
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_EQ(r.check_id, "main_theorem");
  const auto all = verify_main_theorem({1, 3}, {1, 4});
  EXPECT_EQ(all.size(), 12u);
  EXPECT_EQ(count(all, Verdict::pass), 12u);
}

TEST(Checks, LowerBoundAndWong) {
  EXPECT_EQ(verify_length_lower_bound(3, 2).verdict, Verdict::pass);
  EXPECT_EQ(count(verify_wong_bound({1, 3}, {1, 3}, 20, 5), Verdict::pass), 9u);
}

TEST(Checks, TrivialKernel) {
  EXPECT_EQ(check_trivial_kernel(2, 2).verdict, Verdict::pass);
  EXPECT_EQ(check_trivial_kernel(2, 2).observed["order"], 1);
  EXPECT_EQ(check_trivial_kernel(5, 6).verdict, Verdict::cap_exceeded);
  EXPECT_FALSE(check_trivial_kernel(5, 6).ok());
}

TEST(Checks, Structural) {
  for (auto [m, n] : {std::pair{3, 2}, std::pair{4, 3}, std::pair{6, 4}, std::pair{5, 5}}) {
    const auto sys = make_system(m, n);
    EXPECT_EQ(verify_subgroup(sys).verdict, Verdict::pass) << m << " " << n;
    EXPECT_EQ(verify_basic_maximality(sys).verdict, Verdict::pass);
    EXPECT_EQ(verify_endomorphism(sys).verdict, Verdict::pass);
    EXPECT_EQ(verify_coeff_identities(sys).verdict, Verdict::pass);
    EXPECT_EQ(verify_predecessor_count(sys).verdict,
              n % 2 == 0 ? Verdict::pass : Verdict::hypothesis_skip);
  }
}

TEST(Checks, PredecessorSkipIsNotAFailure) {
  const auto r = verify_predecessor_count(make_system(4, 3));
  EXPECT_EQ(r.verdict, Verdict::hypothesis_skip);
  EXPECT_TRUE(r.ok());
  EXPECT_FALSE(r.note.empty());
}

TEST(Checks, SubgroupUsesGeneratedOrderForLargeKernels) {
  // Z_3^8 has 6561 states and a kernel above the pairwise threshold.
  EXPECT_EQ(verify_subgroup(make_system(3, 8)).verdict, Verdict::pass);
}

TEST(Checks, BinomialLemmas) {
  const auto reps = verify_binomial_lemmas(IntRange{2, 10}, 6, 256);
  EXPECT_TRUE(all_ok(reps));
  EXPECT_EQ(count(reps, Verdict::fail), 0u);
  const auto j1 = verify_binomial_lemmas(1);
  EXPECT_GT(count(j1, Verdict::hypothesis_skip), 0u);
}

TEST(Checks, CoefficientSums) {
  const auto l1 = verify_coeff_sum_lemma1({1, 4}, {1, 4});
  EXPECT_EQ(count(l1, Verdict::pass), l1.size());

  const auto l2 = verify_coeff_sum_lemma2({3, 3}, {3, 3});
  ASSERT_EQ(l2.size(), 1u);
  EXPECT_EQ(l2[0].verdict, Verdict::pass);
  EXPECT_EQ(l2[0].observed["r"], 8);
  EXPECT_EQ(l2[0].observed["s1"], 7);
  EXPECT_EQ(l2[0].observed["s2"], 3);
  EXPECT_EQ(verify_coeff_sum_lemma2({2, 2}, {2, 2})[0].verdict, Verdict::hypothesis_skip);

  const auto claim = verify_claim_g({3, 3}, {2, 2});
  ASSERT_EQ(claim.size(), 1u);
  EXPECT_EQ(claim[0].verdict, Verdict::pass);
  EXPECT_EQ(verify_claim_g({1, 1}, {2, 2})[0].verdict, Verdict::hypothesis_skip);
}

TEST(Checks, KnownL2) {
  const auto reps = verify_known_L2(12);
  EXPECT_EQ(reps.size(), 12u);
  EXPECT_EQ(count(reps, Verdict::pass), 12u);
  EXPECT_EQ(check_known_L2(12).observed["len"], 4);
}

TEST(Checks, JsonShape) {
  auto r = check_main_theorem(1, 1);
  r.elapsed_ms = 1.5;
  const auto j = to_json(r, false);
  EXPECT_EQ(j.begin().key(), "check_id");
  EXPECT_EQ(j["parameters"].dump(), R"({"k":1,"l":1})");
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_TRUE(j["counterexample"].is_null());
  EXPECT_FALSE(j.contains("elapsed_ms"));
  EXPECT_EQ(to_json(r, true)["elapsed_ms"], 1.5);
}

TEST(Checks, RunnerIsDeterministicAcrossThreadCounts) {
  std::vector<CheckJob> jobs = {
      [] { return verify_main_theorem({1, 3}, {1, 3}); },
      [] { return verify_known_L2(8); },
      [] { return std::vector<CheckReport>{verify_subgroup(make_system(3, 4))}; },
  };
  auto a = run_jobs(jobs, 1), b = run_jobs(jobs, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_EQ(to_json(a[i], false).dump(), to_json(b[i], false).dump());
  EXPECT_NE(summary_table(a, false).find("known_L2"), std::string::npos);
}
