#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "ducci/coeff.hpp"
#include "ducci/orbit.hpp"
#include "oracles.hpp"

using namespace ducci;

namespace {

/// a_{r,s} read off the stepped basic tuple: D^r(0,..,0,1) = (a_{r,n}, .., a_{r,1}).
residue oracle_coeff(const DucciSystem& sys, std::uint64_t r, std::size_t s) {
  auto u = basic_tuple(sys);
  for (std::uint64_t i = 0; i < r; ++i) u = oracle::step(sys, u);
  return u[sys.length() - s];
}

}  // namespace

TEST(Coeff, RowsOfZ4Length4) {
  const auto sys = make_pow2_system(2, 2);
  auto t = coeff_table(sys, 6);
  using R = std::vector<residue>;
  EXPECT_EQ(R(t.row(0).begin(), t.row(0).end()), (R{1, 0, 0, 0}));
  EXPECT_EQ(R(t.row(3).begin(), t.row(3).end()), (R{1, 3, 3, 1}));
  EXPECT_EQ(R(t.row(4).begin(), t.row(4).end()), (R{2, 0, 2, 0}));
  EXPECT_EQ(R(t.row(5).begin(), t.row(5).end()), (R{2, 2, 2, 2}));
  EXPECT_EQ(R(t.row(6).begin(), t.row(6).end()), (R{0, 0, 0, 0}));
  EXPECT_EQ(coeff_at(sys, 5, 1), 2u);
  EXPECT_EQ(t.at(4, 0), t.at(4, 4));
  EXPECT_EQ(t.at(4, -3), t.at(4, 1));
}

TEST(Coeff, MatchesSteppedBasicTuple) {
  for (auto [m, n] : {std::pair{2, 8}, std::pair{3, 5}, std::pair{4, 4}, std::pair{6, 7},
                      std::pair{8, 16}}) {
    const auto sys = make_system(m, n);
    CoeffTable t(sys);
    for (std::uint64_t r = 0; r <= 40; ++r)
      for (std::size_t s = 1; s <= sys.length(); ++s)
        ASSERT_EQ(t.at(r, static_cast<std::int64_t>(s)), oracle_coeff(sys, r, s))
            << "a_{" << r << "," << s << "} in Z_" << m << "^" << n;
  }
}

TEST(Coeff, BinomialFormBelowN) {
  const auto sys = make_system(1000, 12);
  CoeffTable t(sys);
  for (std::uint64_t r = 0; r < 12; ++r)
    for (std::uint64_t s = 1; s <= 12; ++s)
      EXPECT_EQ(t.at(r, static_cast<std::int64_t>(s)), oracle::binom_exact(r, s - 1) % 1000);
  for (std::uint64_t s = 1; s <= 12; ++s)
    EXPECT_EQ(t.at(12, static_cast<std::int64_t>(s)),
              (oracle::binom_exact(12, s - 1) + (s == 1 ? 1 : 0)) % 1000);
}

TEST(Coeff, ExpansionMatchesIteration) {
  std::mt19937_64 rng(3);
  for (auto [m, n] : {std::pair{4, 4}, std::pair{5, 6}, std::pair{6, 3}, std::pair{9, 10}}) {
    const auto sys = make_system(m, n);
    CoeffTable t(sys);
    for (int trial = 0; trial < 30; ++trial) {
      const auto u = oracle::random_tuple(sys, rng);
      auto stepped = u;
      for (std::uint64_t r = 0; r <= 30; ++r) {
        ASSERT_EQ(apply_coeff_expansion(t, u, r), stepped) << to_text(u) << " r=" << r;
        stepped = oracle::step(sys, stepped);
      }
    }
  }
}

TEST(Coeff, SymmetryAndConvolution) {
  const auto sys = make_system(6, 6);
  CoeffTable t(sys);
  const auto n = static_cast<std::int64_t>(sys.length());
  for (std::int64_t r = 0; r <= 24; ++r)
    for (std::int64_t s = 1; s <= n; ++s) {
      EXPECT_EQ(t.at(r, s), t.at(r, r - s + 2));
      for (std::int64_t q = 0; q <= 10; ++q) {
        residue acc = 0;
        for (std::int64_t i = 1; i <= n; ++i) acc = (acc + t.at(r, i) * t.at(q, s - i + 1)) % 6;
        EXPECT_EQ(t.at(r + q, s), acc);
      }
    }
}

TEST(Coeff, Views) {
  const auto z44 = make_pow2_system(2, 2);
  EXPECT_EQ(coeff_view(z44, CoeffView::h(3, 1)), 2u);
  EXPECT_EQ(coeff_view(z44, CoeffView::g(2, 2, 1)), 2u);
  EXPECT_EQ(coeff_view(z44, CoeffView::f(2, 1)), 2u);

  const auto cell = resolve_view(make_pow2_system(3, 2), CoeffView::g(2, 2, 1));
  EXPECT_EQ(cell.r, 8u);
  EXPECT_EQ(cell.s, 5u);
  EXPECT_EQ(coeff_view(make_pow2_system(3, 2), CoeffView::g(2, 2, 1)), 2u);

  EXPECT_THROW(coeff_view(make_pow2_system(1, 2), CoeffView::g(1, 1, 1)), hypothesis_error);
  EXPECT_THROW(coeff_view(make_system(4, 6), CoeffView::f(1, 1)), hypothesis_error);
  EXPECT_THROW(coeff_view(make_system(4, 1), CoeffView::f(1, 1)), hypothesis_error);
  EXPECT_THROW(coeff_view(z44, CoeffView::h(0, 1)), parameter_error);
}

TEST(Coeff, CapIsEnforced) {
  CoeffTable t(make_system(4, 64), 1000);
  EXPECT_NO_THROW(t.extend_to(14));
  EXPECT_THROW(t.extend_to(15), cap_exceeded);
  EXPECT_THROW(t.computed_row(15), parameter_error);
}

TEST(Coeff, Csv) {
  std::ostringstream os;
  write_csv(os, coeff_table(make_system(3, 2), 1));
  EXPECT_EQ(os.str(), "r,s,value\n0,1,1\n0,2,0\n1,1,1\n1,2,1\n");
}
