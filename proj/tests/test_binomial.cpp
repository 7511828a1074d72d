#include <gtest/gtest.h>

#include <random>

#include "ducci/binomial.hpp"
#include "oracles.hpp"

using ducci::binom_mod_pow2;
using ducci::binary_carries;

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binom_mod_pow2(8, 4, 3), 6u);
  EXPECT_EQ(binom_mod_pow2(8, 4, 2), 2u);
  EXPECT_EQ(binom_mod_pow2(7, 4, 2), 3u);
  EXPECT_EQ(binom_mod_pow2(0, 0, 1), 1u);
  EXPECT_EQ(binom_mod_pow2(16, 8, 4), 12870u % 16);
}

TEST(Binomial, Errors) {
  EXPECT_THROW(binom_mod_pow2(3, 4, 2), ducci::parameter_error);
  EXPECT_THROW(binom_mod_pow2(3, 1, 0), ducci::parameter_error);
  EXPECT_THROW(binom_mod_pow2(3, 1, 64), ducci::parameter_error);
}

TEST(Binomial, CarriesMatchTwoAdicValuation) {
  for (std::uint64_t N = 0; N <= 60; ++N)
    for (std::uint64_t K = 0; K <= N; ++K) {
      auto c = oracle::binom_exact(N, K);
      unsigned v = 0;
      while (c % 2 == 0) c /= 2, ++v;
      EXPECT_EQ(binary_carries(K, N - K), v) << N << " " << K;
    }
}

TEST(Binomial, MatchesPascalOracle) {
  const auto rows = oracle::pascal_mod_pow2(1024, 8);
  for (std::uint64_t N = 0; N <= 1024; ++N)
    for (std::uint64_t K = 0; K <= N; ++K)
      for (unsigned l = 1; l <= 8; ++l)
        ASSERT_EQ(binom_mod_pow2(N, K, l), rows[N][K] & ((1u << l) - 1))
            << "C(" << N << "," << K << ") mod 2^" << l;
}

TEST(Binomial, MatchesExactValuesAtHighPrecision) {
  for (std::uint64_t N = 0; N <= 62; ++N)
    for (std::uint64_t K = 0; K <= N; ++K) {
      const auto exact = oracle::binom_exact(N, K);
      for (unsigned l : {10u, 17u, 31u, 40u, 63u})
        ASSERT_EQ(binom_mod_pow2(N, K, l), exact & ((std::uint64_t{1} << l) - 1))
            << "C(" << N << "," << K << ") mod 2^" << l;
    }
}

TEST(Binomial, PascalRuleForHugeArguments) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 2000; ++t) {
    const std::uint64_t N = (rng() >> 4) + 1;
    const std::uint64_t K = 1 + rng() % N;
    const unsigned l = 1 + rng() % 40;
    const auto mask = (std::uint64_t{1} << l) - 1;
    EXPECT_EQ(binom_mod_pow2(N, K, l),
              (binom_mod_pow2(N - 1, K - 1, l) + (K <= N - 1 ? binom_mod_pow2(N - 1, K, l) : 0)) &
                  mask)
        << N << " " << K << " " << l;
  }
}

TEST(Binomial, CentralBinomialOfPowerOfTwo) {
  for (unsigned j = 2; j <= 40; ++j) {
    const auto N = std::uint64_t{1} << j;
    EXPECT_EQ(binom_mod_pow2(N, N / 2, 2), 2u) << j;
    EXPECT_EQ(binom_mod_pow2(N, N / 2, 3), 6u) << j;
    EXPECT_EQ(binom_mod_pow2(N - 1, N / 2, 2), 3u) << j;
  }
}

TEST(Binomial, OddProductMatchesDirectProduct) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const std::uint64_t x = (std::uint64_t{1} << 16) + rng() % (std::uint64_t{1} << 21);
    std::uint64_t p = 1;
    for (std::uint64_t i = 1; i <= x; i += 2) p *= i;
    EXPECT_EQ(ducci::detail::odd_product_mod_2_64(x), p) << x;
  }
}

TEST(Binomial, Vandermonde) {
  // C(a+b, n) = sum_i C(a, i) C(b, n-i) at large a, b and high precision.
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const std::uint64_t a = rng() >> 2, b = rng() >> 2, n = rng() % 12;
    const unsigned l = 20 + rng() % 44;
    const auto mask = (std::uint64_t{1} << l) - 1;
    std::uint64_t sum = 0;
    for (std::uint64_t i = 0; i <= n; ++i) sum += binom_mod_pow2(a, i, l) * binom_mod_pow2(b, n - i, l);
    EXPECT_EQ(binom_mod_pow2(a + b, n, l), sum & mask) << a << " " << b << " " << n << " " << l;
  }
}
