#pragma once

// Brute-force reference implementations used only by the tests. None of
// these share code paths with the library beyond the tuple type and D.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "ducci/system.hpp"

namespace oracle {

using ducci::DucciSystem;
using ducci::ResidueTuple;
using ducci::residue;

/// Every tuple of Z_m^n in lexicographic order, by odometer.
inline std::vector<ResidueTuple> all_tuples(const DucciSystem& sys) {
  std::vector<ResidueTuple> out;
  std::vector<std::int64_t> e(sys.length(), 0);
  while (true) {
    out.emplace_back(sys, e);
    std::size_t i = e.size();
    while (i > 0) {
      --i;
      if (++e[i] < static_cast<std::int64_t>(sys.modulus())) break;
      e[i] = 0;
      if (i == 0) return out;
    }
  }
}

/// D written from its definition, entry by entry.
inline ResidueTuple step(const DucciSystem& sys, const ResidueTuple& u) {
  std::vector<std::int64_t> e(sys.length());
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] = static_cast<std::int64_t>(u[i] + u[(i + 1) % e.size()]);
  return ResidueTuple(sys, e);
}

struct LenPer {
  std::uint64_t len, per;
};

/// Len/Per by quadratic search for the first repeat in the plain orbit list.
inline LenPer len_per(const DucciSystem& sys, const ResidueTuple& u) {
  std::vector<ResidueTuple> seen{u};
  while (true) {
    const auto next = step(sys, seen.back());
    for (std::size_t a = 0; a < seen.size(); ++a)
      if (seen[a] == next) return {a, seen.size() - a};
    seen.push_back(next);
  }
}

/// Predecessors by scanning the whole space.
inline std::vector<ResidueTuple> predecessors(const DucciSystem& sys, const ResidueTuple& u) {
  std::vector<ResidueTuple> out;
  for (const auto& v : all_tuples(sys))
    if (step(sys, v) == u) out.push_back(v);
  return out;
}

/// K(Z_m^n) as the stable image D^t(Z_m^n): iterate the image set until it
/// stops shrinking.
inline std::set<ResidueTuple> kernel(const DucciSystem& sys) {
  auto all = all_tuples(sys);
  std::set<ResidueTuple> cur(all.begin(), all.end());
  while (true) {
    std::set<ResidueTuple> next;
    for (const auto& u : cur) next.insert(step(sys, u));
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

/// Exact binomial for small N via the multiplicative formula.
inline std::uint64_t binom_exact(std::uint64_t N, std::uint64_t K) {
  if (K > N) return 0;
  K = std::min(K, N - K);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= K; ++i) r = r * (N - K + i) / i;
  return static_cast<std::uint64_t>(r);
}

/// Pascal's triangle mod 2^bits, rows 0..n_max.
inline std::vector<std::vector<std::uint32_t>> pascal_mod_pow2(std::size_t n_max, unsigned bits) {
  const std::uint32_t mask = (1u << bits) - 1;
  std::vector<std::vector<std::uint32_t>> rows(n_max + 1);
  rows[0] = {1};
  for (std::size_t N = 1; N <= n_max; ++N) {
    rows[N].assign(N + 1, 1);
    for (std::size_t K = 1; K < N; ++K) rows[N][K] = (rows[N - 1][K - 1] + rows[N - 1][K]) & mask;
  }
  return rows;
}

inline ResidueTuple random_tuple(const DucciSystem& sys, std::mt19937_64& rng) {
  std::vector<std::int64_t> e(sys.length());
  for (auto& x : e) x = static_cast<std::int64_t>(rng() % sys.modulus());
  return ResidueTuple(sys, e);
}

}  // namespace oracle
