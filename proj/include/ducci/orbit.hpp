#pragma once

/**
 * @file orbit.hpp
 * @brief Orbit analytics on Z_m^n: pre-period, period, vanishing,
 *        predecessors and the cycle subgroup K(Z_m^n).
 *
 * Len(u) is the smallest a for which D^(a+b)(u) = D^a(u) for some b >= 1,
 * and Per(u) is the smallest such b. Both are computed exactly by recording
 * the first visit index of every state on the orbit.
 */

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ducci/errors.hpp"
#include "ducci/system.hpp"

namespace ducci {

inline constexpr std::uint64_t default_orbit_cap = std::uint64_t{1} << 24;
inline constexpr std::uint64_t default_state_cap = std::uint64_t{1} << 20;

struct TupleHash {
  std::size_t operator()(const ResidueTuple& u) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : u.entries()) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

struct OrbitSummary {
  std::uint64_t len = 0;
  std::uint64_t per = 1;
  std::vector<ResidueTuple> tail;   // D^0(u) .. D^(len-1)(u)
  std::vector<ResidueTuple> cycle;  // D^len(u) .. D^(len+per-1)(u)

  bool vanishes() const { return per == 1 && cycle.front().is_zero(); }
};

struct LenPer {
  std::uint64_t len = 0;
  std::uint64_t per = 1;
  friend bool operator==(const LenPer&, const LenPer&) = default;
};

/// Exact orbit decomposition. Throws cap_exceeded once more than
/// `max_visited` distinct states have been recorded.
inline OrbitSummary orbit_summary(const DucciSystem& sys, const ResidueTuple& u,
                                  std::uint64_t max_visited = default_orbit_cap) {
  require_member(sys, u);
  std::unordered_map<ResidueTuple, std::uint64_t, TupleHash> first_visit;
  std::vector<ResidueTuple> states;
  ResidueTuple cur = u;
  while (true) {
    auto [it, inserted] = first_visit.try_emplace(cur, states.size());
    if (!inserted) {
      const std::uint64_t start = it->second;
      OrbitSummary out;
      out.len = start;
      out.per = states.size() - start;
      out.tail.assign(states.begin(), states.begin() + static_cast<std::ptrdiff_t>(start));
      out.cycle.assign(states.begin() + static_cast<std::ptrdiff_t>(start), states.end());
      return out;
    }
    if (states.size() >= max_visited)
      throw cap_exceeded("orbit visited more than " + std::to_string(max_visited) +
                         " states");
    states.push_back(cur);
    cur = ducci_step(sys, cur);
  }
}

/// Brent's cycle finding followed by a tail walk. Constant memory; meant for
/// orbits too long to record. `max_steps` bounds the total number of D
/// evaluations.
inline LenPer brent_len_per(const DucciSystem& sys, const ResidueTuple& u,
                            std::uint64_t max_steps = std::uint64_t{1} << 40) {
  require_member(sys, u);
  std::uint64_t steps = 0;
  auto advance = [&](const ResidueTuple& x) {
    if (++steps > max_steps)
      throw cap_exceeded("Brent search exceeded " + std::to_string(max_steps) + " steps");
    return ducci_step(sys, x);
  };

  std::uint64_t power = 1, lambda = 1;
  ResidueTuple tortoise = u;
  ResidueTuple hare = advance(u);
  while (tortoise != hare) {
    if (power == lambda) {
      tortoise = hare;
      power *= 2;
      lambda = 0;
    }
    hare = advance(hare);
    ++lambda;
  }

  tortoise = u;
  hare = u;
  for (std::uint64_t i = 0; i < lambda; ++i) hare = advance(hare);
  std::uint64_t mu = 0;
  while (tortoise != hare) {
    tortoise = advance(tortoise);
    hare = advance(hare);
    ++mu;
  }
  return {mu, lambda};
}

/// (L_m(n), P_m(n)): Len and Per of the basic sequence.
inline LenPer basic_len_per(const DucciSystem& sys,
                            std::uint64_t max_visited = default_orbit_cap) {
  const auto s = orbit_summary(sys, basic_tuple(sys), max_visited);
  return {s.len, s.per};
}

inline bool vanishes(const DucciSystem& sys, const ResidueTuple& u,
                     std::uint64_t max_visited = default_orbit_cap) {
  return orbit_summary(sys, u, max_visited).vanishes();
}

/// All v with D(v) = u, ordered by first entry. Each candidate first entry
/// determines the rest of v; the wrap-around entry decides acceptance.
inline std::vector<ResidueTuple> predecessors(const DucciSystem& sys, const ResidueTuple& u) {
  require_member(sys, u);
  const auto n = sys.length();
  const auto m = sys.modulus();
  std::vector<ResidueTuple> out;
  std::vector<residue> y(n);
  for (residue first = 0; first < m; ++first) {
    y[0] = first;
    for (std::size_t i = 0; i + 1 < n; ++i) y[i + 1] = (u[i] + m - y[i]) % m;
    if ((y[n - 1] + y[0]) % m == u[n - 1]) out.push_back(detail::from_reduced(sys, y));
  }
  return out;
}

namespace detail {

inline std::uint64_t checked_state_count(const DucciSystem& sys, std::uint64_t cap,
                                         const char* what) {
  const auto count = sys.state_count();
  if (!count || *count > cap)
    throw cap_exceeded(std::string(what) + ": Z_" + std::to_string(sys.modulus()) + "^" +
                       std::to_string(sys.length()) + " has more than " +
                       std::to_string(cap) + " states");
  return *count;
}

/// succ[i] = index of D(tuple_at(i)), computed digit-wise on the base-m index.
inline std::vector<std::uint64_t> successor_table(const DucciSystem& sys, std::uint64_t cap,
                                                  const char* what) {
  const std::uint64_t count = checked_state_count(sys, cap, what);
  const auto n = sys.length();
  const auto m = sys.modulus();
  std::vector<std::uint64_t> succ(count);
  std::vector<residue> digits(n, 0);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t image = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const residue s = digits[i] + digits[i + 1 == n ? 0 : i + 1];
      image = image * m + (s >= m ? s - m : s);
    }
    succ[idx] = image;
    // increment the base-m counter, least significant digit last
    for (std::size_t i = n; i-- > 0;) {
      if (++digits[i] < m) break;
      digits[i] = 0;
    }
  }
  return succ;
}

/// Marks the states that survive repeated deletion of in-degree-zero nodes.
inline std::vector<bool> cycle_states(const std::vector<std::uint64_t>& succ) {
  std::vector<std::uint32_t> indegree(succ.size(), 0);
  for (auto t : succ) ++indegree[t];
  std::vector<bool> alive(succ.size(), true);
  std::vector<std::uint64_t> stack;
  for (std::uint64_t i = 0; i < succ.size(); ++i)
    if (indegree[i] == 0) stack.push_back(i);
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    alive[v] = false;
    if (--indegree[succ[v]] == 0) stack.push_back(succ[v]);
  }
  return alive;
}

}  // namespace detail

/// K(Z_m^n): every state lying on some Ducci cycle.
class KernelSet {
 public:
  KernelSet(DucciSystem sys, std::vector<std::uint64_t> sorted_indices)
      : sys_(sys), indices_(std::move(sorted_indices)) {}

  const DucciSystem& system() const noexcept { return sys_; }
  std::uint64_t order() const noexcept { return indices_.size(); }
  const std::vector<std::uint64_t>& indices() const noexcept { return indices_; }

  bool contains(const ResidueTuple& u) const {
    return std::binary_search(indices_.begin(), indices_.end(), state_index(sys_, u));
  }

  /// Members in lexicographic order.
  std::vector<ResidueTuple> members() const {
    std::vector<ResidueTuple> out;
    out.reserve(indices_.size());
    for (auto i : indices_) out.push_back(tuple_at(sys_, i));
    return out;
  }

 private:
  DucciSystem sys_;
  std::vector<std::uint64_t> indices_;
};

inline KernelSet kernel_set(const DucciSystem& sys,
                            std::uint64_t max_states = default_state_cap) {
  const auto succ = detail::successor_table(sys, max_states, "kernel_set");
  const auto alive = detail::cycle_states(succ);
  std::vector<std::uint64_t> members;
  for (std::uint64_t i = 0; i < alive.size(); ++i)
    if (alive[i]) members.push_back(i);
  return KernelSet(sys, std::move(members));
}

inline nlohmann::ordered_json to_json(const OrbitSummary& s) {
  auto tuples = [](const std::vector<ResidueTuple>& v) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& t : v)
      arr.push_back(std::vector<residue>(t.entries().begin(), t.entries().end()));
    return arr;
  };
  nlohmann::ordered_json j;
  j["len"] = s.len;
  j["per"] = s.per;
  j["tail"] = tuples(s.tail);
  j["cycle"] = tuples(s.cycle);
  return j;
}

inline nlohmann::json to_json(const KernelSet& k) {
  auto arr = nlohmann::json::array();
  for (const auto& t : k.members()) arr.push_back(to_json(t));
  return arr;
}

}  // namespace ducci
