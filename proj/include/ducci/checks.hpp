#pragma once

/**
 * @file checks.hpp
 * @brief Executable checks for the structural facts about Ducci maps on
 *        Z_m^n and for the length formula on Z_{2^l}^{2^k}.
 *
 * Every check yields one CheckReport per parameter point. A failing report
 * carries the first counterexample in sweep order (smallest parameters, then
 * lexicographically smallest witness). Checks whose hypotheses do not hold
 * for a parameter point report `hypothesis_skip`; points above a state cap
 * report `cap_exceeded`. Neither counts as a failure.
 */

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ducci/binomial.hpp"
#include "ducci/coeff.hpp"
#include "ducci/errors.hpp"
#include "ducci/orbit.hpp"
#include "ducci/system.hpp"

namespace ducci {

using ordered_json = nlohmann::ordered_json;

enum class Verdict { pass, fail, hypothesis_skip, cap_exceeded };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::hypothesis_skip: return "hypothesis_skip";
    case Verdict::cap_exceeded: return "cap_exceeded";
  }
  return "?";
}

struct CheckReport {
  std::string check_id;
  ordered_json parameters = ordered_json::object();
  Verdict verdict = Verdict::pass;
  std::optional<ordered_json> counterexample;
  ordered_json observed;  // check-specific detail, null when there is none
  std::string note;       // reason for a skip or cap verdict
  double elapsed_ms = 0.0;

  bool ok() const { return verdict != Verdict::fail && verdict != Verdict::cap_exceeded; }
};

inline ordered_json to_json(const CheckReport& r, bool with_timing) {
  ordered_json j;
  j["check_id"] = r.check_id;
  j["parameters"] = r.parameters;
  j["verdict"] = to_string(r.verdict);
  j["counterexample"] = r.counterexample ? *r.counterexample : ordered_json(nullptr);
  if (!r.observed.is_null()) j["observed"] = r.observed;
  if (!r.note.empty()) j["note"] = r.note;
  if (with_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

/// Inclusive integer range.
struct IntRange {
  int lo = 1;
  int hi = 1;
};

/// Limits shared by all checks.
struct CheckLimits {
  std::uint64_t state_cap = default_state_cap;
  std::uint64_t orbit_cap = default_orbit_cap;
};

namespace detail {

struct Outcome {
  std::optional<ordered_json> counterexample;
  ordered_json observed;
};

template <class Body>
CheckReport run_check(std::string id, ordered_json params, Body&& body) {
  CheckReport rep;
  rep.check_id = std::move(id);
  rep.parameters = std::move(params);
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome out = body();
    rep.verdict = out.counterexample ? Verdict::fail : Verdict::pass;
    rep.counterexample = std::move(out.counterexample);
    rep.observed = std::move(out.observed);
  } catch (const hypothesis_error& e) {
    rep.verdict = Verdict::hypothesis_skip;
    rep.note = e.what();
  } catch (const cap_exceeded& e) {
    rep.verdict = Verdict::cap_exceeded;
    rep.note = e.what();
  }
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline ordered_json kl(int k, int l) { return ordered_json{{"k", k}, {"l", l}}; }
inline ordered_json mn(const DucciSystem& sys) {
  return ordered_json{{"m", sys.modulus()}, {"n", sys.length()}};
}

inline std::uint64_t pow2(int e) { return std::uint64_t{1} << e; }

/// Entries of every state of a small system, flattened, for allocation-free
/// index arithmetic in exhaustive sweeps.
class DigitTable {
 public:
  DigitTable(const DucciSystem& sys, const std::vector<std::uint64_t>& indices)
      : n_(sys.length()), m_(sys.modulus()), digits_(indices.size() * sys.length()) {
    for (std::size_t k = 0; k < indices.size(); ++k) {
      std::uint64_t idx = indices[k];
      for (std::size_t i = n_; i-- > 0;) {
        digits_[k * n_ + i] = idx % m_;
        idx /= m_;
      }
    }
  }

  /// State index of row a + row b.
  std::uint64_t sum_index(std::size_t a, std::size_t b) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      const residue s = digits_[a * n_ + i] + digits_[b * n_ + i];
      idx = idx * m_ + (s >= m_ ? s - m_ : s);
    }
    return idx;
  }

 private:
  std::size_t n_;
  residue m_;
  std::vector<residue> digits_;
};

/// Size of the subgroup generated by the given states (exact, by cosets).
inline std::uint64_t generated_subgroup_order(const DucciSystem& sys,
                                              const std::vector<std::uint64_t>& gens,
                                              std::uint64_t state_count) {
  std::vector<bool> in(state_count, false);
  std::vector<ResidueTuple> list{zero_tuple(sys)};
  in[0] = true;
  for (auto g_idx : gens) {
    if (in[g_idx]) continue;
    const ResidueTuple g = tuple_at(sys, g_idx);
    const std::size_t base = list.size();
    ResidueTuple x = g;
    while (!in[state_index(sys, x)]) {
      for (std::size_t i = 0; i < base; ++i) {
        auto y = add(sys, list[i], x);
        in[state_index(sys, y)] = true;
        list.push_back(std::move(y));
      }
      x = add(sys, x, g);
    }
  }
  return list.size();
}

inline ordered_json tuples_json(const std::vector<ResidueTuple>& v) {
  auto arr = ordered_json::array();
  for (const auto& t : v) arr.push_back(to_text(t));
  return arr;
}

/// Plain (non-cyclic) Pascal rows mod m up to row r_max.
inline std::vector<std::vector<residue>> pascal_rows(std::uint64_t r_max, residue m) {
  std::vector<std::vector<residue>> rows;
  rows.push_back({1 % m});
  for (std::uint64_t r = 1; r <= r_max; ++r) {
    std::vector<residue> next(r + 1);
    next[0] = next[r] = 1 % m;
    for (std::uint64_t t = 1; t < r; ++t) next[t] = (rows[r - 1][t - 1] + rows[r - 1][t]) % m;
    rows.push_back(std::move(next));
  }
  return rows;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Length formula on Z_{2^l}^{2^k}
// ---------------------------------------------------------------------------

/// L_m(n) = (l+1) 2^(k-1) and P_m(n) = 1 for m = 2^l, n = 2^k.
inline CheckReport check_main_theorem(int k, int l, const CheckLimits& lim = {}) {
  return detail::run_check("main_theorem", detail::kl(k, l), [&] {
    if (k < 1 || l < 1) throw hypothesis_error("needs k >= 1 and l >= 1");
    const auto sys = make_pow2_system(k, l);
    const auto got = basic_len_per(sys, lim.orbit_cap);
    const std::uint64_t want = static_cast<std::uint64_t>(l + 1) * detail::pow2(k - 1);
    detail::Outcome out;
    out.observed = {{"len", got.len}, {"per", got.per}};
    if (got.len != want || got.per != 1)
      out.counterexample = ordered_json{{"expected_len", want}, {"expected_per", 1},
                                        {"len", got.len}, {"per", got.per}};
    return out;
  });
}

inline std::vector<CheckReport> verify_main_theorem(IntRange k, IntRange l,
                                                    const CheckLimits& lim = {}) {
  std::vector<CheckReport> out;
  for (int kk = k.lo; kk <= k.hi; ++kk)
    for (int ll = l.lo; ll <= l.hi; ++ll) out.push_back(check_main_theorem(kk, ll, lim));
  return out;
}

/// D^((l+1) 2^(k-1) - 1)(0, ..., 0, 1) is not yet zero.
inline CheckReport verify_length_lower_bound(int k, int l) {
  return detail::run_check("length_lower_bound", detail::kl(k, l), [&] {
    if (k < 1 || l < 1) throw hypothesis_error("needs k >= 1 and l >= 1");
    const auto sys = make_pow2_system(k, l);
    const std::uint64_t r = static_cast<std::uint64_t>(l + 1) * detail::pow2(k - 1) - 1;
    const auto v = ducci_iter(sys, basic_tuple(sys), r);
    detail::Outcome out;
    out.observed = {{"r", r}, {"state", to_text(v)}};
    if (v.is_zero()) out.counterexample = ordered_json{{"r", r}, {"state", to_text(v)}};
    return out;
  });
}

inline std::vector<CheckReport> verify_length_lower_bound(IntRange k, IntRange l) {
  std::vector<CheckReport> out;
  for (int kk = k.lo; kk <= k.hi; ++kk)
    for (int ll = l.lo; ll <= l.hi; ++ll) out.push_back(verify_length_lower_bound(kk, ll));
  return out;
}

/// D^(l 2^k)(u) = 0 on Z_{2^l}^{2^k}: exhaustive when there are at most 2^16
/// states, otherwise over `samples` seeded random tuples.
inline CheckReport verify_wong_bound(int k, int l, int samples, std::uint64_t seed,
                                     const CheckLimits& lim = {}) {
  ordered_json params = detail::kl(k, l);
  params["samples"] = samples;
  params["seed"] = seed;
  return detail::run_check("wong_bound", params, [&] {
    if (k < 1 || l < 1) throw hypothesis_error("needs k >= 1 and l >= 1");
    if (samples < 1) throw parameter_error("wong_bound needs at least one sample");
    const auto sys = make_pow2_system(k, l);
    const std::uint64_t bound = static_cast<std::uint64_t>(l) * detail::pow2(k);
    detail::Outcome out;

    const auto basic = basic_len_per(sys, lim.orbit_cap);
    const bool exhaustive = static_cast<std::uint64_t>(l) * detail::pow2(k) <= 16;
    std::uint64_t tested = 0;
    std::optional<ResidueTuple> witness;
    auto test = [&](const ResidueTuple& u) {
      ++tested;
      if (!ducci_iter(sys, u, bound).is_zero() && (!witness || u < *witness)) witness = u;
    };
    if (exhaustive) {
      const auto count = *sys.state_count();
      for (std::uint64_t i = 0; i < count && !witness; ++i) test(tuple_at(sys, i));
    } else {
      std::mt19937_64 rng(seed);
      std::vector<std::int64_t> e(sys.length());
      for (int s = 0; s < samples; ++s) {
        for (auto& x : e) x = static_cast<std::int64_t>(rng() % sys.modulus());
        test(ResidueTuple(sys, e));
      }
    }
    out.observed = {{"bound", bound}, {"tested", tested}, {"exhaustive", exhaustive},
                    {"basic_len", basic.len}};
    if (witness)
      out.counterexample = ordered_json{{"tuple", to_text(*witness)},
                                        {"image", to_text(ducci_iter(sys, *witness, bound))}};
    else if (basic.len > bound)
      out.counterexample = ordered_json{{"basic_len", basic.len}, {"bound", bound}};
    return out;
  });
}

inline std::vector<CheckReport> verify_wong_bound(IntRange k, IntRange l, int samples,
                                                  std::uint64_t seed,
                                                  const CheckLimits& lim = {}) {
  std::vector<CheckReport> out;
  for (int kk = k.lo; kk <= k.hi; ++kk)
    for (int ll = l.lo; ll <= l.hi; ++ll)
      out.push_back(verify_wong_bound(kk, ll, samples, seed, lim));
  return out;
}

// ---------------------------------------------------------------------------
// Cycle subgroup and predecessors
// ---------------------------------------------------------------------------

/// K(Z_m^n) is a subgroup, is stable under scaling and shifting, and D
/// permutes it.
inline CheckReport verify_subgroup(const DucciSystem& sys, const CheckLimits& lim = {}) {
  return detail::run_check("subgroup", detail::mn(sys), [&] {
    const auto kernel = kernel_set(sys, lim.state_cap);
    const auto count = *sys.state_count();
    const auto& idx = kernel.indices();
    std::vector<bool> member(count, false);
    for (auto i : idx) member[i] = true;

    detail::Outcome out;
    out.observed = {{"order", kernel.order()}};
    auto fail = [&](const char* law, ordered_json witness) {
      witness["law"] = law;
      out.counterexample = std::move(witness);
      return out;
    };

    if (!member[0]) return fail("identity", {{"missing", to_text(zero_tuple(sys))}});

    for (auto i : idx) {
      const auto u = tuple_at(sys, i);
      const auto neg = negate(sys, u);
      if (!member[state_index(sys, neg)])
        return fail("inverse", {{"u", to_text(u)}, {"missing", to_text(neg)}});
      const auto h = shift(sys, u);
      if (!member[state_index(sys, h)])
        return fail("shift", {{"u", to_text(u)}, {"missing", to_text(h)}});
      for (residue c = 2; c < sys.modulus(); ++c) {
        const auto cu = scale(sys, static_cast<std::int64_t>(c), u);
        if (!member[state_index(sys, cu)])
          return fail("scale", {{"u", to_text(u)}, {"lambda", c}, {"missing", to_text(cu)}});
      }
    }

    // Closure under addition: all pairs when affordable, otherwise compare
    // the order of the generated subgroup and only then hunt for a witness.
    const detail::DigitTable digits(sys, idx);
    const std::uint64_t order = idx.size();
    const bool pairwise = order <= (std::uint64_t{1} << 13);
    const bool closed =
        pairwise || detail::generated_subgroup_order(sys, idx, count) == order;
    if (!closed || pairwise) {
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a; b < idx.size(); ++b)
          if (!member[digits.sum_index(a, b)]) {
            const auto u = tuple_at(sys, idx[a]), v = tuple_at(sys, idx[b]);
            return fail("addition", {{"u", to_text(u)}, {"v", to_text(v)},
                                     {"missing", to_text(add(sys, u, v))}});
          }
    }
    out.observed["closure"] = pairwise ? "pairwise" : "generated_subgroup";

    std::vector<bool> hit(count, false);
    for (auto i : idx) {
      const auto u = tuple_at(sys, i);
      const auto d = ducci_step(sys, u);
      const auto j = state_index(sys, d);
      if (!member[j]) return fail("d_maps_into", {{"u", to_text(u)}, {"image", to_text(d)}});
      if (hit[j]) return fail("d_injective", {{"image", to_text(d)}});
      hit[j] = true;
    }
    return out;
  });
}

/// K(Z_{2^l}^{2^k}) = {0}.
inline CheckReport check_trivial_kernel(int k, int l, const CheckLimits& lim = {}) {
  return detail::run_check("trivial_kernel", detail::kl(k, l), [&] {
    if (k < 1 || l < 1) throw hypothesis_error("needs k >= 1 and l >= 1");
    if (static_cast<std::uint64_t>(l) * detail::pow2(k) >= 64)
      throw cap_exceeded("state count 2^(l*2^k) does not fit the enumeration");
    const auto sys = make_pow2_system(k, l);
    const auto kernel = kernel_set(sys, lim.state_cap);
    detail::Outcome out;
    out.observed = {{"order", kernel.order()}, {"states", *sys.state_count()}};
    for (const auto& u : kernel.members())
      if (!u.is_zero()) {
        out.counterexample = ordered_json{{"member", to_text(u)}};
        break;
      }
    return out;
  });
}

inline std::vector<CheckReport> verify_trivial_kernel(IntRange k, IntRange l,
                                                      const CheckLimits& lim = {}) {
  std::vector<CheckReport> out;
  for (int kk = k.lo; kk <= k.hi; ++kk)
    for (int ll = l.lo; ll <= l.hi; ++ll) out.push_back(check_trivial_kernel(kk, ll, lim));
  return out;
}

/// For even n: every tuple has 0 or exactly m predecessors, and alternating
/// translates (+z, -z, ..., +z, -z) of a predecessor are predecessors.
inline CheckReport verify_predecessor_count(const DucciSystem& sys, const CheckLimits& lim = {}) {
  return detail::run_check("predecessor_count", detail::mn(sys), [&] {
    if (sys.length() % 2 != 0) throw hypothesis_error("predecessor count needs even n");
    const auto count = detail::checked_state_count(sys, lim.state_cap, "predecessor_count");
    detail::Outcome out;
    std::uint64_t with_preds = 0;
    std::vector<std::int64_t> alt(sys.length());
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2 == 0 ? 1 : -1;
    const ResidueTuple alternating(sys, alt);

    for (std::uint64_t i = 0; i < count; ++i) {
      const auto u = tuple_at(sys, i);
      const auto preds = predecessors(sys, u);
      if (!preds.empty()) ++with_preds;
      if (!preds.empty() && preds.size() != sys.modulus()) {
        out.counterexample = ordered_json{{"tuple", to_text(u)}, {"predecessors", preds.size()}};
        return out;
      }
      for (const auto& v : preds)
        for (residue z = 1; z < sys.modulus(); ++z) {
          const auto w = add(sys, v, scale(sys, static_cast<std::int64_t>(z), alternating));
          if (ducci_step(sys, w) != u) {
            out.counterexample = ordered_json{
                {"tuple", to_text(u)}, {"predecessor", to_text(v)}, {"z", z},
                {"translate", to_text(w)}};
            return out;
          }
        }
    }
    out.observed = {{"states", count}, {"with_predecessors", with_preds}};
    return out;
  });
}

/// Len(u) <= L_m(n) and Per(u) | P_m(n) for every u.
inline CheckReport verify_basic_maximality(const DucciSystem& sys, const CheckLimits& lim = {}) {
  return detail::run_check("basic_maximality", detail::mn(sys), [&] {
    const auto count = detail::checked_state_count(sys, lim.state_cap, "basic_maximality");
    const auto basic = basic_len_per(sys, lim.orbit_cap);
    detail::Outcome out;
    out.observed = {{"L", basic.len}, {"P", basic.per}};
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto u = tuple_at(sys, i);
      const auto s = orbit_summary(sys, u, lim.orbit_cap);
      if (s.len > basic.len || basic.per % s.per != 0) {
        out.counterexample = ordered_json{{"tuple", to_text(u)}, {"len", s.len}, {"per", s.per}};
        break;
      }
    }
    return out;
  });
}

/// D is additive and scalar-compatible, commutes with H, equals I + H, and
/// fixes only zero. Pairs are exhaustive up to 2^10 states; beyond that each
/// u is paired with `partners` seeded random tuples.
inline CheckReport verify_endomorphism(const DucciSystem& sys, int partners = 8,
                                       std::uint64_t seed = 0, const CheckLimits& lim = {}) {
  ordered_json params = detail::mn(sys);
  params["seed"] = seed;
  return detail::run_check("endomorphism", params, [&] {
    const auto count = detail::checked_state_count(sys, lim.state_cap, "endomorphism");
    const bool all_pairs = count <= 1024;
    std::mt19937_64 rng(seed);
    detail::Outcome out;
    auto fail = [&](const char* law, ordered_json w) {
      w["law"] = law;
      out.counterexample = std::move(w);
      return out;
    };
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto u = tuple_at(sys, i);
      const auto du = ducci_step(sys, u);
      if (shift(sys, du) != ducci_step(sys, shift(sys, u)))
        return fail("commutes_with_shift", {{"u", to_text(u)}});
      if (du != add(sys, u, shift(sys, u))) return fail("d_equals_i_plus_h", {{"u", to_text(u)}});
      if ((du == u) != u.is_zero()) return fail("unique_fixed_point", {{"u", to_text(u)}});
      for (residue c = 0; c < sys.modulus(); ++c) {
        const auto lc = static_cast<std::int64_t>(c);
        if (ducci_step(sys, scale(sys, lc, u)) != scale(sys, lc, du))
          return fail("scalar", {{"u", to_text(u)}, {"lambda", c}});
      }
      const std::uint64_t rounds = all_pairs ? count - i : static_cast<std::uint64_t>(partners);
      for (std::uint64_t t = 0; t < rounds; ++t) {
        const auto v = tuple_at(sys, all_pairs ? i + t : rng() % count);
        if (ducci_step(sys, add(sys, u, v)) != add(sys, du, ducci_step(sys, v)))
          return fail("additive", {{"u", to_text(u)}, {"v", to_text(v)}});
      }
    }
    out.observed = {{"states", count}, {"pairs", all_pairs ? "exhaustive" : "sampled"}};
    return out;
  });
}

// ---------------------------------------------------------------------------
// Binomial congruences
// ---------------------------------------------------------------------------

inline std::vector<CheckReport> verify_binomial_lemmas(int j) {
  std::vector<CheckReport> out;
  const ordered_json params{{"j", j}};
  const std::uint64_t full = j >= 0 && j < 63 ? detail::pow2(j) : 0;
  auto need_j2 = [&] {
    if (j < 2) throw hypothesis_error("needs j >= 2");
    if (j > 40) throw parameter_error("j above 40 is not supported");
  };

  out.push_back(detail::run_check("binom_middle_mod4", params, [&] {
    need_j2();
    detail::Outcome o;
    const auto v = binom_mod_pow2(full, full / 2, 2);
    o.observed = {{"residue", v}};
    if (v != 2) o.counterexample = ordered_json{{"N", full}, {"K", full / 2}, {"mod4", v}};
    return o;
  }));
  out.push_back(detail::run_check("binom_middle_mod8", params, [&] {
    need_j2();
    detail::Outcome o;
    const auto v = binom_mod_pow2(full, full / 2, 3);
    o.observed = {{"residue", v}};
    if (v != 6) o.counterexample = ordered_json{{"N", full}, {"K", full / 2}, {"mod8", v}};
    return o;
  }));
  out.push_back(detail::run_check("binom_zero_mod4", params, [&] {
    need_j2();
    detail::Outcome o;
    for (std::uint64_t t = 1; t < full; ++t) {
      if (t == full / 2) continue;
      const auto v = binom_mod_pow2(full, t, 2);
      if (v != 0) {
        o.counterexample = ordered_json{{"N", full}, {"t", t}, {"mod4", v}};
        break;
      }
    }
    return o;
  }));
  out.push_back(detail::run_check("binom_row_all_odd", params, [&] {
    if (j < 0 || j > 40) throw hypothesis_error("needs 0 <= j <= 40");
    detail::Outcome o;
    for (std::uint64_t t = 0; t + 1 <= full; ++t) {
      if (binom_mod_pow2(full - 1, t, 1) != 1) {
        o.counterexample = ordered_json{{"N", full - 1}, {"t", t}};
        break;
      }
    }
    return o;
  }));
  out.push_back(detail::run_check("binom_3mod4", params, [&] {
    need_j2();
    detail::Outcome o;
    const auto v = binom_mod_pow2(full - 1, full / 2, 2);
    o.observed = {{"residue", v}};
    if (v != 3) o.counterexample = ordered_json{{"N", full - 1}, {"K", full / 2}, {"mod4", v}};
    return o;
  }));
  return out;
}

/// Cross-checks binom_mod_pow2 against Pascal's rule mod 2^l_max for every
/// N <= n_max and every l <= l_max.
inline CheckReport verify_binomial_pascal(std::uint64_t n_max, int l_max) {
  return detail::run_check("binom_pascal_agreement",
                           ordered_json{{"n_max", n_max}, {"l_max", l_max}}, [&] {
    if (l_max < 1 || l_max > 63) throw parameter_error("l_max must lie in [1, 63]");
    const std::uint64_t mask = detail::low_mask(static_cast<unsigned>(l_max));
    detail::Outcome o;
    std::vector<std::uint64_t> row{1}, next;
    for (std::uint64_t N = 0; N <= n_max; ++N) {
      for (std::uint64_t K = 0; K <= N; ++K)
        for (int l = 1; l <= l_max; ++l) {
          const auto want = row[K] & detail::low_mask(static_cast<unsigned>(l));
          const auto got = binom_mod_pow2(N, K, static_cast<unsigned>(l));
          if (got != want) {
            o.counterexample = ordered_json{{"N", N}, {"K", K}, {"l", l},
                                            {"pascal", want}, {"binom_mod_pow2", got}};
            return o;
          }
        }
      next.assign(N + 2, 1);
      for (std::uint64_t K = 1; K <= N; ++K) next[K] = (row[K - 1] + row[K]) & mask;
      row.swap(next);
    }
    return o;
  });
}

inline std::vector<CheckReport> verify_binomial_lemmas(IntRange j, int l_max,
                                                       std::uint64_t pascal_n_max = 4096) {
  std::vector<CheckReport> out;
  for (int jj = j.lo; jj <= j.hi; ++jj) {
    auto part = verify_binomial_lemmas(jj);
    out.insert(out.end(), part.begin(), part.end());
  }
  out.push_back(verify_binomial_pascal(pascal_n_max, l_max));
  return out;
}

// ---------------------------------------------------------------------------
// Coefficient congruences on n = 2^k, evaluated in a table mod 2^(max l)
// ---------------------------------------------------------------------------

namespace detail {

template <class PointCheck>
std::vector<CheckReport> coefficient_sweep(const char* id, IntRange k, IntRange l,
                                           PointCheck&& point) {
  std::vector<CheckReport> out;
  const int l_top = std::max(l.hi, 1);
  for (int kk = k.lo; kk <= k.hi; ++kk) {
    std::optional<CoeffTable> table;
    for (int ll = l.lo; ll <= l.hi; ++ll)
      out.push_back(run_check(id, kl(kk, ll), [&] {
        if (kk < 1 || kk > 24 || ll < 1 || l_top > 32)
          throw hypothesis_error("needs 1 <= k <= 24 and 1 <= l <= 32");
        if (!table) table.emplace(make_pow2_system(kk, l_top));
        return point(*table, kk, ll);
      }));
  }
  return out;
}

}  // namespace detail

/// a_{l 2^(k-1), s} + a_{l 2^(k-1), s - 2^(k-1)} == 0 mod 2^l for all s.
inline std::vector<CheckReport> verify_coeff_sum_lemma1(IntRange k, IntRange l) {
  return detail::coefficient_sweep("coeff_sum_lemma1", k, l,
                                   [](CoeffTable& t, int kk, int ll) {
    detail::Outcome o;
    const std::uint64_t mask = detail::pow2(ll) - 1;
    const std::int64_t half = static_cast<std::int64_t>(detail::pow2(kk - 1));
    const std::uint64_t r = static_cast<std::uint64_t>(ll) * detail::pow2(kk - 1);
    for (std::int64_t s = 1; s <= 2 * half; ++s) {
      const auto a = t.at(r, s), b = t.at(r, s - half);
      if (((a + b) & mask) != 0) {
        o.counterexample = ordered_json{{"r", r}, {"s", s}, {"a_rs", a & mask},
                                        {"a_r_s_minus_half", b & mask}};
        break;
      }
    }
    return o;
  });
}

/// For l >= 3, k >= 2:
/// a_{(l-1)2^(k-1), l 2^(k-2)+1} + a_{(l-1)2^(k-1), l 2^(k-2) - 2^(k-1) + 1} == 0 mod 2^l.
inline std::vector<CheckReport> verify_coeff_sum_lemma2(IntRange k, IntRange l) {
  return detail::coefficient_sweep("coeff_sum_lemma2", k, l,
                                   [](CoeffTable& t, int kk, int ll) {
    if (ll < 3) throw hypothesis_error("needs l >= 3");
    if (kk < 2) throw hypothesis_error("needs k >= 2");
    detail::Outcome o;
    const std::uint64_t mask = detail::pow2(ll) - 1;
    const std::uint64_t r = static_cast<std::uint64_t>(ll - 1) * detail::pow2(kk - 1);
    const std::int64_t s1 = ll * static_cast<std::int64_t>(detail::pow2(kk - 2)) + 1;
    const std::int64_t s2 = s1 - static_cast<std::int64_t>(detail::pow2(kk - 1));
    const auto a = t.at(r, s1) & mask, b = t.at(r, s2) & mask;
    o.observed = {{"r", r}, {"s1", normalize_column(s1, t.system().length())},
                  {"s2", normalize_column(s2, t.system().length())}, {"a1", a}, {"a2", b}};
    if (((a + b) & mask) != 0) o.counterexample = o.observed;
    return o;
  });
}

/// g(l, l, 1) == 2^(l-1) mod 2^l for l >= 2 (k >= 2).
inline std::vector<CheckReport> verify_claim_g(IntRange k, IntRange l) {
  return detail::coefficient_sweep("claim_g", k, l, [](CoeffTable& t, int kk, int ll) {
    if (ll < 2) throw hypothesis_error("needs l >= 2");
    if (kk < 2) throw hypothesis_error("needs k >= 2");
    detail::Outcome o;
    const std::uint64_t mask = detail::pow2(ll) - 1;
    const auto v = coeff_view(t, CoeffView::g(ll, ll, 1)) & mask;
    o.observed = {{"g", v}};
    if (v != detail::pow2(ll - 1)) o.counterexample = ordered_json{{"g", v}, {"expected", detail::pow2(ll - 1)}};
    return o;
  });
}

// ---------------------------------------------------------------------------
// Identities of the coefficient table for arbitrary m, n
// ---------------------------------------------------------------------------

/// Expansion agrees with iteration, binomial form below row n, the row-n
/// values, convolution, symmetry a_{r,s} = a_{r,r-s+2}, and (n = 2^k) the
/// half-period column identity, for all rows up to r_max (default 2 L_m(n)).
inline CheckReport verify_coeff_identities(const DucciSystem& sys,
                                           std::optional<std::uint64_t> r_max_opt = {},
                                           const CheckLimits& lim = {}) {
  ordered_json params = detail::mn(sys);
  return detail::run_check("coeff_identities", params, [&] {
    const auto n = sys.length();
    const auto m = sys.modulus();
    const std::uint64_t r_max = r_max_opt ? *r_max_opt : 2 * basic_len_per(sys, lim.orbit_cap).len;
    CoeffTable table(sys);
    table.extend_to(2 * r_max + n);
    detail::Outcome out;
    out.observed = {{"r_max", r_max}};
    auto fail = [&](const char* law, ordered_json w) {
      w["law"] = law;
      out.counterexample = std::move(w);
      return out;
    };

    // expansion vs stepping: every state when there are at most 2^12,
    // otherwise the basic tuple and its shifts
    std::vector<ResidueTuple> starts;
    const auto count = sys.state_count();
    if (count && *count <= 4096) {
      for (std::uint64_t i = 0; i < *count; ++i) starts.push_back(tuple_at(sys, i));
    } else {
      auto b = basic_tuple(sys);
      for (std::size_t i = 0; i < n; ++i, b = shift(sys, b)) starts.push_back(b);
    }
    for (const auto& u : starts) {
      ResidueTuple cur = u;
      for (std::uint64_t r = 0; r <= r_max; ++r, cur = ducci_step(sys, cur))
        if (apply_coeff_expansion(table, u, r) != cur)
          return fail("expansion_matches_iteration", {{"u", to_text(u)}, {"r", r}});
    }

    const auto pascal = detail::pascal_rows(n, m);
    for (std::uint64_t r = 0; r < n; ++r)
      for (std::size_t s = 1; s <= n; ++s) {
        const residue want = s - 1 <= r ? pascal[r][s - 1] : 0;
        if (table.at(r, static_cast<std::int64_t>(s)) != want)
          return fail("binomial_form", {{"r", r}, {"s", s}});
      }
    for (std::size_t s = 1; s <= n; ++s) {
      const residue want = s == 1 ? 2 % m : pascal[n][s - 1];
      if (table.at(n, static_cast<std::int64_t>(s)) != want)
        return fail("row_n", {{"s", s}});
    }

    for (std::uint64_t r = 0; r <= r_max; ++r)
      for (std::int64_t s = 1; s <= static_cast<std::int64_t>(n); ++s) {
        if (table.at(r, s) != table.at(r, static_cast<std::int64_t>(r) - s + 2))
          return fail("symmetry", {{"r", r}, {"s", s}});
        if (sys.length_log2() && n >= 2) {
          const auto half = static_cast<std::int64_t>(n / 2);
          if (table.at(r, s + half) != table.at(r, s - half))
            return fail("half_period", {{"r", r}, {"s", s}});
        }
      }

    for (std::uint64_t r = 0; r <= r_max; ++r)
      for (std::uint64_t t = 1; t <= r_max; ++t)
        for (std::int64_t s = 1; s <= static_cast<std::int64_t>(n); ++s) {
          residue acc = 0;
          for (std::int64_t i = 1; i <= static_cast<std::int64_t>(n); ++i)
            acc = (acc + table.at(t, i) * table.at(r, s - i + 1)) % m;
          if (acc != table.at(r + t, s))
            return fail("convolution", {{"r", r}, {"t", t}, {"s", s}});
        }
    return out;
  });
}

// ---------------------------------------------------------------------------
// Known values of L_2(n)
// ---------------------------------------------------------------------------

/// L_2(n) = 2^v where 2^v is the largest power of 2 dividing n.
inline CheckReport check_known_L2(int n, const CheckLimits& lim = {}) {
  return detail::run_check("known_L2", ordered_json{{"n", n}}, [&] {
    const auto sys = make_system(2, n);
    const auto got = basic_len_per(sys, lim.orbit_cap);
    const std::uint64_t want = std::uint64_t{1} << std::countr_zero(static_cast<unsigned>(n));
    detail::Outcome o;
    o.observed = {{"len", got.len}, {"per", got.per}};
    if (got.len != want) o.counterexample = ordered_json{{"len", got.len}, {"expected", want}};
    return o;
  });
}

inline std::vector<CheckReport> verify_known_L2(int n_max, const CheckLimits& lim = {}) {
  std::vector<CheckReport> out;
  for (int n = 1; n <= n_max; ++n) out.push_back(check_known_L2(n, lim));
  return out;
}

// ---------------------------------------------------------------------------
// Running and summarizing
// ---------------------------------------------------------------------------

/// Orders reports by check id, then parameters.
inline void sort_reports(std::vector<CheckReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const CheckReport& a, const CheckReport& b) {
    if (a.check_id != b.check_id) return a.check_id < b.check_id;
    return a.parameters < b.parameters;
  });
}

using CheckJob = std::function<std::vector<CheckReport>()>;

/// Runs independent jobs on up to `threads` workers and returns the sorted
/// union of their reports.
inline std::vector<CheckReport> run_jobs(const std::vector<CheckJob>& jobs, unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<CheckReport> all;
  std::vector<std::future<std::vector<CheckReport>>> pending;
  auto drain = [&] {
    for (auto& f : pending) {
      auto part = f.get();
      all.insert(all.end(), part.begin(), part.end());
    }
    pending.clear();
  };
  for (const auto& job : jobs) {
    if (threads == 1) {
      auto part = job();
      all.insert(all.end(), part.begin(), part.end());
      continue;
    }
    pending.push_back(std::async(std::launch::async, job));
    if (pending.size() >= threads) drain();
  }
  drain();
  sort_reports(all);
  return all;
}

struct SummaryRow {
  std::string check_id;
  std::size_t pass = 0, fail = 0, skip = 0, cap = 0;
  double worst_ms = 0.0;
};

inline std::vector<SummaryRow> summarize(const std::vector<CheckReport>& reports) {
  std::map<std::string, SummaryRow> rows;
  for (const auto& r : reports) {
    auto& row = rows[r.check_id];
    row.check_id = r.check_id;
    switch (r.verdict) {
      case Verdict::pass: ++row.pass; break;
      case Verdict::fail: ++row.fail; break;
      case Verdict::hypothesis_skip: ++row.skip; break;
      case Verdict::cap_exceeded: ++row.cap; break;
    }
    row.worst_ms = std::max(row.worst_ms, r.elapsed_ms);
  }
  std::vector<SummaryRow> out;
  for (auto& [id, row] : rows) out.push_back(row);
  return out;
}

/// Aligned text table; the timing column appears only when requested.
inline std::string summary_table(const std::vector<CheckReport>& reports, bool with_timing) {
  const auto rows = summarize(reports);
  std::size_t w = 8;
  for (const auto& r : rows) w = std::max(w, r.check_id.size());
  std::ostringstream os;
  auto pad = [](std::string s, std::size_t width, bool left) {
    if (s.size() < width) {
      const std::string fill(width - s.size(), ' ');
      s = left ? s + fill : fill + s;
    }
    return s;
  };
  os << pad("check_id", w, true) << "  " << pad("pass", 6, false) << "  " << pad("fail", 6, false)
     << "  " << pad("skip", 6, false) << "  " << pad("cap", 6, false);
  if (with_timing) os << "  " << pad("worst_ms", 10, false);
  os << '\n';
  for (const auto& r : rows) {
    os << pad(r.check_id, w, true) << "  " << pad(std::to_string(r.pass), 6, false) << "  "
       << pad(std::to_string(r.fail), 6, false) << "  " << pad(std::to_string(r.skip), 6, false)
       << "  " << pad(std::to_string(r.cap), 6, false);
    if (with_timing) {
      std::ostringstream ms;
      ms.setf(std::ios::fixed);
      ms.precision(3);
      ms << r.worst_ms;
      os << "  " << pad(ms.str(), 10, false);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace ducci
