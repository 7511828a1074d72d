#pragma once

/**
 * @file cli.hpp
 * @brief The `ducci` command line: one subcommand per capability.
 *
 * Exit codes: 0 success (or every check passed/skipped), 1 a check failed,
 * 2 usage error, 3 a state cap was exceeded.
 */

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ducci/binomial.hpp"
#include "ducci/checks.hpp"
#include "ducci/coeff.hpp"
#include "ducci/errors.hpp"
#include "ducci/graph.hpp"
#include "ducci/orbit.hpp"
#include "ducci/system.hpp"

namespace ducci::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage = 2, cap = 3 };

inline constexpr const char* synopsis =
    "usage: ducci <step|orbit|basic|preds|kernel|coeff|binom|graph|verify> [options]\n"
    "       ducci <command> --help for the options of one command\n";

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

struct SystemFlags {
  std::optional<std::int64_t> m, n, k, l;

  void attach(CLI::App* app) {
    app->add_option("--m", m, "modulus m >= 2");
    app->add_option("--n", n, "tuple length n >= 1");
    app->add_option("--k", k, "shorthand: n = 2^k");
    app->add_option("--l", l, "shorthand: m = 2^l");
  }

  bool given() const { return m || n || k || l; }

  DucciSystem resolve() const {
    const bool direct = m || n;
    const bool pow2 = k || l;
    if (direct && pow2) throw usage_error("give either --m/--n or --k/--l, not both");
    if (direct) {
      if (!m || !n) throw usage_error("--m and --n must be given together");
      return make_system(*m, *n);
    }
    if (pow2) {
      if (!k || !l) throw usage_error("--k and --l must be given together");
      if (*k < 0 || *l < 1) throw usage_error("--k must be >= 0 and --l >= 1");
      return make_pow2_system(static_cast<unsigned>(*k), static_cast<unsigned>(*l));
    }
    throw usage_error("a system is required: --m M --n N or --k K --l L");
  }
};

inline void require_format(const std::string& format, std::initializer_list<const char*> allowed,
                           const char* command) {
  for (const char* a : allowed)
    if (format == a) return;
  std::string list;
  for (const char* a : allowed) list += list.empty() ? a : std::string("|") + a;
  throw usage_error(std::string("format '") + format + "' is not valid for " + command +
                    " (use " + list + ")");
}

inline ResidueTuple read_tuple(const DucciSystem& sys, const std::string& text, std::ostream& err) {
  auto parsed = parse_tuple(sys, text);
  if (parsed.reduced)
    err << "warning: tuple " << text << " reduced mod " << sys.modulus() << " to "
        << to_text(parsed.tuple) << '\n';
  return std::move(parsed.tuple);
}

inline void print_tuples(std::ostream& os, const std::vector<ResidueTuple>& v,
                         const std::string& format) {
  if (format == "json") {
    auto arr = nlohmann::json::array();
    for (const auto& t : v) arr.push_back(to_json(t));
    os << arr.dump() << '\n';
  } else {
    for (const auto& t : v) os << to_text(t) << '\n';
  }
}

struct VerifyFlags {
  std::string check = "all";
  int k_min = 1, k_max = 5, l_min = 1, l_max = 6;
  int j_min = 2, j_max = 16;
  int n_max = 16;
  int samples = 100;
  std::uint64_t seed = 0;
  int binom_l_max = 8;
  std::uint64_t pascal_n_max = 4096;
  unsigned threads = 1;
  bool timing = false;
};

inline const std::vector<std::string>& verify_names() {
  static const std::vector<std::string> names = {
      "all",  "main", "lower-bound", "wong",   "trivial-kernel", "subgroup",
      "preds", "maximality", "endomorphism", "coeff", "binom", "lemma1",
      "lemma2", "claim", "known-l2"};
  return names;
}

/// Systems used by `verify all` for the structural checks: m in 2..6,
/// n in 1..8, at most 2^12 states.
inline std::vector<DucciSystem> structure_systems() {
  std::vector<DucciSystem> out;
  for (int m = 2; m <= 6; ++m)
    for (int n = 1; n <= 8; ++n) {
      DucciSystem sys(m, n);
      if (*sys.state_count() <= 4096) out.push_back(sys);
    }
  return out;
}

inline std::vector<CheckJob> plan_checks(const VerifyFlags& f, const SystemFlags& sf,
                                         const CheckLimits& lim) {
  IntRange k{f.k_min, f.k_max}, l{f.l_min, f.l_max};
  const IntRange j{f.j_min, f.j_max};
  if (sf.k || sf.l) {
    sf.resolve();  // validates the pair
    k = {static_cast<int>(*sf.k), static_cast<int>(*sf.k)};
    l = {static_cast<int>(*sf.l), static_cast<int>(*sf.l)};
  }
  const bool all = f.check == "all";
  std::vector<CheckJob> jobs;

  std::vector<DucciSystem> systems;
  const bool structural = all || f.check == "subgroup" || f.check == "preds" ||
                          f.check == "maximality" || f.check == "endomorphism" ||
                          f.check == "coeff";
  if (structural) {
    if (sf.given())
      systems.push_back(sf.resolve());
    else if (all)
      systems = structure_systems();
    else
      throw usage_error("verify " + f.check + " needs a system (--m/--n or --k/--l)");
  }
  auto per_system = [&](auto check) {
    for (const auto& sys : systems)
      jobs.push_back([sys, check, lim] { return std::vector<CheckReport>{check(sys, lim)}; });
  };

  if (all || f.check == "main")
    jobs.push_back([=] { return verify_main_theorem(k, l, lim); });
  if (all || f.check == "lower-bound")
    jobs.push_back([=] { return verify_length_lower_bound(k, l); });
  if (all || f.check == "wong")
    jobs.push_back([=] { return verify_wong_bound(k, l, f.samples, f.seed, lim); });
  if (all || f.check == "trivial-kernel")
    jobs.push_back([=] {
      if (!all) return verify_trivial_kernel(k, l, lim);
      // keep the default sweep inside the enumeration cap
      std::vector<CheckReport> out;
      for (int kk = k.lo; kk <= k.hi; ++kk)
        for (int ll = l.lo; ll <= l.hi; ++ll)
          if ((static_cast<std::uint64_t>(ll) << kk) < 64 &&
              (std::uint64_t{1} << (static_cast<std::uint64_t>(ll) << kk)) <= lim.state_cap)
            out.push_back(check_trivial_kernel(kk, ll, lim));
      return out;
    });
  if (all || f.check == "subgroup")
    per_system([](const DucciSystem& s, const CheckLimits& c) { return verify_subgroup(s, c); });
  if (all || f.check == "preds")
    per_system([](const DucciSystem& s, const CheckLimits& c) {
      return verify_predecessor_count(s, c);
    });
  if (all || f.check == "maximality")
    per_system([](const DucciSystem& s, const CheckLimits& c) {
      return verify_basic_maximality(s, c);
    });
  if (all || f.check == "endomorphism") {
    const auto seed = f.seed;
    per_system([seed](const DucciSystem& s, const CheckLimits& c) {
      return verify_endomorphism(s, 8, seed, c);
    });
  }
  if (all || f.check == "coeff")
    per_system([](const DucciSystem& s, const CheckLimits& c) {
      return verify_coeff_identities(s, std::nullopt, c);
    });
  if (all || f.check == "binom")
    jobs.push_back([=] { return verify_binomial_lemmas(j, f.binom_l_max, f.pascal_n_max); });
  if (all || f.check == "lemma1") jobs.push_back([=] { return verify_coeff_sum_lemma1(k, l); });
  if (all || f.check == "lemma2") jobs.push_back([=] { return verify_coeff_sum_lemma2(k, l); });
  if (all || f.check == "claim") jobs.push_back([=] { return verify_claim_g(k, l); });
  if (all || f.check == "known-l2")
    jobs.push_back([=] { return verify_known_L2(f.n_max, lim); });
  return jobs;
}

}  // namespace detail

/// Runs one invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ducci dynamics on Z_m^n", "ducci"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every command");

  detail::SystemFlags sys_flags;
  std::string format;
  std::map<std::string, std::string> formats;  // per subcommand, node-stable
  std::string output;
  CheckLimits limits;
  std::string tuple_text;

  auto common = [&](CLI::App* sub, const char* default_format) {
    sys_flags.attach(sub);
    sub->add_option("--format", formats[sub->get_name()], "output format")->default_val(default_format);
    sub->add_option("--output,-o", output, "write to this file instead of standard output");
    sub->add_option("--state-cap", limits.state_cap, "max states for full enumerations")
        ->default_val(default_state_cap);
    sub->add_option("--orbit-cap", limits.orbit_cap, "max visited states per orbit")
        ->default_val(default_orbit_cap);
  };

  // step
  auto* step = app.add_subcommand("step", "apply D, D^r, H, +, scalar or the coefficient expansion");
  common(step, "text");
  std::string op = "ducci";
  std::uint64_t r_iter = 1;
  std::string other_text;
  std::int64_t lambda = 1;
  step->add_option("--tuple", tuple_text, "input tuple, e.g. \"(3,1,3)\"")->required();
  step->add_option("--op", op, "ducci|shift|add|scale|expand")
      ->check(CLI::IsMember({"ducci", "shift", "add", "scale", "expand"}));
  step->add_option("--r", r_iter, "iteration count for ducci/expand");
  step->add_option("--other", other_text, "second tuple for --op add");
  step->add_option("--lambda", lambda, "scalar for --op scale");

  // orbit
  auto* orbit = app.add_subcommand("orbit", "Len, Per, tail and cycle of one tuple");
  common(orbit, "json");
  bool use_brent = false;
  orbit->add_option("--tuple", tuple_text, "input tuple")->required();
  orbit->add_flag("--brent", use_brent, "constant-memory Len/Per only");

  // basic
  auto* basic = app.add_subcommand("basic", "L_m(n) and P_m(n) of (0,...,0,1)");
  common(basic, "json");

  // preds
  auto* preds = app.add_subcommand("preds", "all predecessors of a tuple");
  common(preds, "json");
  preds->add_option("--tuple", tuple_text, "input tuple")->required();

  // kernel
  auto* kernel = app.add_subcommand("kernel", "the cycle subgroup K(Z_m^n)");
  common(kernel, "json");

  // coeff
  auto* coeff = app.add_subcommand("coeff", "table, cell or f/g/h view of a_{r,s} mod m");
  common(coeff, "csv");
  std::optional<std::uint64_t> r_max, r_cell;
  std::optional<std::int64_t> s_cell;
  std::string view_kind;
  std::int64_t gamma = 0, epsilon = 0, delta = 1;
  coeff->add_option("--r-max", r_max, "emit rows 0..r-max as CSV");
  coeff->add_option("--r", r_cell, "row of a single cell");
  coeff->add_option("--s", s_cell, "column of a single cell (any integer, taken cyclically)");
  coeff->add_option("--view", view_kind, "f|g|h")->check(CLI::IsMember({"f", "g", "h"}));
  coeff->add_option("--gamma", gamma, "view parameter gamma");
  coeff->add_option("--epsilon", epsilon, "view parameter epsilon (g only)");
  coeff->add_option("--delta", delta, "view parameter delta");

  // binom
  auto* binom = app.add_subcommand("binom", "C(N, K) mod 2^l");
  binom->add_option("--format", formats["binom"], "text|json")->default_val("text");
  binom->add_option("--output,-o", output, "output file");
  std::uint64_t big_n = 0, big_k = 0;
  unsigned binom_l = 1;
  binom->add_option("--N", big_n, "N >= 0")->required();
  binom->add_option("--K", big_k, "0 <= K <= N")->required();
  binom->add_option("--l", binom_l, "exponent l, 1..63")->required();

  // graph
  auto* graph = app.add_subcommand("graph", "transition graph as DOT, CSV edge list or summary");
  common(graph, "dot");
  graph->add_option("--component", tuple_text, "restrict to the weak component of this tuple");

  // verify
  auto* verify = app.add_subcommand("verify", "run checks and print JSON-lines reports");
  detail::VerifyFlags vf;
  verify->add_option("check", vf.check, "which check (default all)")
      ->check(CLI::IsMember(detail::verify_names()));
  sys_flags.attach(verify);
  verify->add_option("--format", formats["verify"], "json|text")->default_val("json");
  verify->add_option("--output,-o", output, "output file");
  verify->add_option("--state-cap", limits.state_cap, "max states")->default_val(default_state_cap);
  verify->add_option("--orbit-cap", limits.orbit_cap, "max orbit states")
      ->default_val(default_orbit_cap);
  verify->add_option("--k-min", vf.k_min)->default_val(1);
  verify->add_option("--k-max", vf.k_max)->default_val(5);
  verify->add_option("--l-min", vf.l_min)->default_val(1);
  verify->add_option("--l-max", vf.l_max)->default_val(6);
  verify->add_option("--j-min", vf.j_min)->default_val(2);
  verify->add_option("--j-max", vf.j_max)->default_val(16);
  verify->add_option("--n-max", vf.n_max)->default_val(16);
  verify->add_option("--samples", vf.samples)->default_val(100);
  verify->add_option("--seed", vf.seed)->default_val(0);
  verify->add_option("--binom-l-max", vf.binom_l_max, "exponent bound of the Pascal cross-check")
      ->default_val(8);
  verify->add_option("--pascal-n-max", vf.pascal_n_max, "row bound of the Pascal cross-check")
      ->default_val(4096);
  verify->add_option("--threads", vf.threads, "worker threads (0 = all cores)")->default_val(1);
  verify->add_flag("--timing", vf.timing, "include elapsed times");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ExitCode::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ExitCode::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << synopsis;
    return ExitCode::usage;
  }

  format = formats[app.get_subcommands().front()->get_name()];

  std::ostringstream buf;
  int code = ExitCode::ok;
  try {
    if (step->parsed()) {
      detail::require_format(format, {"text", "json"}, "step");
      const auto sys = sys_flags.resolve();
      const auto u = detail::read_tuple(sys, tuple_text, err);
      ResidueTuple res;
      if (op == "ducci") {
        res = ducci_iter(sys, u, r_iter);
      } else if (op == "shift") {
        res = shift(sys, u);
      } else if (op == "add") {
        if (other_text.empty()) throw usage_error("--op add needs --other");
        res = add(sys, u, detail::read_tuple(sys, other_text, err));
      } else if (op == "scale") {
        res = scale(sys, lambda, u);
      } else {
        res = apply_coeff_expansion(sys, u, r_iter);
      }
      if (format == "json")
        buf << to_json(res).dump() << '\n';
      else
        buf << to_text(res) << '\n';
    } else if (orbit->parsed()) {
      detail::require_format(format, {"json", "text"}, "orbit");
      const auto sys = sys_flags.resolve();
      const auto u = detail::read_tuple(sys, tuple_text, err);
      if (use_brent) {
        const auto lp = brent_len_per(sys, u);
        if (format == "json")
          buf << nlohmann::ordered_json{{"len", lp.len}, {"per", lp.per}}.dump() << '\n';
        else
          buf << "len " << lp.len << "\nper " << lp.per << '\n';
      } else {
        const auto s = orbit_summary(sys, u, limits.orbit_cap);
        if (format == "json") {
          buf << to_json(s).dump() << '\n';
        } else {
          buf << "len " << s.len << "\nper " << s.per << "\nvanishes "
              << (s.vanishes() ? "yes" : "no") << "\ntail";
          for (const auto& t : s.tail) buf << ' ' << to_text(t);
          buf << "\ncycle";
          for (const auto& t : s.cycle) buf << ' ' << to_text(t);
          buf << '\n';
        }
      }
    } else if (basic->parsed()) {
      detail::require_format(format, {"json", "text"}, "basic");
      const auto sys = sys_flags.resolve();
      const auto lp = basic_len_per(sys, limits.orbit_cap);
      if (format == "json")
        buf << nlohmann::ordered_json{{"m", sys.modulus()}, {"n", sys.length()},
                                      {"len", lp.len}, {"per", lp.per}}
                   .dump()
            << '\n';
      else
        buf << "L_" << sys.modulus() << '(' << sys.length() << ") = " << lp.len << "\nP_"
            << sys.modulus() << '(' << sys.length() << ") = " << lp.per << '\n';
    } else if (preds->parsed()) {
      detail::require_format(format, {"json", "text"}, "preds");
      const auto sys = sys_flags.resolve();
      detail::print_tuples(buf, predecessors(sys, detail::read_tuple(sys, tuple_text, err)), format);
    } else if (kernel->parsed()) {
      detail::require_format(format, {"json", "text"}, "kernel");
      const auto sys = sys_flags.resolve();
      detail::print_tuples(buf, kernel_set(sys, limits.state_cap).members(), format);
    } else if (coeff->parsed()) {
      const auto sys = sys_flags.resolve();
      CoeffTable table(sys);
      if (!view_kind.empty() || r_cell) {
        detail::require_format(format == "csv" ? "text" : format, {"text", "json"}, "coeff");
        residue value;
        ordered_json j;
        if (!view_kind.empty()) {
          const CoeffView v = view_kind == "f"   ? CoeffView::f(gamma, delta)
                              : view_kind == "g" ? CoeffView::g(gamma, epsilon, delta)
                                                 : CoeffView::h(gamma, delta);
          const auto cell = resolve_view(sys, v);
          value = coeff_view(table, v);
          j = {{"view", view_kind}, {"r", cell.r}, {"s", cell.s}, {"value", value}};
        } else {
          if (!s_cell) throw usage_error("--r needs --s");
          value = table.at(*r_cell, *s_cell);
          j = {{"r", *r_cell}, {"s", normalize_column(*s_cell, sys.length())}, {"value", value}};
        }
        if (format == "json")
          buf << j.dump() << '\n';
        else
          buf << value << '\n';
      } else {
        detail::require_format(format, {"csv"}, "coeff tables");
        if (!r_max) throw usage_error("coeff needs --r-max, --r/--s or --view");
        table.extend_to(*r_max);
        write_csv(buf, table);
      }
    } else if (binom->parsed()) {
      detail::require_format(format, {"text", "json"}, "binom");
      const auto v = binom_mod_pow2(big_n, big_k, binom_l);
      if (format == "json")
        buf << nlohmann::ordered_json{{"N", big_n}, {"K", big_k}, {"l", binom_l}, {"value", v}}
                   .dump()
            << '\n';
      else
        buf << v << '\n';
    } else if (graph->parsed()) {
      detail::require_format(format, {"dot", "csv", "text"}, "graph");
      const auto sys = sys_flags.resolve();
      auto g = build_graph(sys, limits.state_cap);
      if (!tuple_text.empty()) g = component_of(g, detail::read_tuple(sys, tuple_text, err));
      if (format == "dot") {
        write_dot(buf, g);
      } else if (format == "csv") {
        write_edge_csv(buf, g);
      } else {
        buf << "nodes " << g.node_count() << "\nedges " << g.edge_count() << "\nself_loops "
            << g.self_loops() << "\ncomponents " << weak_components(g).size() << "\ncycle_states "
            << g.cycle_positions().size() << '\n';
      }
    } else if (verify->parsed()) {
      detail::require_format(format, {"json", "text"}, "verify");
      const auto reports = run_jobs(detail::plan_checks(vf, sys_flags, limits), vf.threads);
      if (format == "json") {
        for (const auto& r : reports) buf << to_json(r, vf.timing).dump() << '\n';
      } else {
        buf << summary_table(reports, vf.timing);
      }
      bool failed = false, capped = false;
      for (const auto& r : reports) {
        failed |= r.verdict == Verdict::fail;
        capped |= r.verdict == Verdict::cap_exceeded;
      }
      code = failed ? ExitCode::check_failed : capped ? ExitCode::cap : ExitCode::ok;
    }
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n' << synopsis;
    return ExitCode::usage;
  } catch (const parameter_error& e) {
    err << "error: " << e.what() << '\n' << synopsis;
    return ExitCode::usage;
  } catch (const hypothesis_error& e) {
    err << "error: " << e.what() << '\n' << synopsis;
    return ExitCode::usage;
  } catch (const membership_error& e) {
    err << "error: " << e.what() << '\n' << synopsis;
    return ExitCode::usage;
  } catch (const cap_exceeded& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::cap;
  }

  if (output.empty()) {
    out << buf.str();
  } else {
    std::ofstream file(output, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << output << " for writing\n";
      return ExitCode::usage;
    }
    file << buf.str();
  }
  return code;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace ducci::cli
