#pragma once

/**
 * @file system.hpp
 * @brief Residue tuples in Z_m^n and the two structure maps on them.
 *
 * The Ducci map D sends (x_1, ..., x_n) to (x_1+x_2, x_2+x_3, ..., x_n+x_1)
 * with every entry reduced mod m. The shift H rotates a tuple left by one
 * position, so D = I + H and the two maps commute.
 *
 * Positions are 0-based in code; every textual form (and the CLI) is simply
 * the entry list, so the 1-based convention used in prose never leaks in.
 */

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ducci/errors.hpp"

namespace ducci {

using residue = std::uint64_t;

/// Largest supported modulus; keeps every product of two residues in 64 bits.
inline constexpr residue max_modulus = residue{1} << 32;

namespace detail {

constexpr std::optional<unsigned> exact_log2(std::uint64_t x) {
  if (x == 0 || !std::has_single_bit(x)) return std::nullopt;
  return static_cast<unsigned>(std::countr_zero(x));
}

}  // namespace detail

/// Ambient parameters of Z_m^n.
class DucciSystem {
 public:
  DucciSystem(std::int64_t modulus, std::int64_t length) {
    if (modulus < 2)
      throw parameter_error("modulus must be at least 2, got " +
                            std::to_string(modulus));
    if (static_cast<std::uint64_t>(modulus) > max_modulus)
      throw parameter_error("modulus above 2^32 is not supported");
    if (length < 1)
      throw parameter_error("tuple length must be at least 1, got " +
                            std::to_string(length));
    m_ = static_cast<residue>(modulus);
    n_ = static_cast<std::size_t>(length);
  }

  residue modulus() const noexcept { return m_; }
  std::size_t length() const noexcept { return n_; }

  /// l with m = 2^l, when m is a power of two.
  std::optional<unsigned> modulus_log2() const noexcept {
    return detail::exact_log2(m_);
  }
  /// k with n = 2^k, when n is a power of two.
  std::optional<unsigned> length_log2() const noexcept {
    return detail::exact_log2(n_);
  }

  /// m^n, or nothing when it does not fit in 64 bits.
  std::optional<std::uint64_t> state_count() const noexcept {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n_; ++i) {
      if (total > UINT64_MAX / m_) return std::nullopt;
      total *= m_;
    }
    return total;
  }

  residue reduce(std::int64_t value) const noexcept {
    const auto m = static_cast<std::int64_t>(m_);
    const std::int64_t r = value % m;
    return static_cast<residue>(r < 0 ? r + m : r);
  }

  friend bool operator==(const DucciSystem&, const DucciSystem&) = default;

 private:
  residue m_ = 2;
  std::size_t n_ = 1;
};

inline DucciSystem make_system(std::int64_t modulus, std::int64_t length) {
  return DucciSystem(modulus, length);
}

/// System Z_{2^l}^{2^k}.
inline DucciSystem make_pow2_system(unsigned k, unsigned l) {
  if (l < 1 || l > 32) throw parameter_error("l must lie in [1, 32]");
  if (k > 24) throw parameter_error("k above 24 is not supported");
  return DucciSystem(std::int64_t{1} << l, std::int64_t{1} << k);
}

/// An n-tuple of residues, always stored reduced into [0, m).
class ResidueTuple {
 public:
  ResidueTuple() = default;

  ResidueTuple(const DucciSystem& sys, std::span<const std::int64_t> values) {
    check_length(sys, values.size());
    entries_.reserve(values.size());
    for (auto v : values) entries_.push_back(sys.reduce(v));
  }

  ResidueTuple(const DucciSystem& sys, std::initializer_list<std::int64_t> values)
      : ResidueTuple(sys, std::span<const std::int64_t>(values.begin(), values.size())) {}

  ResidueTuple(const DucciSystem& sys, std::vector<residue> values)
      : entries_(std::move(values)) {
    check_length(sys, entries_.size());
    for (auto& v : entries_) v %= sys.modulus();
  }

  std::span<const residue> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  residue operator[](std::size_t i) const { return entries_[i]; }

  bool is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](residue v) { return v == 0; });
  }

  friend auto operator<=>(const ResidueTuple&, const ResidueTuple&) = default;

 private:
  static void check_length(const DucciSystem& sys, std::size_t size) {
    if (size != sys.length())
      throw parameter_error("tuple has " + std::to_string(size) +
                            " entries, system expects " +
                            std::to_string(sys.length()));
  }

  std::vector<residue> entries_;
};

/// Throws unless u belongs to Z_m^n for this system.
inline void require_member(const DucciSystem& sys, const ResidueTuple& u) {
  if (u.size() != sys.length())
    throw parameter_error("tuple length " + std::to_string(u.size()) +
                          " does not match n = " + std::to_string(sys.length()));
  for (auto v : u.entries())
    if (v >= sys.modulus())
      throw parameter_error("tuple entry " + std::to_string(v) +
                            " is not reduced mod " + std::to_string(sys.modulus()));
}

namespace detail {

// Builds a tuple from entries already known to lie in [0, m).
inline ResidueTuple from_reduced(const DucciSystem& sys, std::vector<residue> values) {
  return ResidueTuple(sys, std::move(values));
}

}  // namespace detail

inline ResidueTuple zero_tuple(const DucciSystem& sys) {
  return detail::from_reduced(sys, std::vector<residue>(sys.length(), 0));
}

/// (0, ..., 0, 1), the seed of the basic sequence.
inline ResidueTuple basic_tuple(const DucciSystem& sys) {
  std::vector<residue> v(sys.length(), 0);
  v.back() = 1;
  return detail::from_reduced(sys, std::move(v));
}

inline ResidueTuple ducci_step(const DucciSystem& sys, const ResidueTuple& u) {
  require_member(sys, u);
  const auto n = sys.length();
  const auto m = sys.modulus();
  std::vector<residue> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const residue s = u[i] + u[i + 1 == n ? 0 : i + 1];
    out[i] = s >= m ? s - m : s;
  }
  return detail::from_reduced(sys, std::move(out));
}

/// D^r(u) by repeated stepping.
inline ResidueTuple ducci_iter(const DucciSystem& sys, const ResidueTuple& u,
                               std::uint64_t r) {
  require_member(sys, u);
  ResidueTuple cur = u;
  for (std::uint64_t i = 0; i < r; ++i) cur = ducci_step(sys, cur);
  return cur;
}

/// H(x_1, ..., x_n) = (x_2, ..., x_n, x_1).
inline ResidueTuple shift(const DucciSystem& sys, const ResidueTuple& u) {
  require_member(sys, u);
  std::vector<residue> out(u.entries().begin(), u.entries().end());
  std::rotate(out.begin(), out.begin() + 1, out.end());
  return detail::from_reduced(sys, std::move(out));
}

inline ResidueTuple add(const DucciSystem& sys, const ResidueTuple& u,
                        const ResidueTuple& v) {
  require_member(sys, u);
  require_member(sys, v);
  std::vector<residue> out(sys.length());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const residue s = u[i] + v[i];
    out[i] = s >= sys.modulus() ? s - sys.modulus() : s;
  }
  return detail::from_reduced(sys, std::move(out));
}

inline ResidueTuple negate(const DucciSystem& sys, const ResidueTuple& u) {
  require_member(sys, u);
  std::vector<residue> out(sys.length());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = u[i] == 0 ? 0 : sys.modulus() - u[i];
  return detail::from_reduced(sys, std::move(out));
}

inline ResidueTuple scale(const DucciSystem& sys, std::int64_t lambda,
                          const ResidueTuple& u) {
  require_member(sys, u);
  const residue c = sys.reduce(lambda);
  std::vector<residue> out(sys.length());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (c * u[i]) % sys.modulus();
  return detail::from_reduced(sys, std::move(out));
}

// State indexing: the tuple read as a base-m numeral with entry 0 most
// significant, so index order is lexicographic tuple order.

inline std::uint64_t state_index(const DucciSystem& sys, const ResidueTuple& u) {
  require_member(sys, u);
  std::uint64_t idx = 0;
  for (auto v : u.entries()) idx = idx * sys.modulus() + v;
  return idx;
}

inline ResidueTuple tuple_at(const DucciSystem& sys, std::uint64_t index) {
  std::vector<residue> out(sys.length());
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = index % sys.modulus();
    index /= sys.modulus();
  }
  if (index != 0) throw parameter_error("state index out of range");
  return detail::from_reduced(sys, std::move(out));
}

/// Canonical text form, e.g. "(3,1,3)".
inline std::string to_text(const ResidueTuple& u) {
  std::string out = "(";
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(u[i]);
  }
  out += ')';
  return out;
}

inline nlohmann::json to_json(const ResidueTuple& u) {
  return nlohmann::json(std::vector<residue>(u.entries().begin(), u.entries().end()));
}

/// Result of parsing a tuple: the reduced tuple and whether any entry changed.
struct ParsedTuple {
  ResidueTuple tuple;
  bool reduced = false;
};

/// Accepts "(3,1,3)" or "3,1,3" (whitespace allowed). Negative or oversized
/// entries are reduced mod m and flagged.
inline ParsedTuple parse_tuple(const DucciSystem& sys, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view body = trim(text);
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') throw parameter_error("unbalanced parentheses in tuple");
    body = trim(body.substr(1, body.size() - 2));
  }
  if (body.empty()) throw parameter_error("empty tuple");

  std::vector<std::int64_t> values;
  while (true) {
    const auto comma = body.find(',');
    const std::string_view item = trim(body.substr(0, comma));
    std::int64_t v = 0;
    const char* first = item.data();
    if (!item.empty() && item.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
      throw parameter_error("bad tuple entry '" + std::string(item) + "'");
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }

  ParsedTuple out{ResidueTuple(sys, values), false};
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] < 0 || static_cast<residue>(values[i]) != out.tuple[i]) out.reduced = true;
  return out;
}

}  // namespace ducci
