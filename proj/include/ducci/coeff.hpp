#pragma once

/**
 * @file coeff.hpp
 * @brief The coefficients a_{r,s} of D^r.
 *
 * D^r(0, ..., 0, 1) = (a_{r,n}, a_{r,n-1}, ..., a_{r,1}), and in general the
 * i-th coordinate of D^r(x) is sum_s x_s * a_{r, s-i+1}. Row 0 is the
 * indicator of s = 1 and each later row follows the cyclic Pascal rule
 *
 *     a_{r,s} = a_{r-1,s} + a_{r-1,s-1},   s taken cyclically in 1..n.
 *
 * Column indices s are 1-based here, matching the usual statement of these
 * identities, and any integer s is accepted via s -> ((s-1) mod n) + 1.
 * Entries are stored reduced mod m.
 */

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ducci/errors.hpp"
#include "ducci/system.hpp"

namespace ducci {

inline constexpr std::uint64_t default_coeff_cells = std::uint64_t{1} << 26;

/// Maps any integer column to 1..n.
inline std::size_t normalize_column(std::int64_t s, std::size_t n) {
  const auto nn = static_cast<std::int64_t>(n);
  std::int64_t r = (s - 1) % nn;
  if (r < 0) r += nn;
  return static_cast<std::size_t>(r) + 1;
}

/// Rows of a_{r,s} mod m, extended on demand and cached.
class CoeffTable {
 public:
  explicit CoeffTable(DucciSystem sys, std::uint64_t max_cells = default_coeff_cells)
      : sys_(sys), max_cells_(max_cells) {
    std::vector<residue> row0(sys_.length(), 0);
    row0[0] = 1 % sys_.modulus();
    rows_.push_back(std::move(row0));
  }

  const DucciSystem& system() const noexcept { return sys_; }

  /// Highest row computed so far.
  std::uint64_t r_max() const noexcept { return rows_.size() - 1; }

  void extend_to(std::uint64_t r) {
    if (r <= r_max()) return;
    if ((r + 1) > max_cells_ / sys_.length())
      throw cap_exceeded("coefficient table of " + std::to_string(r + 1) + " rows x " +
                         std::to_string(sys_.length()) + " columns exceeds " +
                         std::to_string(max_cells_) + " cells");
    const auto n = sys_.length();
    const auto m = sys_.modulus();
    rows_.reserve(r + 1);
    while (r_max() < r) {
      const auto& prev = rows_.back();
      std::vector<residue> next(n);
      for (std::size_t j = 0; j < n; ++j) {
        const residue s = prev[j] + prev[j == 0 ? n - 1 : j - 1];
        next[j] = s >= m ? s - m : s;
      }
      rows_.push_back(std::move(next));
    }
  }

  /// Row r as a_{r,1..n} (0-based storage).
  std::span<const residue> row(std::uint64_t r) {
    extend_to(r);
    return rows_[r];
  }

  /// Row r of an already computed table.
  std::span<const residue> computed_row(std::uint64_t r) const {
    if (r > r_max()) throw parameter_error("row " + std::to_string(r) + " not computed");
    return rows_[r];
  }

  /// a_{r,s} mod m, with s normalized cyclically.
  residue at(std::uint64_t r, std::int64_t s) {
    return row(r)[normalize_column(s, sys_.length()) - 1];
  }

 private:
  DucciSystem sys_;
  std::uint64_t max_cells_;
  std::vector<std::vector<residue>> rows_;
};

inline CoeffTable coeff_table(const DucciSystem& sys, std::uint64_t r_max,
                              std::uint64_t max_cells = default_coeff_cells) {
  CoeffTable t(sys, max_cells);
  t.extend_to(r_max);
  return t;
}

inline residue coeff_at(const DucciSystem& sys, std::uint64_t r, std::int64_t s) {
  return coeff_table(sys, r).at(r, s);
}

/// D^r(u) evaluated through the coefficient expansion, never by stepping.
inline ResidueTuple apply_coeff_expansion(CoeffTable& table, const ResidueTuple& u,
                                          std::uint64_t r) {
  const auto& sys = table.system();
  require_member(sys, u);
  const auto row = table.row(r);
  const auto n = sys.length();
  const auto m = sys.modulus();
  std::vector<residue> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    residue acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t col = j >= i ? j - i : j + n - i;
      acc = (acc + u[j] * row[col]) % m;
    }
    out[i] = acc;
  }
  return ResidueTuple(sys, std::move(out));
}

inline ResidueTuple apply_coeff_expansion(const DucciSystem& sys, const ResidueTuple& u,
                                          std::uint64_t r) {
  CoeffTable table(sys);
  return apply_coeff_expansion(table, u, r);
}

/// Parameterized addressing of table cells for n = 2^k:
///   f(gamma, delta)          = a_{gamma*2^(k-1), delta}
///   g(gamma, epsilon, delta) = a_{gamma*2^(k-1), epsilon*2^(k-2) + delta}   (k >= 2)
///   h(gamma, delta)          = a_{gamma*2^(k-1) - 1, delta}
struct CoeffView {
  enum class Kind { f, g, h };
  Kind kind = Kind::f;
  std::int64_t gamma = 0;
  std::int64_t epsilon = 0;  // g only
  std::int64_t delta = 1;

  static CoeffView f(std::int64_t gamma, std::int64_t delta) { return {Kind::f, gamma, 0, delta}; }
  static CoeffView g(std::int64_t gamma, std::int64_t epsilon, std::int64_t delta) {
    return {Kind::g, gamma, epsilon, delta};
  }
  static CoeffView h(std::int64_t gamma, std::int64_t delta) { return {Kind::h, gamma, 0, delta}; }
};

struct CoeffCell {
  std::uint64_t r;
  std::size_t s;  // 1..n
};

/// Resolves a view to its (row, column) for the table's n = 2^k.
inline CoeffCell resolve_view(const DucciSystem& sys, const CoeffView& view) {
  const auto k = sys.length_log2();
  if (!k || *k == 0) throw hypothesis_error("coefficient views need n = 2^k with k >= 1");
  if (view.kind == CoeffView::Kind::g && *k < 2)
    throw hypothesis_error("g-views need k >= 2 (n >= 4)");
  const std::int64_t half = std::int64_t{1} << (*k - 1);

  std::int64_t row = view.gamma * half;
  std::int64_t col = view.delta;
  if (view.kind == CoeffView::Kind::h) row -= 1;
  if (view.kind == CoeffView::Kind::g) col += view.epsilon * (half / 2);
  if (row < 0) throw parameter_error("view addresses negative row " + std::to_string(row));
  return {static_cast<std::uint64_t>(row), normalize_column(col, sys.length())};
}

inline residue coeff_view(CoeffTable& table, const CoeffView& view) {
  const auto cell = resolve_view(table.system(), view);
  return table.at(cell.r, static_cast<std::int64_t>(cell.s));
}

inline residue coeff_view(const DucciSystem& sys, const CoeffView& view) {
  CoeffTable table(sys);
  return coeff_view(table, view);
}

/// CSV with header "r,s,value", rows ascending in r then s.
inline void write_csv(std::ostream& os, const CoeffTable& table) {
  os << "r,s,value\n";
  for (std::uint64_t r = 0; r <= table.r_max(); ++r) {
    const auto row = table.computed_row(r);
    for (std::size_t j = 0; j < row.size(); ++j) os << r << ',' << (j + 1) << ',' << row[j] << '\n';
  }
}

}  // namespace ducci
