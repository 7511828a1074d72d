#pragma once

/**
 * @file binomial.hpp
 * @brief Binomial coefficients modulo 2^l without big integers.
 *
 * C(N, K) = 2^c * u with u odd, where c is the number of carries when K and
 * N - K are added in base 2 (Kummer). The odd part u is the quotient of the
 * odd parts of N!, K! and (N-K)!, each a product of odd-number factorials
 * taken over N, N/2, N/4, ... and inverted mod 2^l.
 */

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "ducci/errors.hpp"

namespace ducci {

namespace detail {

inline constexpr unsigned odd_table_bits = 16;

inline std::uint64_t low_mask(unsigned l) {
  return l >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << l) - 1;
}

// prefix[r] = product of the odd numbers <= r, mod 2^64.
inline const std::vector<std::uint64_t>& odd_prefix_products() {
  static const std::vector<std::uint64_t> table = [] {
    std::vector<std::uint64_t> t(std::size_t{1} << odd_table_bits);
    std::uint64_t acc = 1;
    for (std::size_t r = 0; r < t.size(); ++r) {
      if (r & 1) acc *= r;
      t[r] = acc;
    }
    return t;
  }();
  return table;
}

// Products of consecutive odd numbers as functions of an offset y that is a
// multiple of 2^16. For such y every power y^e with e >= 4 vanishes mod 2^64,
// so each product is a cubic in y.
struct OddCubic {
  std::uint64_t c[4] = {1, 0, 0, 0};

  std::uint64_t operator()(std::uint64_t y) const { return c[0] + y * (c[1] + y * (c[2] + y * c[3])); }

  OddCubic operator*(const OddCubic& o) const {
    OddCubic r;
    r.c[0] = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; i + j < 4; ++j) r.c[i + j] += c[i] * o.c[j];
    return r;
  }

  /// y -> f(y + s).
  OddCubic shifted(std::uint64_t s) const {
    static constexpr std::uint64_t binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    OddCubic r;
    for (int j = 0; j < 4; ++j) {
      std::uint64_t acc = 0, sp = 1;
      for (int e = j; e < 4; ++e, sp *= s) acc += c[e] * binom[e][j] * sp;
      r.c[j] = acc;
    }
    return r;
  }
};

struct OddCubicTables {
  std::vector<OddCubic> partial;  // partial[k](y) = prod_{i=1..k} (y + 2i - 1)
  OddCubic block[64];             // block[t](y) = product of the odd numbers in (y, y + 2^t], t >= 16
};

inline const OddCubicTables& odd_cubic_tables() {
  static const OddCubicTables tables = [] {
    OddCubicTables t;
    const std::size_t half = std::size_t{1} << (odd_table_bits - 1);
    t.partial.resize(half + 1);
    for (std::size_t k = 1; k <= half; ++k) {
      OddCubic linear;
      linear.c[0] = 2 * k - 1;
      linear.c[1] = 1;
      t.partial[k] = t.partial[k - 1] * linear;
    }
    t.block[odd_table_bits] = t.partial[half];
    for (unsigned b = odd_table_bits; b < 63; ++b)
      t.block[b + 1] = t.block[b] * t.block[b].shifted(std::uint64_t{1} << b);
    return t;
  }();
  return tables;
}

/// Product of the odd numbers in [1, x], mod 2^64.
inline std::uint64_t odd_product_mod_2_64(std::uint64_t x) {
  if (x < (std::uint64_t{1} << odd_table_bits)) return odd_prefix_products()[x];
  const auto& t = odd_cubic_tables();
  std::uint64_t p = 1, offset = 0;
  for (unsigned b = 63; b >= odd_table_bits; --b)
    if ((x >> b) & 1) {
      p *= t.block[b](offset);
      offset += std::uint64_t{1} << b;
    }
  return p * t.partial[((x - offset) + 1) / 2](offset);
}

/// Product of the odd numbers in [1, x], mod 2^l. The odd residues mod 2^l
/// multiply to -1 for l <= 2 and to +1 for l >= 3, so only x mod 2^l matters
/// beyond a sign.
inline std::uint64_t odd_product_mod_pow2(std::uint64_t x, unsigned l) {
  const std::uint64_t mask = low_mask(l);
  const std::uint64_t blocks = l >= 64 ? 0 : x >> l;
  std::uint64_t p = odd_product_mod_2_64(x & mask);
  if (l <= 2 && (blocks & 1)) p = 0 - p;
  return p & mask;
}

/// Odd part of x!, i.e. x! / 2^v2(x!), mod 2^l.
inline std::uint64_t odd_factorial_part(std::uint64_t x, unsigned l) {
  std::uint64_t p = 1;
  for (; x > 0; x >>= 1) p *= odd_product_mod_pow2(x, l);
  return p & low_mask(l);
}

/// Inverse of an odd number modulo 2^64 by Newton iteration.
inline std::uint64_t inverse_mod_2_64(std::uint64_t a) {
  std::uint64_t x = a;  // correct to 3 bits
  for (int i = 0; i < 5; ++i) x *= 2 - a * x;
  return x;
}

}  // namespace detail

/// Number of carries when adding a and b in base 2; equals the exponent of 2
/// in C(a+b, a).
inline unsigned binary_carries(std::uint64_t a, std::uint64_t b) {
  unsigned carries = 0;
  unsigned carry = 0;
  while (a || b || carry) {
    const unsigned s = static_cast<unsigned>(a & 1) + static_cast<unsigned>(b & 1) + carry;
    carry = s >> 1;
    carries += carry;
    a >>= 1;
    b >>= 1;
  }
  return carries;
}

/// C(N, K) mod 2^l for 1 <= l <= 63.
inline std::uint64_t binom_mod_pow2(std::uint64_t N, std::uint64_t K, unsigned l) {
  if (K > N)
    throw parameter_error("binomial needs K <= N, got N=" + std::to_string(N) +
                          " K=" + std::to_string(K));
  if (l < 1 || l > 63) throw parameter_error("exponent l must lie in [1, 63]");

  const unsigned c = binary_carries(K, N - K);
  if (c >= l) return 0;

  std::uint64_t odd = detail::odd_factorial_part(N, l);
  odd *= detail::inverse_mod_2_64(detail::odd_factorial_part(K, l));
  odd *= detail::inverse_mod_2_64(detail::odd_factorial_part(N - K, l));
  return (odd << c) & detail::low_mask(l);
}

}  // namespace ducci
