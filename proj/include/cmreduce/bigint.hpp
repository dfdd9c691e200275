#pragma once

// Arbitrary-precision integer helpers: Kronecker symbol, primality, seeded
// sampling. Backed by Boost.Multiprecision's cpp_int.

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "cmreduce/errors.hpp"

namespace cmreduce {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  // Accept "2^k+c" / "2^k-c" shorthand used in docs and CLI invocations.
  if (auto caret = s.find('^'); caret != std::string::npos) {
    std::size_t pos = caret + 1;
    while (pos < s.size() && is_digit(s[pos])) ++pos;
    BigInt base = parse_bigint(s.substr(0, caret));
    unsigned exp = static_cast<unsigned>(std::stoul(s.substr(caret + 1, pos - caret - 1)));
    BigInt value = boost::multiprecision::pow(base, exp);
    if (pos == s.size()) return value;
    if (s[pos] != '+' && s[pos] != '-') throw domain_error("malformed integer: " + s);
    BigInt rest = parse_bigint(s.substr(pos + 1));
    return s[pos] == '+' ? BigInt(value + rest) : BigInt(value - rest);
  }
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) throw domain_error("malformed integer: '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i)
    if (!is_digit(s[i])) throw domain_error("malformed integer: '" + s + "'");
  return BigInt(s);
}

inline std::string to_string(const BigInt& x) { return x.str(); }

/// Least nonnegative residue of x modulo m (m > 0).
inline std::uint64_t mod_u64(const BigInt& x, std::uint64_t m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r.convert_to<std::uint64_t>();
}

inline bool fits_u64(const BigInt& x) {
  return x >= 0 && x <= BigInt(std::numeric_limits<std::uint64_t>::max());
}

/// Kronecker symbol (a/n) for arbitrary integers, standard conventions at 2,
/// -1 and 0.
inline int kronecker(BigInt a, BigInt n) {
  using boost::multiprecision::abs;
  if (n == 0) return abs(a) == 1 ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  unsigned twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos > 0) {
    if ((a & 1) == 0) return 0;
    unsigned r = mod_u64(a, 8);
    if ((twos & 1) && (r == 3 || r == 5)) result = -result;
  }
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      unsigned r = mod_u64(n, 8);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (mod_u64(a, 4) == 3 && mod_u64(n, 4) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

inline constexpr std::array<std::uint32_t, 12> kWitnesses64 = {2,  3,  5,  7,  11, 13,
                                                               17, 19, 23, 29, 31, 37};

inline bool miller_rabin_u64(std::uint64_t n) {
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kWitnesses64) {
    if (a % n == 0) continue;
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

/// Uniform integer in [0, bound) drawn from `rng`; bound > 0.
inline BigInt random_below(const BigInt& bound, std::mt19937_64& rng) {
  if (bound <= 0) throw domain_error("random_below: bound must be positive");
  unsigned bits = boost::multiprecision::msb(bound) + 1;
  for (;;) {
    BigInt r = 0;
    unsigned filled = 0;
    while (filled < bits) {
      r <<= 64;
      r |= rng();
      filled += 64;
    }
    r >>= (filled - bits);
    if (r < bound) return r;
  }
}

/// Rounds of Miller-Rabin above 2^64; error probability <= 4^-64 = 2^-128.
inline constexpr unsigned kMillerRabinRounds = 64;

/// Deterministic for n < 2^64; probabilistic with error < 2^-128 above.
inline bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  static constexpr std::array<unsigned, 25> small = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                                                     29, 31, 37, 41, 43, 47, 53, 59, 61,
                                                     67, 71, 73, 79, 83, 89, 97};
  for (unsigned q : small) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  if (fits_u64(n)) return detail::miller_rabin_u64(n.convert_to<std::uint64_t>());

  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  std::mt19937_64 rng(0x5eedc0ffeeULL);
  const BigInt span = n - 3;
  for (unsigned round = 0; round < kMillerRabinRounds; ++round) {
    BigInt a = random_below(span, rng) + 2;
    BigInt x = boost::multiprecision::powm(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = (x * x) % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline BigInt pow2(unsigned k) { return BigInt(1) << k; }

}  // namespace cmreduce
