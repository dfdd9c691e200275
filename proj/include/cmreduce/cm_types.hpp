#pragma once

// CM types on a cyclic CM field of degree 2g. With tau generating the Galois
// group, a type is a set S of g exponents in Z/2g with S and S+g disjoint
// (complex conjugation is tau^g). The extended string b of length 2g has
// b[i] = 0 iff i is in S; equivalent types differ by a cyclic shift.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmreduce/bigint.hpp"
#include "cmreduce/errors.hpp"

namespace cmreduce {

inline constexpr int kMaxCMGenus = 32;
inline constexpr int kMaxEnumerationGenus = 24;

namespace detail {

inline std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

/// Rotate an n-bit word left by r (0 <= r < n).
inline std::uint64_t rotl_bits(std::uint64_t w, int r, int n) {
  if (r == 0) return w;
  return ((w << r) | (w >> (n - r))) & low_mask(n);
}

}  // namespace detail

/// Smallest k >= 1 such that s is fixed by a cyclic shift of k. Works on any binary string.
inline int string_period(std::string_view s) {
  const std::size_t n = s.size();
  if (n == 0) throw domain_error("string_period: empty string");
  for (std::size_t k = 1; k < n; ++k) {
    if (n % k != 0) continue;
    bool fixed = true;
    for (std::size_t i = 0; i < n && fixed; ++i) fixed = s[i] == s[(i + k) % n];
    if (fixed) return static_cast<int>(k);
  }
  return static_cast<int>(n);
}

class CMType {
 public:
  static CMType from_exponents(int g, std::span<const int> exponents) {
    check_genus(g);
    std::uint64_t mask = 0;
    for (int e : exponents) {
      const int r = ((e % (2 * g)) + 2 * g) % (2 * g);
      if (mask >> r & 1) throw domain_error("CMType: repeated exponent " + std::to_string(e));
      mask |= std::uint64_t{1} << r;
    }
    return from_mask(g, mask);
  }
  static CMType from_exponents(int g, std::initializer_list<int> exponents) {
    return from_exponents(g, std::span<const int>(exponents.begin(), exponents.size()));
  }

  /// Accepts the length-g string (completed by its complement) or a full length-2g string.
  static CMType from_bits(std::string_view bits, int g = 0) {
    if (g == 0) g = static_cast<int>(bits.size());
    check_genus(g);
    std::string ext(bits);
    if (ext.size() == static_cast<std::size_t>(g)) {
      for (int i = 0; i < g; ++i) ext.push_back(bits[static_cast<std::size_t>(i)] == '0' ? '1' : '0');
    } else if (ext.size() != static_cast<std::size_t>(2 * g)) {
      throw domain_error("CMType: bit string must have length g or 2g");
    }
    std::uint64_t mask = 0;
    for (int i = 0; i < 2 * g; ++i) {
      const char c = ext[static_cast<std::size_t>(i)];
      if (c != '0' && c != '1') throw domain_error("CMType: bit string must be binary");
      if (c == '0') mask |= std::uint64_t{1} << i;
    }
    return from_mask(g, mask);
  }

  int genus() const { return g_; }
  int degree() const { return 2 * g_; }

  bool contains(int exponent) const {
    const int r = ((exponent % degree()) + degree()) % degree();
    return mask_ >> r & 1;
  }

  std::vector<int> exponents() const {
    std::vector<int> out;
    for (int i = 0; i < degree(); ++i)
      if (mask_ >> i & 1) out.push_back(i);
    return out;
  }

  std::string extended_bits() const {
    std::string s(static_cast<std::size_t>(degree()), '1');
    for (int i = 0; i < degree(); ++i)
      if (mask_ >> i & 1) s[static_cast<std::size_t>(i)] = '0';
    return s;
  }
  std::string bits() const { return extended_bits().substr(0, static_cast<std::size_t>(g_)); }

  /// Extended string as an integer, b[0] most significant; numeric order = lexicographic order.
  std::uint64_t lex_word() const {
    std::uint64_t w = 0;
    for (int i = 0; i < degree(); ++i) w = (w << 1) | ((mask_ >> i & 1) ? 0u : 1u);
    return w;
  }

  static CMType from_lex_word(int g, std::uint64_t w) {
    std::uint64_t mask = 0;
    for (int i = 0; i < 2 * g; ++i)
      if (!(w >> (2 * g - 1 - i) & 1)) mask |= std::uint64_t{1} << i;
    return from_mask(g, mask);
  }

  /// Exponent set S + r.
  CMType shifted(int r) const {
    std::vector<int> e = exponents();
    for (auto& x : e) x += r;
    return from_exponents(g_, e);
  }

  friend bool operator==(const CMType&, const CMType&) = default;
  friend auto operator<=>(const CMType& a, const CMType& b) {
    if (auto c = a.g_ <=> b.g_; c != 0) return c;
    return a.lex_word() <=> b.lex_word();
  }

 private:
  CMType(int g, std::uint64_t mask) : g_(g), mask_(mask) {}

  static void check_genus(int g) {
    if (g < 1 || g > kMaxCMGenus) throw domain_error("CMType: genus must be in [1, 32]");
  }

  static CMType from_mask(int g, std::uint64_t mask) {
    const int n = 2 * g;
    if (std::popcount(mask) != g) throw domain_error("CMType: need exactly g exponents");
    const std::uint64_t conj = detail::rotl_bits(mask, g, n);
    if (mask & conj) throw domain_error("CMType: contains a conjugate pair {s, s+g}");
    return CMType(g, mask);
  }

  int g_;
  std::uint64_t mask_;
};

inline int period(const CMType& t) {
  const int n = t.degree();
  const std::uint64_t w = t.lex_word();
  for (int r = 1; r < n; ++r)
    if (n % r == 0 && detail::rotl_bits(w, r, n) == w) return r;
  return n;
}

inline bool is_primitive(const CMType& t) { return period(t) == t.degree(); }

/// Lexicographically least rotation of the extended string.
inline CMType canonicalize(const CMType& t) {
  const int n = t.degree();
  const std::uint64_t w = t.lex_word();
  std::uint64_t best = w;
  for (int r = 1; r < n; ++r) best = std::min(best, detail::rotl_bits(w, r, n));
  return CMType::from_lex_word(t.genus(), best);
}

inline bool equivalent(const CMType& a, const CMType& b) {
  return a.genus() == b.genus() && canonicalize(a) == canonicalize(b);
}

/// Reflex type Phi^{-1} on the same (abelian, primitive) field.
inline CMType reflex(const CMType& t) {
  if (!is_primitive(t)) throw domain_error("reflex: type is imprimitive");
  std::vector<int> e = t.exponents();
  for (auto& x : e) x = (t.degree() - x) % t.degree();
  return CMType::from_exponents(t.genus(), e);
}

inline CMType conjugate(const CMType& t) { return t.shifted(t.genus()); }

struct TypeClass {
  CMType representative;
  int period;
  bool primitive() const { return period == representative.degree(); }
  /// Orbit size under cyclic shifts.
  int size() const { return period; }
};

/// One canonical representative per equivalence class, sorted lexicographically.
inline std::vector<TypeClass> enumerate_classes(int g) {
  if (g < 1) throw domain_error("enumerate_classes: g must be positive");
  if (g > kMaxEnumerationGenus) throw resource_error("enumerate_classes: g above enumeration cap 24");
  const int n = 2 * g;
  const std::uint64_t half_mask = detail::low_mask(g);
  std::vector<TypeClass> out;
  for (std::uint64_t h = 0; h <= half_mask; ++h) {
    const std::uint64_t w = (h << g) | (~h & half_mask);
    int per = n;
    bool minimal = true;
    for (int r = 1; r < n; ++r) {
      const std::uint64_t rot = detail::rotl_bits(w, r, n);
      if (rot < w) {
        minimal = false;
        break;
      }
      if (rot == w) {
        per = r;
        break;
      }
    }
    if (minimal) out.push_back({CMType::from_lex_word(g, w), per});
  }
  return out;
}

namespace detail {

inline int mobius(std::uint64_t n) {
  int result = 1;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    n /= q;
    if (n % q == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    while (n % q == 0) n /= q;
    result -= result / q;
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace detail

/// Number of strings in B(g) of period k (independent of g); k even.
inline BigInt count_P(std::uint64_t k) {
  if (k < 2 || k % 2 != 0) throw domain_error("count_P: k must be even and at least 2");
  BigInt total = 0;
  for (std::uint64_t x = 1; x <= k; x += 2) {
    if (k % x) continue;
    const int mu = detail::mobius(x);
    if (mu == 0) continue;
    const BigInt term = pow2(static_cast<unsigned>(k / (2 * x)));
    total += mu > 0 ? term : BigInt(-term);
  }
  return total;
}

/// |E(g)|: number of equivalence classes of CM types.
inline BigInt count_E(std::uint64_t g) {
  if (g < 1) throw domain_error("count_E: g must be positive");
  BigInt total = 0;
  for (std::uint64_t d = 1; d <= g; d += 2)
    if (g % d == 0) total += BigInt(detail::euler_phi(d)) * pow2(static_cast<unsigned>(g / d));
  if (total % (2 * g) != 0) throw internal_inconsistency("count_E: sum not divisible by 2g");
  return total / (2 * g);
}

/// |E'(g)| = P(2g) / 2g: number of primitive classes.
inline BigInt count_E_primitive(std::uint64_t g) {
  if (g < 1) throw domain_error("count_E_primitive: g must be positive");
  const BigInt p = count_P(2 * g);
  if (p % (2 * g) != 0) throw internal_inconsistency("count_E_primitive: P(2g) not divisible by 2g");
  return p / (2 * g);
}

}  // namespace cmreduce
