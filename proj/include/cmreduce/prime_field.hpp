#pragma once

#include <cstdint>
#include <vector>

#include "cmreduce/bigint.hpp"

namespace cmreduce {

/// The prime field F_p for word-size p (p < 2^32, so products fit in 64 bits).
class PrimeField {
 public:
  using element = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t{1} << 32)) throw resource_error("PrimeField: p must be below 2^32");
    if (!is_prime(BigInt(p))) throw domain_error("PrimeField: " + std::to_string(p) + " is not prime");
  }

  std::uint64_t characteristic() const { return p_; }
  std::uint64_t cardinality() const { return p_; }

  element zero() const { return 0; }
  element one() const { return 1; }
  bool is_zero(element a) const { return a == 0; }

  element add(element a, element b) const {
    element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  element sub(element a, element b) const { return a >= b ? a - b : a + p_ - b; }
  element neg(element a) const { return a == 0 ? 0 : p_ - a; }
  element mul(element a, element b) const { return a * b % p_; }

  element pow(element a, std::uint64_t e) const {
    element r = 1 % p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  element inv(element a) const {
    if (a == 0) throw domain_error("PrimeField: inverse of zero");
    return pow(a, p_ - 2);
  }

  element from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<element>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }
  element from_big(const BigInt& v) const { return mod_u64(v, p_); }

  /// Legendre symbol of a in {-1, 0, 1}; p = 2 gives 1 for every unit.
  int legendre(element a) const {
    if (a == 0) return 0;
    if (p_ == 2) return 1;
    return pow(a, (p_ - 1) / 2) == 1 ? 1 : -1;
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint64_t p_;
};

}  // namespace cmreduce
