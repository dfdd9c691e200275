#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cmreduce/errors.hpp"
#include "cmreduce/poly.hpp"
#include "cmreduce/prime_field.hpp"

namespace cmreduce {

/// Largest extension degree representable (p = 2 within a 2^26 element budget).
inline constexpr unsigned kMaxExtDegree = 26;

/// Element of F_p[t]/(m(t)); coefficient i multiplies t^i.
struct ExtElement {
  std::array<std::uint32_t, kMaxExtDegree> c{};
  friend bool operator==(const ExtElement&, const ExtElement&) = default;
};

/// F_{p^k} as F_p[t] modulo a monic irreducible polynomial of degree k.
class ExtField {
 public:
  using element = ExtElement;

  ExtField(const PrimeField& base, const Poly& modulus) : base_(base), modulus_(modulus) {
    if (modulus.degree() < 1 || static_cast<unsigned>(modulus.degree()) > kMaxExtDegree)
      throw resource_error("ExtField: degree outside [1, 26]");
    if (modulus.lead() != 1) throw domain_error("ExtField: modulus must be monic");
    if (!is_irreducible(base, modulus)) throw domain_error("ExtField: modulus is reducible");
    k_ = static_cast<unsigned>(modulus.degree());
    unsigned __int128 q = 1;
    for (unsigned i = 0; i < k_; ++i) {
      q *= base.characteristic();
      if (q > (static_cast<unsigned __int128>(1) << 63)) throw resource_error("ExtField: cardinality exceeds 2^63");
    }
    q_ = static_cast<std::uint64_t>(q);
  }

  /// F_{p^k} with the default irreducible modulus.
  ExtField(std::uint64_t p, unsigned k) : ExtField(PrimeField(p), find_irreducible(p, k)) {}

  const PrimeField& base() const { return base_; }
  const Poly& modulus() const { return modulus_; }
  unsigned degree() const { return k_; }
  std::uint64_t cardinality() const { return q_; }

  element zero() const { return {}; }
  element one() const {
    element e;
    e.c[0] = 1;
    return e;
  }
  element from_base(std::uint64_t a) const {
    element e;
    e.c[0] = static_cast<std::uint32_t>(a % base_.characteristic());
    return e;
  }
  bool is_zero(const element& a) const {
    for (unsigned i = 0; i < k_; ++i)
      if (a.c[i]) return false;
    return true;
  }

  element add(const element& a, const element& b) const {
    element r;
    for (unsigned i = 0; i < k_; ++i) r.c[i] = static_cast<std::uint32_t>(base_.add(a.c[i], b.c[i]));
    return r;
  }
  element sub(const element& a, const element& b) const {
    element r;
    for (unsigned i = 0; i < k_; ++i) r.c[i] = static_cast<std::uint32_t>(base_.sub(a.c[i], b.c[i]));
    return r;
  }
  element neg(const element& a) const { return sub(zero(), a); }

  element mul(const element& a, const element& b) const {
    const std::uint64_t p = base_.characteristic();
    std::array<std::uint64_t, 2 * kMaxExtDegree> t{};
    for (unsigned i = 0; i < k_; ++i) {
      if (!a.c[i]) continue;
      for (unsigned j = 0; j < k_; ++j) t[i + j] = (t[i + j] + std::uint64_t{a.c[i]} * b.c[j]) % p;
    }
    const auto& m = modulus_.coeffs();
    for (unsigned i = 2 * k_ - 1; i-- > k_;) {
      const std::uint64_t c = t[i];
      if (!c) continue;
      // t^i = t^(i-k) * t^k and t^k = -(m_0 + ... + m_{k-1} t^{k-1}).
      for (unsigned j = 0; j < k_; ++j) t[i - k_ + j] = (t[i - k_ + j] + (p - c) * m[j]) % p;
      t[i] = 0;
    }
    element r;
    for (unsigned i = 0; i < k_; ++i) r.c[i] = static_cast<std::uint32_t>(t[i]);
    return r;
  }

  element pow(element a, std::uint64_t e) const {
    element r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  element inv(const element& a) const {
    if (is_zero(a)) throw domain_error("ExtField: inverse of zero");
    return pow(a, q_ - 2);
  }

  /// Base-p digits of the coefficient vector: a bijection onto [0, q).
  std::uint64_t to_index(const element& a) const {
    std::uint64_t idx = 0;
    for (unsigned i = k_; i-- > 0;) idx = idx * base_.characteristic() + a.c[i];
    return idx;
  }
  element from_index(std::uint64_t idx) const {
    element e;
    for (unsigned i = 0; i < k_; ++i) {
      e.c[i] = static_cast<std::uint32_t>(idx % base_.characteristic());
      idx /= base_.characteristic();
    }
    return e;
  }

 private:
  PrimeField base_;
  Poly modulus_;
  unsigned k_ = 1;
  std::uint64_t q_ = 0;
};

}  // namespace cmreduce
