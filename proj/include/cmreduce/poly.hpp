#pragma once

// Dense univariate polynomials over F_p: arithmetic, powering, gcd, and the
// distinct-degree machinery used for irreducibility and splitting oracles.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "cmreduce/errors.hpp"
#include "cmreduce/ntt.hpp"
#include "cmreduce/prime_field.hpp"

namespace cmreduce {

/// Coefficients little-endian (index = exponent); never stores a zero leading coefficient.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<std::uint64_t> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(std::uint64_t c) { return Poly(std::vector<std::uint64_t>{c}); }
  static Poly monomial(std::uint64_t c, std::size_t degree) {
    std::vector<std::uint64_t> v(degree + 1, 0);
    v[degree] = c;
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(1, 1); }

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint64_t lead() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<std::uint64_t> c_;
};

/// Default upper bound on the number of coefficients poly_pow may produce.
inline constexpr std::size_t kDefaultDegreeCap = std::size_t{1} << 26;

/// Reduce integer coefficients into F_p.
inline Poly poly_from_ints(const PrimeField& F, const std::vector<std::int64_t>& coeffs) {
  std::vector<std::uint64_t> v(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) v[i] = F.from_int(coeffs[i]);
  return Poly(std::move(v));
}

inline Poly poly_add(const PrimeField& F, const Poly& a, const Poly& b) {
  std::vector<std::uint64_t> v(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.add(a.coeff(i), b.coeff(i));
  return Poly(std::move(v));
}

inline Poly poly_sub(const PrimeField& F, const Poly& a, const Poly& b) {
  std::vector<std::uint64_t> v(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.sub(a.coeff(i), b.coeff(i));
  return Poly(std::move(v));
}

inline Poly poly_scale(const PrimeField& F, const Poly& a, std::uint64_t s) {
  std::vector<std::uint64_t> v(a.coeffs());
  for (auto& c : v) c = F.mul(c, s);
  return Poly(std::move(v));
}

namespace detail {

inline std::vector<std::uint64_t> schoolbook(const PrimeField& F, const std::vector<std::uint64_t>& a,
                                             const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out(a.size() + b.size() - 1, 0);
  const std::uint64_t p = F.characteristic();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint64_t ai = a[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + ai * b[j]) % p;
  }
  return out;
}

inline constexpr std::size_t kSchoolbookCutoff = 48;

}  // namespace detail

inline Poly poly_mul(const PrimeField& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  if (std::min(ca.size(), cb.size()) <= detail::kSchoolbookCutoff) return Poly(detail::schoolbook(F, ca, cb));
  return Poly(detail::ntt_convolve(ca, cb, F.characteristic()));
}

inline Poly poly_derivative(const PrimeField& F, const Poly& a) {
  if (a.degree() <= 0) return {};
  std::vector<std::uint64_t> v(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) v[i - 1] = F.mul(a.coeff(i), F.from_int(static_cast<std::int64_t>(i % F.characteristic())));
  return Poly(std::move(v));
}

/// (quotient, remainder) of a by b, b nonzero.
inline std::pair<Poly, Poly> poly_divmod(const PrimeField& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw domain_error("poly_divmod: division by zero polynomial");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<std::uint64_t> r(a.coeffs());
  const auto& cb = b.coeffs();
  const std::size_t db = cb.size() - 1;
  const std::uint64_t inv_lead = F.inv(b.lead());
  std::vector<std::uint64_t> q(r.size() - db, 0);
  for (std::size_t k = r.size(); k-- > db;) {
    const std::uint64_t c = F.mul(r[k], inv_lead);
    q[k - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] = F.sub(r[k - db + j], F.mul(c, cb[j]));
  }
  r.resize(db);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

inline Poly poly_mod(const PrimeField& F, const Poly& a, const Poly& m) { return poly_divmod(F, a, m).second; }

inline Poly poly_make_monic(const PrimeField& F, const Poly& a) {
  if (a.is_zero()) return a;
  return poly_scale(F, a, F.inv(a.lead()));
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly poly_gcd(const PrimeField& F, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_make_monic(F, a);
}

inline Poly poly_mulmod(const PrimeField& F, const Poly& a, const Poly& b, const Poly& m) {
  return poly_mod(F, poly_mul(F, a, b), m);
}

inline Poly poly_powmod(const PrimeField& F, Poly base, std::uint64_t e, const Poly& m) {
  Poly result = poly_mod(F, Poly::constant(1), m);
  base = poly_mod(F, base, m);
  while (e) {
    if (e & 1) result = poly_mulmod(F, result, base, m);
    e >>= 1;
    if (e) base = poly_mulmod(F, base, base, m);
  }
  return result;
}

/// Full expansion of f^e. Throws resource_error when e*deg(f)+1 exceeds `degree_cap`.
inline Poly poly_pow(const PrimeField& F, const Poly& f, std::uint64_t e,
                     std::size_t degree_cap = kDefaultDegreeCap) {
  if (f.is_zero()) throw domain_error("poly_pow: zero base");
  if (e == 0) return Poly::constant(1);
  const unsigned __int128 out_len = static_cast<unsigned __int128>(e) * static_cast<std::uint64_t>(f.degree()) + 1;
  if (out_len > degree_cap) throw resource_error("poly_pow: result exceeds the degree cap");
  // Left-to-right: squarings dominate, multiplications by f stay cheap.
  int top = 63;
  while (!((e >> top) & 1)) --top;
  Poly r = f;
  for (int bit = top - 1; bit >= 0; --bit) {
    r = poly_mul(F, r, r);
    if ((e >> bit) & 1) r = poly_mul(F, r, f);
  }
  return r;
}

inline std::uint64_t poly_eval(const PrimeField& F, const Poly& f, std::uint64_t x) {
  std::uint64_t acc = 0;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = F.add(F.mul(acc, x), f.coeffs()[i]);
  return acc;
}

inline bool is_squarefree(const PrimeField& F, const Poly& f) {
  if (f.degree() <= 0) return !f.is_zero();
  Poly d = poly_derivative(F, f);
  if (d.is_zero()) return false;
  return poly_gcd(F, f, d).degree() == 0;
}

/// f irreducible over F_p iff it has no factor of degree <= deg(f)/2.
inline bool is_irreducible(const PrimeField& F, const Poly& f) {
  const long k = f.degree();
  if (k <= 0) return false;
  if (k == 1) return true;
  const Poly monic = poly_make_monic(F, f);
  const Poly x = Poly::x();
  Poly h = poly_mod(F, x, monic);
  for (long i = 1; 2 * i <= k; ++i) {
    h = poly_powmod(F, h, F.characteristic(), monic);
    if (poly_gcd(F, monic, poly_sub(F, h, x)).degree() > 0) return false;
  }
  return true;
}

inline constexpr std::uint64_t kDefaultIrreducibleSeed = 0x1dd0c0ffee5eedULL;

/// Monic irreducible polynomial of degree k; deterministic for a given seed.
inline Poly find_irreducible(std::uint64_t p, unsigned k, std::uint64_t seed = kDefaultIrreducibleSeed) {
  if (k == 0) throw domain_error("find_irreducible: degree must be at least 1");
  PrimeField F(p);
  if (k == 1) return Poly::x();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> coeff(0, p - 1);
  for (;;) {
    std::vector<std::uint64_t> v(k + 1);
    for (unsigned i = 0; i < k; ++i) v[i] = coeff(rng);
    v[k] = 1;
    if (v[0] == 0) continue;
    Poly f(std::move(v));
    if (is_irreducible(F, f)) return f;
  }
}

/// Degrees of the irreducible factors of a squarefree monic f (sorted ascending).
/// Throws not_squarefree when f has a repeated factor modulo p.
inline std::vector<int> factor_degree_profile(const PrimeField& F, const Poly& f) {
  if (f.is_zero()) throw domain_error("factor_degree_profile: zero polynomial");
  if (f.lead() != 1) throw domain_error("factor_degree_profile: polynomial must be monic");
  if (!is_squarefree(F, f)) throw not_squarefree("factor_degree_profile: not squarefree mod " + std::to_string(F.characteristic()));
  std::vector<int> degrees;
  const Poly x = Poly::x();
  Poly rest = f;
  Poly h = poly_mod(F, x, rest);
  for (long i = 1; rest.degree() > 0; ++i) {
    if (2 * i > rest.degree()) {
      degrees.push_back(static_cast<int>(rest.degree()));
      break;
    }
    h = poly_powmod(F, h, F.characteristic(), rest);
    Poly d = poly_gcd(F, rest, poly_sub(F, h, x));
    if (d.degree() > 0) {
      for (long n = d.degree() / i; n > 0; --n) degrees.push_back(static_cast<int>(i));
      rest = poly_divmod(F, rest, d).first;
      h = poly_mod(F, h, rest);
    }
  }
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

}  // namespace cmreduce
