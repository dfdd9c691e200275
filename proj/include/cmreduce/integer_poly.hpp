#pragma once

// Polynomials with arbitrary-precision integer coefficients (little-endian).

#include <sstream>
#include <string>
#include <vector>

#include "cmreduce/bigint.hpp"
#include "cmreduce/poly.hpp"
#include "cmreduce/prime_field.hpp"

namespace cmreduce {

using ZPoly = std::vector<BigInt>;

inline void zpoly_trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline long zpoly_degree(const ZPoly& f) {
  long d = static_cast<long>(f.size()) - 1;
  while (d >= 0 && f[static_cast<std::size_t>(d)] == 0) --d;
  return d;
}

inline ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  zpoly_trim(out);
  return out;
}

inline Poly zpoly_reduce(const PrimeField& F, const ZPoly& f) {
  std::vector<std::uint64_t> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = F.from_big(f[i]);
  return Poly(std::move(v));
}

/// Determinant of a square integer matrix by Bareiss fraction-free elimination.
inline BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Resultant of a and b with respect to their exact degrees (Sylvester determinant).
inline BigInt zpoly_resultant(const ZPoly& a, const ZPoly& b) {
  const long m = zpoly_degree(a), n = zpoly_degree(b);
  if (m < 0 || n < 0) return 0;
  const std::size_t size = static_cast<std::size_t>(m + n);
  if (size == 0) return 1;
  std::vector<std::vector<BigInt>> s(size, std::vector<BigInt>(size, 0));
  for (long r = 0; r < n; ++r)
    for (long i = 0; i <= m; ++i) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + m - i)] = a[static_cast<std::size_t>(i)];
  for (long r = 0; r < m; ++r)
    for (long i = 0; i <= n; ++i) s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + n - i)] = b[static_cast<std::size_t>(i)];
  return bareiss_determinant(std::move(s));
}

/// disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f), for deg f = n >= 1.
inline BigInt zpoly_discriminant(const ZPoly& f) {
  const long n = zpoly_degree(f);
  if (n < 1) throw domain_error("discriminant: degree must be at least 1");
  if (n == 1) return 1;
  ZPoly d(static_cast<std::size_t>(n), 0);
  for (long i = 1; i <= n; ++i) d[static_cast<std::size_t>(i - 1)] = f[static_cast<std::size_t>(i)] * i;
  BigInt res = zpoly_resultant(f, d);
  BigInt disc = res / f[static_cast<std::size_t>(n)];
  if ((n * (n - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

/// Human-readable form in descending powers of `var`, e.g. "x^7 + 7x^5 - 3".
inline std::string zpoly_to_string(const ZPoly& f, const std::string& var = "x") {
  std::ostringstream os;
  bool first = true;
  for (long i = zpoly_degree(f); i >= 0; --i) {
    const BigInt& c = f[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    if (mag != 1 || i == 0) os << mag;
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace cmreduce
