#pragma once

// Convolution of residue vectors modulo a word-size prime via three
// NTT-friendly primes and Garner recombination.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "cmreduce/errors.hpp"

namespace cmreduce::detail {

struct NttPrime {
  std::uint32_t modulus;
  std::uint32_t generator;
};

// All three admit transforms of length up to 2^26.
inline constexpr std::array<NttPrime, 3> kNttPrimes = {{
    {469762049u, 3u},
    {1811939329u, 13u},
    {2013265921u, 31u},
}};

inline constexpr std::size_t kMaxNttLength = std::size_t{1} << 26;

inline std::uint32_t pow_mod32(std::uint64_t b, std::uint64_t e, std::uint32_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

inline void ntt_inplace(std::vector<std::uint32_t>& a, bool inverse, NttPrime prime) {
  const std::size_t n = a.size();
  const std::uint64_t m = prime.modulus;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<std::uint32_t> twiddle;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = pow_mod32(prime.generator, (m - 1) / len, prime.modulus);
    if (inverse) w = pow_mod32(w, m - 2, prime.modulus);
    const std::size_t half = len / 2;
    twiddle.resize(half);
    twiddle[0] = 1;
    for (std::size_t k = 1; k < half; ++k) twiddle[k] = static_cast<std::uint32_t>(twiddle[k - 1] * w % m);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::uint64_t u = a[i + k];
        std::uint64_t v = a[i + k + half] * std::uint64_t{twiddle[k]} % m;
        a[i + k] = static_cast<std::uint32_t>(u + v >= m ? u + v - m : u + v);
        a[i + k + half] = static_cast<std::uint32_t>(u >= v ? u - v : u + m - v);
      }
    }
  }
  if (inverse) {
    std::uint64_t n_inv = pow_mod32(n % m, m - 2, prime.modulus);
    for (auto& x : a) x = static_cast<std::uint32_t>(x * n_inv % m);
  }
}

/// Full product of a and b (entries already reduced mod p < 2^32), reduced mod p.
inline std::vector<std::uint64_t> ntt_convolve(const std::vector<std::uint64_t>& a,
                                               const std::vector<std::uint64_t>& b,
                                               std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  std::size_t n = 1;
  while (n < out_len) n <<= 1;
  if (n > kMaxNttLength) throw resource_error("ntt_convolve: product exceeds 2^26 coefficients");

  std::array<std::vector<std::uint32_t>, 3> residues;
  for (std::size_t t = 0; t < 3; ++t) {
    const NttPrime prime = kNttPrimes[t];
    std::vector<std::uint32_t> fa(n, 0), fb(n, 0);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = static_cast<std::uint32_t>(a[i] % prime.modulus);
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = static_cast<std::uint32_t>(b[i] % prime.modulus);
    ntt_inplace(fa, false, prime);
    ntt_inplace(fb, false, prime);
    for (std::size_t i = 0; i < n; ++i)
      fa[i] = static_cast<std::uint32_t>(std::uint64_t{fa[i]} * fb[i] % prime.modulus);
    fb.clear();
    fb.shrink_to_fit();
    ntt_inplace(fa, true, prime);
    fa.resize(out_len);
    residues[t] = std::move(fa);
  }

  const std::uint64_t m0 = kNttPrimes[0].modulus;
  const std::uint64_t m1 = kNttPrimes[1].modulus;
  const std::uint64_t m2 = kNttPrimes[2].modulus;
  const std::uint64_t inv_m0_mod_m1 = pow_mod32(m0, m1 - 2, static_cast<std::uint32_t>(m1));
  const std::uint64_t m0m1_mod_m2 = (m0 % m2) * (m1 % m2) % m2;
  const std::uint64_t inv_m0m1_mod_m2 = pow_mod32(m0m1_mod_m2, m2 - 2, static_cast<std::uint32_t>(m2));
  const unsigned __int128 m0m1 = static_cast<unsigned __int128>(m0) * m1;

  std::vector<std::uint64_t> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    const std::uint64_t r0 = residues[0][i], r1 = residues[1][i], r2 = residues[2][i];
    const std::uint64_t t1 = (r1 + m1 - r0 % m1) % m1 * inv_m0_mod_m1 % m1;
    const std::uint64_t x01 = r0 + m0 * t1;  // < m0 * m1 < 2^62
    const std::uint64_t t2 = (r2 + m2 - x01 % m2) % m2 * inv_m0m1_mod_m2 % m2;
    const unsigned __int128 value = x01 + m0m1 * t2;
    out[i] = static_cast<std::uint64_t>(value % p);
  }
  return out;
}

}  // namespace cmreduce::detail
