#pragma once

// Decomposition type of an unramified rational prime in a cyclic CM field,
// decided three independent ways: the residue of p modulo the conductor,
// Stickelberger's parity relation, and factoring the defining polynomials.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "cmreduce/bigint.hpp"
#include "cmreduce/errors.hpp"
#include "cmreduce/integer_poly.hpp"
#include "cmreduce/poly.hpp"

namespace cmreduce {

/// Cyclic CM field of degree two_g. When the conductor f is known, H is the
/// subgroup of (Z/f)^x fixing the field, given by generators (none = trivial).
struct CyclicCMField {
  std::string label;
  int two_g = 0;
  std::optional<std::uint64_t> conductor;
  std::vector<std::uint64_t> h_generators;
  BigInt discriminant;
  /// Monic integer polynomials whose compositum is the field.
  std::vector<ZPoly> defining_polys;

  int genus() const { return two_g / 2; }
};

struct SplittingType {
  int num_primes = 0;
  int inertia_degree = 0;
  bool ramified = false;

  friend bool operator==(const SplittingType&, const SplittingType&) = default;
};

inline SplittingType unramified_split(int two_g, int num_primes) {
  if (num_primes < 1 || two_g % num_primes != 0)
    throw domain_error("splitting: number of primes must divide the field degree");
  return {num_primes, two_g / num_primes, false};
}

/// Elements of H as a membership table indexed by residue mod f.
inline std::vector<bool> unit_subgroup_table(const CyclicCMField& field) {
  if (!field.conductor) throw missing_data("field " + field.label + ": conductor unknown");
  const std::uint64_t f = *field.conductor;
  std::vector<bool> in_h(f, false);
  std::vector<std::uint64_t> frontier = {1 % f};
  in_h[1 % f] = true;
  while (!frontier.empty()) {
    const std::uint64_t x = frontier.back();
    frontier.pop_back();
    for (std::uint64_t gen : field.h_generators) {
      const std::uint64_t y = x * (gen % f) % f;
      if (!in_h[y]) {
        in_h[y] = true;
        frontier.push_back(y);
      }
    }
  }
  return in_h;
}

/// Checks the descriptor invariants; throws schema_error describing the first violation.
inline void validate_field(const CyclicCMField& field) {
  const std::string where = "field " + field.label + ": ";
  if (field.two_g < 2 || field.two_g % 2 != 0) throw schema_error(where + "degree must be even and positive");
  if (field.discriminant == 0) throw schema_error(where + "discriminant must be nonzero");
  for (const auto& poly : field.defining_polys)
    if (zpoly_degree(poly) < 1 || poly[static_cast<std::size_t>(zpoly_degree(poly))] != 1)
      throw schema_error(where + "defining polynomials must be monic of positive degree");
  if (!field.conductor) {
    if (!field.h_generators.empty()) throw schema_error(where + "H given without a conductor");
    return;
  }
  const std::uint64_t f = *field.conductor;
  if (f < 3) throw schema_error(where + "conductor must be at least 3");
  for (std::uint64_t gen : field.h_generators)
    if (std::gcd(gen % f, f) != 1) throw schema_error(where + "H generator not a unit mod conductor");
  const auto in_h = unit_subgroup_table(field);
  std::uint64_t units = 0, h_size = 0;
  for (std::uint64_t x = 1; x < f; ++x) {
    if (std::gcd(x, f) != 1) continue;
    ++units;
    if (in_h[x]) ++h_size;
  }
  if (units != h_size * static_cast<std::uint64_t>(field.two_g))
    throw schema_error(where + "H must have index equal to the field degree");
  if (in_h[f - 1]) throw schema_error(where + "-1 lies in H, so the field would be totally real");
}

namespace detail {

inline int coset_order(std::uint64_t r, std::uint64_t f, const std::vector<bool>& in_h) {
  std::uint64_t x = r;
  int k = 1;
  while (!in_h[x]) {
    x = x * r % f;
    ++k;
  }
  return k;
}

}  // namespace detail

/// Inertia degree = order of pH in (Z/f)^x / H.
inline SplittingType split_by_residue(const CyclicCMField& field, const BigInt& p) {
  if (!field.conductor) throw missing_data("field " + field.label + ": conductor unknown");
  const std::uint64_t f = *field.conductor;
  const std::uint64_t r = mod_u64(p, f);
  if (std::gcd(r, f) != 1) throw ramified_prime(to_string(p) + " divides the conductor of " + field.label);
  const int inertia = detail::coset_order(r, f, unit_subgroup_table(field));
  if (field.two_g % inertia != 0) throw internal_inconsistency("split_by_residue: inertia degree does not divide 2g");
  return {field.two_g / inertia, inertia, false};
}

/// Units mod f grouped by the number of primes above p for p in that class.
inline std::map<int, std::vector<std::uint64_t>> residue_class_table(const CyclicCMField& field) {
  if (!field.conductor) throw missing_data("field " + field.label + ": conductor unknown");
  const std::uint64_t f = *field.conductor;
  const auto in_h = unit_subgroup_table(field);
  std::map<int, std::vector<std::uint64_t>> table;
  for (std::uint64_t r = 1; r < f; ++r) {
    if (std::gcd(r, f) != 1) continue;
    table[field.two_g / detail::coset_order(r, f, in_h)].push_back(r);
  }
  return table;
}

struct StickelbergerParity {
  int kronecker = 0;
  bool num_primes_even = false;
};

/// (D/p) = (-1)^(n - m) with n = 2g, m = number of primes above p.
inline StickelbergerParity stickelberger_parity(const CyclicCMField& field, const BigInt& p) {
  if (field.discriminant % p == 0) throw ramified_prime(to_string(p) + " divides the discriminant of " + field.label);
  const int k = kronecker(field.discriminant, p);
  // n is even, so m is even exactly when (D/p) = 1.
  return {k, k == 1};
}

/// Dedekind factorization oracle. Valid for abelian fields: the compositum's
/// inertia degree is the lcm of the factors' inertia degrees.
inline SplittingType split_by_factorization(const CyclicCMField& field, std::uint64_t p) {
  if (field.defining_polys.empty()) throw missing_data("field " + field.label + ": no defining polynomials");
  PrimeField F(p);
  int inertia = 1;
  for (const auto& poly : field.defining_polys) {
    const auto degrees = factor_degree_profile(F, zpoly_reduce(F, poly));
    if (degrees.front() != degrees.back())
      throw internal_inconsistency("split_by_factorization: unequal factor degrees for a Galois polynomial");
    inertia = std::lcm(inertia, degrees.front());
  }
  if (field.two_g % inertia != 0) throw internal_inconsistency("split_by_factorization: inertia degree does not divide 2g");
  return {field.two_g / inertia, inertia, false};
}

/// Target decomposition shape for prime search.
struct SplitTarget {
  int num_primes;
};
/// Target Kronecker symbol (D/p).
struct KroneckerTarget {
  int value;
};
using PrimeTarget = std::variant<SplitTarget, KroneckerTarget>;

/// Whether prime p (unramified) meets the target.
inline bool satisfies_target(const CyclicCMField& field, const PrimeTarget& target, const BigInt& p) {
  if (field.discriminant % p == 0) return false;
  if (const auto* k = std::get_if<KroneckerTarget>(&target)) return kronecker(field.discriminant, p) == k->value;
  const int want = std::get<SplitTarget>(target).num_primes;
  if (field.conductor) return split_by_residue(field, p).num_primes == want;
  if (!fits_u64(p) || p >= (BigInt(1) << 32)) throw missing_data("field " + field.label + ": conductor unknown and p too large to factor");
  try {
    return split_by_factorization(field, p.convert_to<std::uint64_t>()).num_primes == want;
  } catch (const not_squarefree&) {
    return false;
  }
}

struct FindPrimeOptions {
  std::uint64_t max_attempts = 1'000'000;
};

/// Random prime in [2^bits, 2^(bits+1)) meeting the target; deterministic per seed.
inline BigInt find_prime(const CyclicCMField& field, const PrimeTarget& target, unsigned bits, std::uint64_t seed,
                         const FindPrimeOptions& options = {}) {
  if (bits < 2) throw domain_error("find_prime: bit size must be at least 2");
  std::mt19937_64 rng(seed);
  const BigInt lo = pow2(bits);
  const BigInt hi = pow2(bits + 1);

  if (const auto* split = std::get_if<SplitTarget>(&target); split && field.conductor) {
    const std::uint64_t f = *field.conductor;
    const auto table = residue_class_table(field);
    const auto it = table.find(split->num_primes);
    if (it == table.end()) throw search_timeout("find_prime: no residue class mod conductor gives that splitting");
    const auto& residues = it->second;
    std::uniform_int_distribution<std::size_t> pick(0, residues.size() - 1);
    for (std::uint64_t attempt = 0; attempt < options.max_attempts; ++attempt) {
      const std::uint64_t r = residues[pick(rng)];
      // p = r + k f with lo <= p < hi.
      const BigInt kmin = (lo - r + f - 1) / f;
      const BigInt kmax = (hi - 1 - r) / f;
      if (kmin > kmax) continue;
      const BigInt p = r + f * (kmin + random_below(kmax - kmin + 1, rng));
      if (is_prime(p) && satisfies_target(field, target, p)) return p;
    }
    throw search_timeout("find_prime: attempt budget exhausted");
  }

  for (std::uint64_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    const BigInt p = (lo + random_below(lo, rng)) | 1;
    if (std::holds_alternative<KroneckerTarget>(target) &&
        kronecker(field.discriminant, p) != std::get<KroneckerTarget>(target).value)
      continue;
    if (is_prime(p) && satisfies_target(field, target, p)) return p;
  }
  throw search_timeout("find_prime: attempt budget exhausted");
}

}  // namespace cmreduce
