#pragma once

// Reduction type predicted from the splitting of p: Deuring (g = 1),
// Goren (g = 2), cyclic sextic fields (g = 3) and the general cyclic case,
// with the type-norm and Ekedahl computations behind them.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cmreduce/bigint.hpp"
#include "cmreduce/cm_types.hpp"
#include "cmreduce/errors.hpp"
#include "cmreduce/invariants.hpp"
#include "cmreduce/splitting.hpp"

namespace cmreduce {

enum class Certainty { exact, partial };

inline const char* to_string(Certainty c) { return c == Certainty::exact ? "exact" : "partial"; }

struct Prediction {
  ReductionProfile profile;
  Certainty certainty = Certainty::exact;
  std::string source_theorem;
};

namespace detail {

inline std::vector<Slope> ordinary_slopes(int g) {
  std::vector<Slope> s(static_cast<std::size_t>(g), Slope{0, 1});
  s.insert(s.end(), static_cast<std::size_t>(g), Slope{1, 1});
  return s;
}

inline std::vector<Slope> supersingular_slopes(int g) { return std::vector<Slope>(static_cast<std::size_t>(2 * g), Slope{1, 2}); }

inline Prediction make_prediction(int g, int f, int a, std::optional<std::vector<Slope>> slopes, Certainty c,
                                  const char* source) {
  Prediction p{describe_profile(g, f, a, std::move(slopes)), c, source};
  validate_profile(p.profile);
  return p;
}

inline void require_unramified(const SplittingType& s) {
  if (s.ramified) throw ramified_prime("prediction: p is ramified; the theorem assumes p unramified");
}

}  // namespace detail

/// Split: ordinary. Inert or ramified: supersingular.
inline Prediction predict_g1(const SplittingType& s) {
  constexpr const char* src = "deuring-g1";
  if (!s.ramified && s.num_primes == 2) return detail::make_prediction(1, 1, 0, detail::ordinary_slopes(1), Certainty::exact, src);
  if (s.ramified || s.num_primes == 1)
    return detail::make_prediction(1, 0, 1, detail::supersingular_slopes(1), Certainty::exact, src);
  throw domain_error("predict_g1: imaginary quadratic fields have at most two primes above p");
}

inline Prediction predict_g2(const SplittingType& s) {
  constexpr const char* src = "goren-g2";
  detail::require_unramified(s);
  switch (s.num_primes) {
    case 4: return detail::make_prediction(2, 2, 0, detail::ordinary_slopes(2), Certainty::exact, src);
    case 2: return detail::make_prediction(2, 0, 2, detail::supersingular_slopes(2), Certainty::exact, src);
    case 1: return detail::make_prediction(2, 0, 1, detail::supersingular_slopes(2), Certainty::exact, src);
    default: throw domain_error("predict_g2: number of primes must divide 4");
  }
}

/// Primitive type on a cyclic sextic field.
inline Prediction predict_g3(const SplittingType& s) {
  constexpr const char* src = "cyclic-sextic-g3";
  detail::require_unramified(s);
  switch (s.num_primes) {
    case 6: return detail::make_prediction(3, 3, 0, detail::ordinary_slopes(3), Certainty::exact, src);
    case 3: return detail::make_prediction(3, 0, 3, detail::supersingular_slopes(3), Certainty::exact, src);
    case 2: return detail::make_prediction(3, 0, 2, std::nullopt, Certainty::partial, src);
    case 1: return detail::make_prediction(3, 0, 1, std::nullopt, Certainty::partial, src);
    default: throw domain_error("predict_g3: number of primes must divide 6");
  }
}

/// Primitive type on a cyclic field of degree 2g. Empty when the theorem is silent.
inline std::optional<Prediction> predict_general(int g, const SplittingType& s) {
  constexpr const char* src = "cyclic-general";
  detail::require_unramified(s);
  if (g < 1 || s.num_primes < 1 || (2 * g) % s.num_primes != 0) throw domain_error("predict_general: number of primes must divide 2g");
  if (s.num_primes == 2 * g) return detail::make_prediction(g, g, 0, detail::ordinary_slopes(g), Certainty::exact, src);
  if (s.num_primes == g) return detail::make_prediction(g, 0, g, detail::supersingular_slopes(g), Certainty::exact, src);
  return std::nullopt;
}

/// The most specific applicable theorem for genus g.
inline std::optional<Prediction> predict(int g, const SplittingType& s) {
  switch (g) {
    case 1: return predict_g1(s);
    case 2: return predict_g2(s);
    case 3: return predict_g3(s);
    default: return predict_general(g, s);
  }
}

/// Ideal exponents of the reflex type norm of p_1, with tau(p_i) = p_{i+1}.
struct TypeNorm {
  std::vector<int> exponents;
  /// All exponents equal: the norm is a power of (p) and A[p] is local-local.
  bool constant = false;
  int zero_count = 0;
};

inline TypeNorm type_norm_orbit(const CMType& phi, int num_primes) {
  const int n = phi.degree();
  if (num_primes < 1 || n % num_primes != 0) throw domain_error("type_norm_orbit: number of primes must divide 2g");
  TypeNorm out;
  out.exponents.assign(static_cast<std::size_t>(num_primes), 0);
  for (int s : reflex(phi).exponents()) ++out.exponents[static_cast<std::size_t>(s % num_primes)];
  out.constant = std::adjacent_find(out.exponents.begin(), out.exponents.end(), std::not_equal_to<>()) == out.exponents.end();
  out.zero_count = static_cast<int>(std::count(out.exponents.begin(), out.exponents.end(), 0));
  return out;
}

/// sigma Phi-bar = Phi for sigma = tau^e.
inline bool ekedahl_check(const CMType& phi, int frobenius_exponent) {
  return conjugate(phi).shifted(frobenius_exponent) == phi;
}

/// Exponents of the generators of the decomposition group (order 2g / num_primes).
inline std::vector<int> frobenius_candidates(int g, int num_primes) {
  const int n = 2 * g;
  if (num_primes < 1 || n % num_primes != 0) throw domain_error("frobenius_candidates: number of primes must divide 2g");
  const int order = n / num_primes;
  std::vector<int> out;
  for (int u = 1; u <= order; ++u)
    if (std::gcd(u, order) == 1) out.push_back(num_primes * u % n);
  return out;
}

/// Unanimous Ekedahl verdict over all Frobenius candidates; empty if they disagree.
inline std::optional<bool> superspecial_by_ekedahl(const CMType& phi, int num_primes) {
  std::optional<bool> verdict;
  for (int e : frobenius_candidates(phi.genus(), num_primes)) {
    const bool v = ekedahl_check(phi, e);
    if (verdict && *verdict != v) return std::nullopt;
    verdict = v;
  }
  return verdict;
}

/// Degree of the non-integer endomorphism coming from real multiplication by Q(sqrt d).
inline BigInt rm_endo_degree(std::int64_t d) {
  auto squarefree = [](std::int64_t m) {
    for (std::int64_t q = 2; q * q <= m; ++q)
      if (m % (q * q) == 0) return false;
    return true;
  };
  const bool fundamental = d > 1 && ((d % 4 == 1 && squarefree(d)) ||
                                     (d % 4 == 0 && (d / 4 % 4 == 2 || d / 4 % 4 == 3) && squarefree(d / 4)));
  if (!fundamental) throw domain_error("rm_endo_degree: " + std::to_string(d) + " is not a positive fundamental discriminant");
  if (d % 4 == 1) return BigInt(d - 1) * (d - 1) / 16;
  return BigInt(d) * d;
}

enum class SmallnessCase { product, isogeny };

/// M^2 for a product of two M-small curves; M N^2 after an isogeny of degree N.
inline BigInt m_small_compose(const BigInt& m, const BigInt& n, SmallnessCase c) {
  if (m < 1 || n < 1) throw domain_error("m_small_compose: bounds must be positive");
  return c == SmallnessCase::product ? BigInt(m * m) : BigInt(m * n * n);
}

}  // namespace cmreduce
