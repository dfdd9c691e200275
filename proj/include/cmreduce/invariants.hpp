#pragma once

// Invariants of y^2 = f(x) over a small prime field: Cartier-Manin matrices,
// p-rank, a-number, point counts, L-polynomial, Newton slopes and the
// p-torsion group scheme for g <= 3.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cmreduce/bigint.hpp"
#include "cmreduce/errors.hpp"
#include "cmreduce/ext_field.hpp"
#include "cmreduce/integer_poly.hpp"
#include "cmreduce/matrix.hpp"
#include "cmreduce/poly.hpp"
#include "cmreduce/prime_field.hpp"

namespace cmreduce {

/// Largest field size point_count will enumerate.
inline constexpr std::uint64_t kPointCountBudget = std::uint64_t{1} << 26;

class ReducedCurve {
 public:
  /// Genus is read off the degree: deg f in {2g+1, 2g+2}.
  ReducedCurve(const PrimeField& field, Poly f) : field_(field), f_(std::move(f)) {
    if (field_.characteristic() == 2) throw domain_error("ReducedCurve: characteristic 2 unsupported");
    const long d = f_.degree();
    if (d < 3) throw domain_error("ReducedCurve: degree must be at least 3");
    g_ = static_cast<int>((d - 1) / 2);
    if (!is_squarefree(field_, f_)) throw bad_reduction("ReducedCurve: f is not squarefree mod " + std::to_string(field_.characteristic()));
  }

  int genus() const { return g_; }
  std::uint64_t p() const { return field_.characteristic(); }
  const PrimeField& field() const { return field_; }
  const Poly& f() const { return f_; }

 private:
  PrimeField field_;
  Poly f_;
  int g_ = 0;
};

/// A_0, ..., A_{g-1}. The matrices refer to curve.field(), so the curve must outlive them.
inline std::vector<Matrix<PrimeField>> cartier_manin(const ReducedCurve& curve,
                                                     std::size_t degree_cap = kDefaultDegreeCap) {
  const PrimeField& F = curve.field();
  const std::uint64_t p = curve.p();
  const int g = curve.genus();
  const Poly h = poly_pow(F, curve.f(), (p - 1) / 2, degree_cap);
  std::vector<Matrix<PrimeField>> out;
  for (int l = 0; l < g; ++l) {
    Matrix<PrimeField> a(F, static_cast<std::size_t>(g), static_cast<std::size_t>(g));
    for (int i = 1; i <= g; ++i)
      for (int j = 1; j <= g; ++j) {
        const std::uint64_t idx = static_cast<std::uint64_t>(i) * p - static_cast<std::uint64_t>(j);
        std::uint64_t c = h.coeff(idx);
        for (int t = 0; t < l; ++t) c = F.pow(c, p);
        a(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = c;
      }
    out.push_back(std::move(a));
  }
  return out;
}

struct CartierManinInvariants {
  int p_rank = 0;
  int a_number = 0;
};

/// f = rank(A_{g-1} ... A_0); a = g - rank(A_0).
inline CartierManinInvariants cartier_manin_invariants(const ReducedCurve& curve,
                                                       std::size_t degree_cap = kDefaultDegreeCap) {
  const auto mats = cartier_manin(curve, degree_cap);
  Matrix<PrimeField> m = mats[0];
  for (std::size_t l = 1; l < mats.size(); ++l) m = matrix_mul(mats[l], m);
  const int g = curve.genus();
  return {static_cast<int>(matrix_rank(m)), g - static_cast<int>(matrix_rank(mats[0]))};
}

inline int p_rank(const ReducedCurve& curve) { return cartier_manin_invariants(curve).p_rank; }
inline int a_number(const ReducedCurve& curve) { return cartier_manin_invariants(curve).a_number; }

namespace detail {

inline std::uint64_t checked_power(std::uint64_t p, unsigned k, std::uint64_t budget) {
  unsigned __int128 q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > budget) throw resource_error("point_count: p^k exceeds the enumeration budget");
  }
  return static_cast<std::uint64_t>(q);
}

}  // namespace detail

/// #C(F_{p^k}) on the smooth model: affine points plus the points at infinity.
inline std::uint64_t point_count(const ReducedCurve& curve, unsigned k, std::uint64_t budget = kPointCountBudget) {
  if (k < 1) throw domain_error("point_count: extension degree must be positive");
  const std::uint64_t p = curve.p();
  const std::uint64_t q = detail::checked_power(p, k, budget);
  const PrimeField& F = curve.field();
  const auto& coeffs = curve.f().coeffs();
  const bool odd_degree = curve.f().degree() % 2 == 1;
  const std::uint64_t lc = curve.f().lead();

  std::uint64_t count = 0;
  if (k == 1) {
    std::vector<char> square(p, 0);
    for (std::uint64_t x = 1; x < p; ++x) square[F.mul(x, x)] = 1;
    for (std::uint64_t x = 0; x < p; ++x) {
      const std::uint64_t v = poly_eval(F, curve.f(), x);
      count += v == 0 ? 1 : (square[v] ? 2 : 0);
    }
  } else {
    const ExtField E(p, k);
    std::vector<bool> square(q, false);
    for (std::uint64_t i = 1; i < q; ++i) {
      const auto x = E.from_index(i);
      square[E.to_index(E.mul(x, x))] = true;
    }
    for (std::uint64_t i = 0; i < q; ++i) {
      const auto x = E.from_index(i);
      ExtElement acc = E.zero();
      for (std::size_t j = coeffs.size(); j-- > 0;) acc = E.add(E.mul(acc, x), E.from_base(coeffs[j]));
      if (E.is_zero(acc))
        count += 1;
      else if (square[E.to_index(acc)])
        count += 2;
    }
  }
  if (odd_degree) {
    count += 1;
  } else {
    // Every element of F_p is a square in F_{p^k} once k is even.
    const bool lc_square = k % 2 == 0 || F.legendre(lc) == 1;
    if (lc_square) count += 2;
  }
  return count;
}

/// Integer binomial coefficient.
inline BigInt binomial(unsigned n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// L(T) = sum a_i T^i, a_0 = 1, degree 2g, from #C(F_{p^k}) for k = 1..g.
inline ZPoly l_polynomial(const ReducedCurve& curve, std::uint64_t budget = kPointCountBudget) {
  const int g = curve.genus();
  const BigInt p = curve.p();
  detail::checked_power(curve.p(), static_cast<unsigned>(g), budget);
  std::vector<BigInt> s(static_cast<std::size_t>(g) + 1, 0);
  for (int k = 1; k <= g; ++k) {
    const BigInt pk = boost::multiprecision::pow(p, static_cast<unsigned>(k));
    s[static_cast<std::size_t>(k)] = pk + 1 - BigInt(point_count(curve, static_cast<unsigned>(k), budget));
  }
  ZPoly a(static_cast<std::size_t>(2 * g) + 1, 0);
  a[0] = 1;
  for (int k = 1; k <= g; ++k) {
    BigInt acc = 0;
    for (int i = 1; i <= k; ++i) acc += s[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(k - i)];
    if (acc % k != 0) throw internal_inconsistency("l_polynomial: Newton identity produced a non-integer coefficient");
    a[static_cast<std::size_t>(k)] = -acc / k;
  }
  BigInt pi = 1;
  for (int i = 1; i <= g; ++i) {
    pi *= p;
    a[static_cast<std::size_t>(g + i)] = pi * a[static_cast<std::size_t>(g - i)];
  }
  for (int i = 0; i <= 2 * g; ++i) {
    const BigInt c = binomial(static_cast<unsigned>(2 * g), static_cast<unsigned>(std::min(i, 2 * g - i)));
    const BigInt bound = c * c * boost::multiprecision::pow(p, static_cast<unsigned>(i));
    if (a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)] > bound)
      throw internal_inconsistency("l_polynomial: coefficient violates the Weil bound");
  }
  return a;
}

/// Exact rational slope num/den in lowest terms, den > 0.
struct Slope {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Slope make(std::int64_t n, std::int64_t d) {
    if (d == 0) throw domain_error("Slope: zero denominator");
    if (d < 0) n = -n, d = -d;
    const std::int64_t c = std::gcd(n, d);
    return {n / c, d / c};
  }
  friend bool operator==(const Slope&, const Slope&) = default;
  friend std::strong_ordering operator<=>(const Slope& a, const Slope& b) { return a.num * b.den <=> b.num * a.den; }

  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

inline Slope operator+(const Slope& a, const Slope& b) { return Slope::make(a.num * b.den + b.num * a.den, a.den * b.den); }

/// Exponent of p in a nonzero integer.
inline int p_adic_valuation(BigInt v, const BigInt& p) {
  if (v == 0) throw domain_error("p_adic_valuation: zero has infinite valuation");
  int e = 0;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  return e;
}

/// Slopes of the lower convex hull of (i, ord_p a_i), each repeated by its horizontal run.
inline std::vector<Slope> newton_slopes(const ZPoly& l, std::uint64_t p) {
  const long n = zpoly_degree(l);
  if (l.empty() || l[0] != 1) throw domain_error("newton_slopes: constant term must be 1");
  if (n < 1) throw domain_error("newton_slopes: degree must be positive");
  std::vector<std::pair<long, int>> pts;
  for (long i = 0; i <= n; ++i)
    if (l[static_cast<std::size_t>(i)] != 0) pts.emplace_back(i, p_adic_valuation(l[static_cast<std::size_t>(i)], p));
  std::vector<Slope> out;
  std::size_t cur = 0;
  while (pts[cur].first != n) {
    std::size_t best = cur + 1;
    Slope best_slope = Slope::make(pts[best].second - pts[cur].second, pts[best].first - pts[cur].first);
    for (std::size_t j = cur + 2; j < pts.size(); ++j) {
      const Slope s = Slope::make(pts[j].second - pts[cur].second, pts[j].first - pts[cur].first);
      if (s <= best_slope) {
        best = j;
        best_slope = s;
      }
    }
    for (long r = pts[cur].first; r < pts[best].first; ++r) out.push_back(best_slope);
    cur = best;
  }
  return out;
}

struct ReductionProfile {
  int genus = 0;
  int p_rank = 0;
  int a_number = 0;
  std::optional<std::vector<Slope>> slopes;
  std::string group_scheme;
  std::string type_name;
};

/// Throws internal_inconsistency when the profile breaks a structural invariant.
inline void validate_profile(const ReductionProfile& r) {
  const int g = r.genus;
  if (r.p_rank < 0 || r.p_rank > g || r.a_number < 0 || r.a_number + r.p_rank < 1 || r.a_number + r.p_rank > g)
    throw internal_inconsistency("profile: need 0 <= f <= g and 1 <= a + f <= g");
  if (!r.slopes) return;
  const auto& s = *r.slopes;
  if (s.size() != static_cast<std::size_t>(2 * g)) throw internal_inconsistency("profile: expected 2g slopes");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] + s[s.size() - 1 - i] != Slope{1, 1}) throw internal_inconsistency("profile: slopes not symmetric under s -> 1 - s");
  if (std::count(s.begin(), s.end(), Slope{0, 1}) != r.p_rank)
    throw internal_inconsistency("profile: p-rank differs from the number of zero slopes");
}

inline bool all_slopes_half(const std::vector<Slope>& s) {
  return std::all_of(s.begin(), s.end(), [](const Slope& x) { return x == Slope{1, 2}; });
}

inline bool slopes_thirds(const std::vector<Slope>& s) {
  return std::all_of(s.begin(), s.end(), [](const Slope& x) { return x == Slope{1, 3} || x == Slope{2, 3}; });
}

/// p-torsion label and stratum name from (f, a) and, when they matter, the slopes.
inline ReductionProfile classify_group_scheme(int g, int f, int a, std::optional<std::vector<Slope>> slopes = std::nullopt) {
  ReductionProfile r{g, f, a, std::move(slopes), "", ""};
  if (g < 1 || g > 3) throw domain_error("classify_group_scheme: tables exist only for g <= 3");
  if (f < 0 || f > g || a < 0 || a + f < 1 || a + f > g) throw domain_error("classify_group_scheme: inconsistent (f, a)");
  auto set = [&](const char* gs, const char* type) {
    r.group_scheme = gs;
    r.type_name = type;
  };
  const auto& s = r.slopes;
  if (g == 1) {
    if (f == 1) set("L", "ordinary");
    else set("I_{1,1}", "supersingular");
  } else if (g == 2) {
    if (f == 2) set("L^2", "ordinary");
    else if (f == 1) set("L+I_{1,1}", "non-ordinary");
    else if (a == 1) set("I_{2,1}", "supersingular non-superspecial");
    else set("I_{1,1}^2", "superspecial");
  } else if (f == 3) {
    set("L^3", "ordinary");
  } else if (f == 2) {
    set("L^2+I_{1,1}", "non-ordinary (1)");
  } else if (f == 1) {
    if (a == 1) set("L+I_{2,1}", "non-ordinary (2)");
    else set("L+I_{1,1}^2", "non-ordinary (3)");
  } else if (a == 3) {
    set("I_{1,1}^3", "superspecial");
  } else if (a == 1) {
    if (!s) set("I_{3,1}", "mixed (1) or supersingular");
    else if (slopes_thirds(*s)) set("I_{3,1}", "mixed (1)");
    else if (all_slopes_half(*s)) set("I_{3,1}", "supersingular (outlier)");
    else throw domain_error("classify_group_scheme: slopes impossible for p-rank 0, a-number 1");
  } else {
    if (!s) set("ambiguous: I_{3,2} or I_{1,1}+I_{2,1}", "mixed (2) or supersingular");
    else if (slopes_thirds(*s)) set("I_{3,2}", "mixed (2)");
    else if (all_slopes_half(*s)) set("ambiguous: I_{3,2} or I_{1,1}+I_{2,1}", "supersingular");
    else throw domain_error("classify_group_scheme: slopes impossible for p-rank 0, a-number 2");
  }
  return r;
}

/// Beyond the tables: a coarse stratum name, no group scheme.
inline ReductionProfile describe_profile(int g, int f, int a, std::optional<std::vector<Slope>> slopes = std::nullopt) {
  if (g <= 3) return classify_group_scheme(g, f, a, std::move(slopes));
  ReductionProfile r{g, f, a, std::move(slopes), "unclassified", ""};
  if (f == g) r.type_name = "ordinary";
  else if (a == g) r.type_name = "superspecial";
  else if (r.slopes && all_slopes_half(*r.slopes)) r.type_name = "supersingular";
  else r.type_name = "non-ordinary";
  return r;
}

struct InvariantsReport {
  ReductionProfile profile;
  std::optional<ZPoly> l_poly;
};

struct InvariantsOptions {
  /// L-polynomial is computed only when p^g is at most this.
  std::uint64_t lpoly_budget = std::uint64_t{1} << 21;
  std::size_t degree_cap = kDefaultDegreeCap;
};

inline InvariantsReport compute_invariants(const ReducedCurve& curve, const InvariantsOptions& options = {}) {
  const auto cm = cartier_manin_invariants(curve, options.degree_cap);
  InvariantsReport out;
  std::optional<std::vector<Slope>> slopes;
  const int g = curve.genus();
  unsigned __int128 q = 1;
  for (int i = 0; i < g && q <= options.lpoly_budget; ++i) q *= curve.p();
  if (q <= options.lpoly_budget) {
    out.l_poly = l_polynomial(curve, options.lpoly_budget);
    slopes = newton_slopes(*out.l_poly, curve.p());
  }
  out.profile = describe_profile(g, cm.p_rank, cm.a_number, std::move(slopes));
  validate_profile(out.profile);
  return out;
}

}  // namespace cmreduce
