#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "cmreduce/bigint.hpp"
#include "cmreduce/ext_field.hpp"
#include "cmreduce/integer_poly.hpp"
#include "cmreduce/matrix.hpp"
#include "cmreduce/ntt.hpp"
#include "cmreduce/poly.hpp"
#include "cmreduce/prime_field.hpp"

using namespace cmreduce;

namespace {

std::vector<std::uint64_t> sieve(std::uint64_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

// Legendre symbol by Euler's criterion.
int euler_legendre(std::int64_t a, std::uint64_t p) {
  std::uint64_t r = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) % static_cast<std::int64_t>(p));
  if (r == 0) return 0;
  std::uint64_t acc = 1, base = r, e = (p - 1) / 2;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return acc == 1 ? 1 : -1;
}

// Jacobi symbol as a product of Legendre symbols over the factorization of n.
int jacobi_by_factoring(std::int64_t a, std::uint64_t n) {
  int r = 1;
  for (std::uint64_t q = 3; n > 1; q += 2) {
    while (n % q == 0) {
      r *= euler_legendre(a, q);
      n /= q;
    }
  }
  return r;
}

Poly random_poly(std::mt19937_64& rng, std::uint64_t p, std::size_t len) {
  std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
  std::vector<std::uint64_t> v(len);
  for (auto& c : v) c = d(rng);
  return Poly(std::move(v));
}

int mobius_small(unsigned n) {
  int r = 1;
  for (unsigned q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    n /= q;
    if (n % q == 0) return 0;
    r = -r;
  }
  return n > 1 ? -r : r;
}

}  // namespace

TEST(BigInt, ParsesShorthand) {
  EXPECT_EQ(parse_bigint("2^128+51"), (BigInt(1) << 128) + 51);
  EXPECT_EQ(parse_bigint("2^10-3"), BigInt(1021));
  EXPECT_EQ(parse_bigint("-17"), BigInt(-17));
  EXPECT_EQ(to_string(parse_bigint("340282366920938463463374607431768211507")), "340282366920938463463374607431768211507");
  EXPECT_THROW(parse_bigint("12a"), domain_error);
  EXPECT_THROW(parse_bigint(""), domain_error);
}

TEST(BigInt, KroneckerMatchesEulerCriterionOnOddPrimes) {
  for (std::uint64_t p : sieve(200)) {
    if (p == 2) continue;
    for (std::int64_t a = -50; a <= 50; ++a) EXPECT_EQ(kronecker(a, p), euler_legendre(a, p)) << a << " " << p;
  }
}

TEST(BigInt, KroneckerMatchesJacobiOnOddComposites) {
  for (std::uint64_t n = 3; n < 300; n += 2)
    for (std::int64_t a = -30; a <= 30; ++a) EXPECT_EQ(kronecker(a, n), jacobi_by_factoring(a, n)) << a << " " << n;
}

TEST(BigInt, KroneckerAtTwo) {
  // (a/2) = 0 for even a, 1 for a = +-1 mod 8, -1 for a = +-3 mod 8.
  for (std::int64_t a = -40; a <= 40; ++a) {
    const std::int64_t r = ((a % 8) + 8) % 8;
    const int want = a % 2 == 0 ? 0 : (r == 1 || r == 7 ? 1 : -1);
    EXPECT_EQ(kronecker(a, 2), want) << a;
  }
  EXPECT_EQ(kronecker(125, 2), -1);
}

TEST(BigInt, PrimalityMatchesSieve) {
  const auto primes = sieve(20000);
  std::set<std::uint64_t> ps(primes.begin(), primes.end());
  for (std::uint64_t n = 0; n <= 20000; ++n) EXPECT_EQ(is_prime(BigInt(n)), ps.count(n) == 1) << n;
}

TEST(BigInt, PrimalityOfKnownLargeNumbers) {
  EXPECT_TRUE(is_prime(parse_bigint("2^128+51")));
  EXPECT_TRUE(is_prime(parse_bigint("2^127-1")));
  EXPECT_TRUE(is_prime(parse_bigint("2^61-1")));
  EXPECT_FALSE(is_prime(parse_bigint("2^128+1")));
  EXPECT_FALSE(is_prime(BigInt("3825123056546413051")));  // strong pseudoprime to bases 2..23
  EXPECT_FALSE(is_prime(parse_bigint("2^127-1") * parse_bigint("2^61-1")));
}

TEST(BigInt, LargePrimeMatchesIndependentKronecker) {
  const BigInt p = parse_bigint("2^128+51");
  EXPECT_EQ(mod_u64(p, 65), 47u);  // -18 mod 65
  EXPECT_EQ(kronecker(BigInt(21125), p), -1);
}

TEST(PrimeField, RejectsBadModulus) {
  EXPECT_THROW(PrimeField(15), domain_error);
  EXPECT_THROW(PrimeField(1), domain_error);
  EXPECT_THROW(PrimeField(std::uint64_t{1} << 33), resource_error);
}

TEST(PrimeField, InverseAndFermat) {
  for (std::uint64_t p : {3ull, 13ull, 65537ull, 4294967291ull}) {
    PrimeField F(p);
    std::mt19937_64 rng(p);
    for (int i = 0; i < 200; ++i) {
      const std::uint64_t a = 1 + rng() % (p - 1);
      EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
      EXPECT_EQ(F.pow(a, p - 1), 1u);
    }
    EXPECT_THROW(F.inv(0), domain_error);
  }
}

TEST(Poly, MultiplicationAgreesWithSchoolbookOracle) {
  std::mt19937_64 rng(7);
  for (std::uint64_t p : {3ull, 1000003ull, 4294967291ull}) {
    PrimeField F(p);
    for (std::size_t n : {1, 5, 49, 200, 1500}) {
      const Poly a = random_poly(rng, p, n), b = random_poly(rng, p, n + 13);
      std::vector<unsigned __int128> ref(a.coeffs().size() + b.coeffs().size(), 0);
      std::vector<std::uint64_t> want(ref.size(), 0);
      for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
          want[i + j] = static_cast<std::uint64_t>((want[i + j] + static_cast<unsigned __int128>(a.coeffs()[i]) * b.coeffs()[j]) % p);
      EXPECT_EQ(poly_mul(F, a, b), Poly(want)) << p << " " << n;
    }
  }
}

TEST(Poly, DivmodReconstructs) {
  std::mt19937_64 rng(11);
  PrimeField F(101);
  for (int t = 0; t < 100; ++t) {
    const Poly a = random_poly(rng, 101, 1 + rng() % 40), b = random_poly(rng, 101, 1 + rng() % 20);
    if (b.is_zero()) continue;
    const auto [q, r] = poly_divmod(F, a, b);
    EXPECT_LT(r.degree(), b.degree());
    EXPECT_EQ(poly_add(F, poly_mul(F, q, b), r), a);
  }
  EXPECT_THROW(poly_divmod(F, Poly::x(), Poly{}), domain_error);
}

TEST(Poly, GcdOfProducts) {
  PrimeField F(13);
  const Poly a = poly_from_ints(F, {1, 1});     // x + 1
  const Poly b = poly_from_ints(F, {2, 0, 1});  // x^2 + 2
  const Poly c = poly_from_ints(F, {5, 1});     // x + 5
  EXPECT_EQ(poly_gcd(F, poly_mul(F, a, b), poly_mul(F, a, c)), a);
  EXPECT_EQ(poly_gcd(F, b, c).degree(), 0);
}

TEST(Poly, PowMatchesRepeatedMultiplication) {
  PrimeField F(17);
  const Poly f = poly_from_ints(F, {3, 0, 5, 1});
  Poly acc = Poly::constant(1);
  for (std::uint64_t e = 0; e < 12; ++e) {
    EXPECT_EQ(poly_pow(F, f, e), acc) << e;
    acc = poly_mul(F, acc, f);
  }
}

TEST(Poly, PowNearCapUsesNtt) {
  // (x + 1)^(p-1) over F_p has every coefficient (-1)^i.
  const std::uint64_t p = 1048573;
  PrimeField F(p);
  const Poly r = poly_pow(F, poly_from_ints(F, {1, 1}), p - 1);
  ASSERT_EQ(r.degree(), static_cast<long>(p - 1));
  for (std::uint64_t i = 0; i < p; i += 9973) EXPECT_EQ(r.coeff(i), i % 2 ? p - 1 : 1u) << i;
}

TEST(Poly, PowRespectsDegreeCap) {
  PrimeField F(7);
  EXPECT_THROW(poly_pow(F, poly_from_ints(F, {1, 1}), 100, 50), resource_error);
  EXPECT_THROW(poly_pow(F, Poly{}, 3), domain_error);
}

TEST(Poly, IrreducibleCountMatchesGaussFormula) {
  // Monic irreducibles of degree k over F_p: (1/k) sum_{d|k} mu(d) p^(k/d).
  for (std::uint64_t p : {2ull, 3ull, 5ull}) {
    PrimeField F(p);
    for (unsigned k = 1; k <= 4; ++k) {
      std::int64_t want = 0;
      for (unsigned d = 1; d <= k; ++d)
        if (k % d == 0) {
          std::int64_t pw = 1;
          for (unsigned i = 0; i < k / d; ++i) pw *= static_cast<std::int64_t>(p);
          want += mobius_small(d) * pw;
        }
      want /= k;
      std::uint64_t total = 1;
      for (unsigned i = 0; i < k; ++i) total *= p;
      std::int64_t got = 0;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<std::uint64_t> v(k + 1);
        std::uint64_t x = idx;
        for (unsigned i = 0; i < k; ++i) v[i] = x % p, x /= p;
        v[k] = 1;
        if (is_irreducible(F, Poly(v))) ++got;
      }
      EXPECT_EQ(got, want) << "p=" << p << " k=" << k;
    }
  }
}

TEST(Poly, FindIrreducibleIsDeterministic) {
  const Poly a = find_irreducible(13, 5, 99), b = find_irreducible(13, 5, 99);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(is_irreducible(PrimeField(13), a));
  EXPECT_EQ(find_irreducible(13, 1), Poly::x());
}

TEST(Poly, FactorDegreeProfileOfKnownProducts) {
  PrimeField F(7);
  // (x - 1)(x - 2)(x^2 + 1)(cubic); x^2 + 1 is irreducible mod 7.
  const Poly q = poly_from_ints(F, {1, 0, 1});
  Poly cubic;
  for (const auto& c : std::vector<std::vector<std::int64_t>>{{1, 1, 0, 1}, {2, 1, 0, 1}, {3, 1, 0, 1}, {1, 2, 0, 1}})
    if (is_irreducible(F, poly_from_ints(F, c))) {
      cubic = poly_from_ints(F, c);
      break;
    }
  ASSERT_EQ(cubic.degree(), 3);
  Poly f = poly_mul(F, poly_from_ints(F, {-1, 1}), poly_from_ints(F, {-2, 1}));
  f = poly_mul(F, poly_mul(F, f, q), cubic);
  EXPECT_EQ(factor_degree_profile(F, f), (std::vector<int>{1, 1, 2, 3}));
  EXPECT_THROW(factor_degree_profile(F, poly_mul(F, q, q)), not_squarefree);
  EXPECT_THROW(factor_degree_profile(F, poly_from_ints(F, {1, 2})), domain_error);
}

TEST(Poly, CyclotomicFactorDegrees) {
  // x^4 + x^3 + x^2 + x + 1 mod p splits into factors of degree ord_5(p).
  PrimeField F(11);
  EXPECT_EQ(factor_degree_profile(F, poly_from_ints(F, {1, 1, 1, 1, 1})), (std::vector<int>{1, 1, 1, 1}));
  PrimeField G(19);
  EXPECT_EQ(factor_degree_profile(G, poly_from_ints(G, {1, 1, 1, 1, 1})), (std::vector<int>{2, 2}));
  PrimeField H(7);
  EXPECT_EQ(factor_degree_profile(H, poly_from_ints(H, {1, 1, 1, 1, 1})), (std::vector<int>{4}));
}

TEST(ExtField, FieldAxiomsAndFrobenius) {
  const ExtField E(5, 3);
  EXPECT_EQ(E.cardinality(), 125u);
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < E.cardinality(); ++i) {
    const auto a = E.from_index(i);
    EXPECT_EQ(E.to_index(a), i);
    seen.insert(E.to_index(E.pow(a, 5)));  // Frobenius is a bijection
    if (!E.is_zero(a)) {
      EXPECT_EQ(E.mul(a, E.inv(a)), E.one());
      EXPECT_EQ(E.pow(a, 124), E.one());
    }
  }
  EXPECT_EQ(seen.size(), 125u);
  const auto a = E.from_index(37), b = E.from_index(88), c = E.from_index(101);
  EXPECT_EQ(E.mul(a, E.add(b, c)), E.add(E.mul(a, b), E.mul(a, c)));
}

TEST(ExtField, RejectsReducibleModulus) {
  PrimeField F(7);
  EXPECT_THROW(ExtField(F, poly_from_ints(F, {-1, 0, 1})), domain_error);
  EXPECT_THROW(ExtField(F, poly_from_ints(F, {1, 0, 2})), domain_error);
}

TEST(Matrix, RankMatchesSubsetOracle) {
  // Rank over F_3 of 3x3 matrices = size of the largest nonsingular minor.
  PrimeField F(3);
  std::mt19937_64 rng(5);
  auto det2 = [&](const Matrix<PrimeField>& m, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    return F.sub(F.mul(m(r0, c0), m(r1, c1)), F.mul(m(r0, c1), m(r1, c0)));
  };
  for (int t = 0; t < 300; ++t) {
    Matrix<PrimeField> m(F, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = rng() % 3;
    std::uint64_t det = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      const std::uint64_t minor = det2(m, 1, 2, (j + 1) % 3, (j + 2) % 3);
      det = F.add(det, F.mul(m(0, j), minor));
    }
    std::size_t want = 0;
    if (det) {
      want = 3;
    } else {
      bool any2 = false, any1 = false;
      for (std::size_t r0 = 0; r0 < 3; ++r0)
        for (std::size_t r1 = r0 + 1; r1 < 3; ++r1)
          for (std::size_t c0 = 0; c0 < 3; ++c0)
            for (std::size_t c1 = c0 + 1; c1 < 3; ++c1) any2 |= det2(m, r0, r1, c0, c1) != 0;
      for (std::size_t i = 0; i < 9; ++i) any1 |= m(i / 3, i % 3) != 0;
      want = any2 ? 2 : (any1 ? 1 : 0);
    }
    EXPECT_EQ(matrix_rank(m), want);
  }
}

TEST(Matrix, ProductWithIdentity) {
  PrimeField F(11);
  Matrix<PrimeField> m(F, 2, 3);
  m(0, 0) = 3, m(0, 2) = 7, m(1, 1) = 10;
  EXPECT_EQ(matrix_mul(Matrix<PrimeField>::identity(F, 2), m), m);
  EXPECT_THROW(matrix_mul(m, m), domain_error);
}

TEST(IntegerPoly, DiscriminantOfLowDegree) {
  // b^2 - 4ac and b^2c^2 - 4ac^3 - 4b^3d - 27a^2d^2 + 18abcd.
  EXPECT_EQ(zpoly_discriminant({3, 5, 2}), BigInt(25 - 24));
  const std::int64_t a = 2, b = -3, c = 5, d = 7;
  const BigInt want = BigInt(b * b * c * c) - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
  EXPECT_EQ(zpoly_discriminant({d, c, b, a}), want);
}

TEST(IntegerPoly, DiscriminantOfXnMinusOne) {
  // disc(x^n + a) = (-1)^(n(n-1)/2) n^n a^(n-1).
  EXPECT_EQ(zpoly_discriminant({-1, 0, 0, 0, 0, 1}), BigInt(3125));
  EXPECT_EQ(zpoly_discriminant({-1, 0, 0, 1}), BigInt(-27));
  EXPECT_EQ(zpoly_discriminant({0, 7, 0, 14, 0, 7, 0, 1}) % 7, 0);
}

TEST(IntegerPoly, ToString) {
  EXPECT_EQ(zpoly_to_string({0, 7, 0, 14, 0, 7, 0, 1}), "x^7 + 7x^5 + 14x^3 + 7x");
  EXPECT_EQ(zpoly_to_string({1, 0, 0, -136, 0, 0, 4913}, "T"), "4913T^6 - 136T^3 + 1");
  EXPECT_EQ(zpoly_to_string({}), "0");
}
