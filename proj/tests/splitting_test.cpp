#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "cmreduce/catalog.hpp"
#include "cmreduce/splitting.hpp"

using namespace cmreduce;

namespace {

const Catalog& catalog() {
  static const Catalog cat = catalog_load(CMREDUCE_DEFAULT_CATALOG);
  return cat;
}

std::vector<std::uint64_t> small_primes(std::uint64_t bound) {
  std::vector<bool> composite(bound, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i < bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j < bound; j += i) composite[j] = true;
  }
  return out;
}

std::set<std::uint64_t> symmetric(std::initializer_list<std::int64_t> values, std::uint64_t f) {
  std::set<std::uint64_t> out;
  for (auto v : values) {
    out.insert(static_cast<std::uint64_t>(((v % static_cast<std::int64_t>(f)) + static_cast<std::int64_t>(f)) % static_cast<std::int64_t>(f)));
    out.insert(static_cast<std::uint64_t>(((-v % static_cast<std::int64_t>(f)) + static_cast<std::int64_t>(f)) % static_cast<std::int64_t>(f)));
  }
  return out;
}

std::set<std::uint64_t> residues(std::initializer_list<std::int64_t> values, std::uint64_t f) {
  std::set<std::uint64_t> out;
  for (auto v : values)
    out.insert(static_cast<std::uint64_t>(((v % static_cast<std::int64_t>(f)) + static_cast<std::int64_t>(f)) % static_cast<std::int64_t>(f)));
  return out;
}

// Oracle: number of roots of an integer polynomial in F_p by direct evaluation.
int count_roots(const ZPoly& f, std::uint64_t p) {
  int roots = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + mod_u64(f[i], p)) % p;
    if (acc == 0) ++roots;
  }
  return roots;
}

// Oracle: multiplicative order of p mod l.
int order_mod(std::uint64_t p, std::uint64_t l) {
  std::uint64_t x = p % l;
  int k = 1;
  while (x != 1) x = x * p % l, ++k;
  return k;
}

}  // namespace

TEST(SplitByResidue, QuarticExamples) {
  const auto k = catalog().field("quartic-5-65-845");
  EXPECT_EQ(split_by_residue(k, BigInt(131)), (SplittingType{4, 1, false}));  // 131 = 1 + 2*65
  const BigInt p128 = pow2(128) + 51;
  EXPECT_EQ(mod_u64(p128, 65), 47u);
  EXPECT_EQ(split_by_residue(k, p128), (SplittingType{1, 4, false}));
  EXPECT_THROW(split_by_residue(k, BigInt(13)), ramified_prime);
  EXPECT_THROW(split_by_residue(k, BigInt(5)), ramified_prime);
}

TEST(SplitByResidue, CyclotomicFive) {
  const auto k = catalog().field("cyclotomic-5");
  EXPECT_EQ(split_by_residue(k, BigInt(19)).num_primes, 2);
  EXPECT_EQ(split_by_residue(k, BigInt(11)).num_primes, 4);
  EXPECT_EQ(split_by_residue(k, BigInt(7)).num_primes, 1);
  EXPECT_THROW(split_by_residue(k, BigInt(5)), ramified_prime);
}

TEST(SplitByResidue, MissingConductor) {
  CyclicCMField k = catalog().field("sextic-5-2");
  k.conductor.reset();
  k.h_generators.clear();
  EXPECT_THROW(split_by_residue(k, BigInt(13)), missing_data);
  EXPECT_THROW(residue_class_table(k), missing_data);
}

TEST(ResidueClassTable, QuarticPartition) {
  const auto k = catalog().field("quartic-5-65-845");
  const auto table = residue_class_table(k);
  ASSERT_EQ(table.size(), 3u);
  auto as_set = [&](int l) { return std::set<std::uint64_t>(table.at(l).begin(), table.at(l).end()); };
  EXPECT_EQ(as_set(1), symmetric({2, 3, 7, 8, 12, 17, 18, 22, 23, 27, 28, 32}, 65));
  EXPECT_EQ(as_set(2), residues({-24, -19, -16, -1, 4, 6, 9, 11, 14, 21, 29, 31}, 65));
  EXPECT_EQ(as_set(4), residues({1, 16, 19, 24, 34, 36, 44, 51, 54, 56, 59, 61}, 65));
  std::set<std::uint64_t> all;
  for (const auto& [l, rs] : table) {
    EXPECT_TRUE(std::is_sorted(rs.begin(), rs.end()));
    all.insert(rs.begin(), rs.end());
  }
  std::set<std::uint64_t> units;
  for (std::uint64_t r = 1; r < 65; ++r)
    if (std::gcd(r, std::uint64_t{65}) == 1) units.insert(r);
  EXPECT_EQ(all, units);
}

TEST(ResidueClassTable, ClassesAreClosedUnderH) {
  for (const auto& label : {"quartic-5-65-845", "cyclotomic-5", "sextic-5-2", "cyclotomic-7", "cyclotomic-13"}) {
    const auto k = catalog().field(label);
    const auto in_h = unit_subgroup_table(k);
    const std::uint64_t f = *k.conductor;
    for (const auto& [l, rs] : residue_class_table(k)) {
      EXPECT_FALSE(rs.empty());
      const std::set<std::uint64_t> cls(rs.begin(), rs.end());
      for (std::uint64_t r : rs)
        for (std::uint64_t h = 1; h < f; ++h)
          if (in_h[h]) {
            EXPECT_TRUE(cls.count(r * h % f)) << label << " " << r << " " << h;
          }
    }
  }
}

TEST(Stickelberger, Examples) {
  const auto quartic = catalog().field("quartic-5-65-845");
  EXPECT_EQ(quartic.discriminant, BigInt(125 * 169));
  const auto s = stickelberger_parity(quartic, pow2(128) + 51);
  EXPECT_EQ(s.kronecker, -1);
  EXPECT_FALSE(s.num_primes_even);
  const auto c5 = catalog().field("cyclotomic-5");
  const auto s7 = stickelberger_parity(c5, BigInt(7));
  EXPECT_EQ(s7.kronecker, -1);
  EXPECT_EQ(split_by_residue(c5, BigInt(7)).num_primes % 2 == 0, s7.num_primes_even);
  EXPECT_THROW(stickelberger_parity(c5, BigInt(5)), ramified_prime);
}

TEST(SplitByFactorization, SexticExamples) {
  const auto k = catalog().field("sextic-5-2");
  EXPECT_EQ(split_by_factorization(k, 13), (SplittingType{6, 1, false}));
  EXPECT_EQ(split_by_factorization(k, 43), (SplittingType{3, 2, false}));
  EXPECT_EQ(split_by_factorization(k, 11), (SplittingType{1, 6, false}));
  EXPECT_THROW(split_by_factorization(k, 7), not_squarefree);
  EXPECT_THROW(split_by_factorization(k, 2), not_squarefree);
}

TEST(SplitByFactorization, MissingPolynomials) {
  CyclicCMField k = catalog().field("cyclotomic-5");
  k.defining_polys.clear();
  EXPECT_THROW(split_by_factorization(k, 11), missing_data);
}

TEST(CrossOracle, AllCatalogFieldsBelow10000) {
  const auto primes = small_primes(10000);
  for (const auto& k : catalog().fields) {
    int checked = 0;
    for (std::uint64_t p : primes) {
      if (k.discriminant % p == 0) continue;
      SplittingType by_factor;
      try {
        by_factor = split_by_factorization(k, p);
      } catch (const not_squarefree&) {
        continue;  // index divisor
      }
      ++checked;
      EXPECT_EQ(by_factor.num_primes * by_factor.inertia_degree, k.two_g);
      if (k.conductor) {
        EXPECT_EQ(split_by_residue(k, BigInt(p)), by_factor) << k.label << " p=" << p;
      }
      const auto parity = stickelberger_parity(k, BigInt(p));
      EXPECT_EQ(parity.num_primes_even, by_factor.num_primes % 2 == 0) << k.label << " p=" << p;
      EXPECT_EQ(parity.kronecker == 1, (k.two_g - by_factor.num_primes) % 2 == 0) << k.label << " p=" << p;
    }
    EXPECT_GT(checked, 1000) << k.label;
  }
}

TEST(CrossOracle, CompleteSplitMatchesRootCount) {
  for (const auto& k : catalog().fields) {
    for (std::uint64_t p : small_primes(400)) {
      if (k.discriminant % p == 0) continue;
      SplittingType s;
      try {
        s = split_by_factorization(k, p);
      } catch (const not_squarefree&) {
        continue;
      }
      bool all_roots = true;
      for (const auto& poly : k.defining_polys)
        all_roots = all_roots && count_roots(poly, p) == zpoly_degree(poly);
      EXPECT_EQ(s.num_primes == k.two_g, all_roots) << k.label << " p=" << p;
    }
  }
}

TEST(CrossOracle, CyclotomicInertiaIsMultiplicativeOrder) {
  for (std::uint64_t l : {5u, 7u, 11u, 13u}) {
    const auto k = cyclotomic_field(l);
    for (std::uint64_t p : small_primes(2000)) {
      if (p == l) continue;
      EXPECT_EQ(split_by_residue(k, BigInt(p)).inertia_degree, order_mod(p, l));
      EXPECT_EQ(split_by_factorization(k, p).inertia_degree, order_mod(p, l));
    }
  }
}

TEST(FindPrime, QuarticInertAt128Bits) {
  const auto k = catalog().field("quartic-5-65-845");
  EXPECT_TRUE(satisfies_target(k, SplitTarget{1}, pow2(128) + 51));
  EXPECT_TRUE(satisfies_target(k, KroneckerTarget{-1}, pow2(128) + 51));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const BigInt p = find_prime(k, SplitTarget{1}, 128, seed);
    EXPECT_GE(p, pow2(128));
    EXPECT_LT(p, pow2(129));
    EXPECT_TRUE(is_prime(p));
    EXPECT_EQ(split_by_residue(k, p).num_primes, 1);
    EXPECT_EQ(kronecker(k.discriminant, p), -1);
  }
}

TEST(FindPrime, CyclotomicTwoPrimesAt10Bits) {
  const auto k = catalog().field("cyclotomic-5");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const BigInt p = find_prime(k, SplitTarget{2}, 10, seed);
    EXPECT_GE(p, 1024);
    EXPECT_LT(p, 2048);
    EXPECT_EQ(mod_u64(p, 5), 4u);
    EXPECT_TRUE(is_prime(p));
  }
}

TEST(FindPrime, DeterministicPerSeed) {
  const auto k = catalog().field("quartic-5-65-845");
  EXPECT_EQ(find_prime(k, SplitTarget{2}, 64, 7), find_prime(k, SplitTarget{2}, 64, 7));
  EXPECT_EQ(find_prime(k, KroneckerTarget{-1}, 64, 7), find_prime(k, KroneckerTarget{-1}, 64, 7));
}

TEST(FindPrime, KroneckerRejectionSampling) {
  const auto k = catalog().field("quartic-5-65-845");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BigInt p = find_prime(k, KroneckerTarget{-1}, 96, seed);
    EXPECT_EQ(kronecker(k.discriminant, p), -1);
    EXPECT_EQ(split_by_residue(k, p).num_primes, 1);
  }
}

TEST(FindPrime, FactorizationOnlyField) {
  CyclicCMField k = catalog().field("sextic-5-2");
  k.conductor.reset();
  k.h_generators.clear();
  const BigInt p = find_prime(k, SplitTarget{3}, 12, 3);
  EXPECT_EQ(split_by_factorization(k, p.convert_to<std::uint64_t>()).num_primes, 3);
}

TEST(FindPrime, ImpossibleTargetTimesOut) {
  const auto k = catalog().field("quartic-5-65-845");
  EXPECT_THROW(find_prime(k, SplitTarget{3}, 64, 1), search_timeout);
  EXPECT_THROW(find_prime(k, KroneckerTarget{0}, 64, 1, {1000}), search_timeout);
  EXPECT_THROW(find_prime(k, SplitTarget{1}, 1, 1), domain_error);
}

TEST(ValidateField, RejectsBadDescriptors) {
  auto k = catalog().field("quartic-5-65-845");
  EXPECT_NO_THROW(validate_field(k));
  auto bad = k;
  bad.h_generators = {2};
  EXPECT_THROW(validate_field(bad), schema_error);
  bad = k;
  bad.h_generators = {64};  // -1 in H
  EXPECT_THROW(validate_field(bad), schema_error);
  bad = k;
  bad.discriminant = 0;
  EXPECT_THROW(validate_field(bad), schema_error);
  bad = k;
  bad.two_g = 3;
  EXPECT_THROW(validate_field(bad), schema_error);
  bad = k;
  bad.h_generators = {13};
  EXPECT_THROW(validate_field(bad), schema_error);
}
