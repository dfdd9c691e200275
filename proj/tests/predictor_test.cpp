#include <gtest/gtest.h>

#include "cmreduce/predictor.hpp"

using namespace cmreduce;

namespace {

SplittingType split(int two_g, int l) { return unramified_split(two_g, l); }

SplittingType ramified(int two_g) { return {1, two_g, true}; }

void expect_fa(const Prediction& p, int f, int a) {
  EXPECT_EQ(p.profile.p_rank, f);
  EXPECT_EQ(p.profile.a_number, a);
}

}  // namespace

TEST(PredictG1, Deuring) {
  const auto ord = predict_g1(split(2, 2));
  expect_fa(ord, 1, 0);
  EXPECT_EQ(ord.profile.type_name, "ordinary");
  EXPECT_EQ(ord.source_theorem, "deuring-g1");
  expect_fa(predict_g1(split(2, 1)), 0, 1);
  const auto ram = predict_g1(ramified(2));
  expect_fa(ram, 0, 1);
  EXPECT_EQ(ram.profile.type_name, "supersingular");
}

TEST(PredictG2, Goren) {
  const auto p4 = predict_g2(split(4, 4));
  expect_fa(p4, 2, 0);
  EXPECT_EQ(p4.profile.type_name, "ordinary");
  const auto p2 = predict_g2(split(4, 2));
  expect_fa(p2, 0, 2);
  EXPECT_EQ(p2.profile.type_name, "superspecial");
  const auto p1 = predict_g2(split(4, 1));
  expect_fa(p1, 0, 1);
  EXPECT_EQ(p1.profile.type_name, "supersingular non-superspecial");
  EXPECT_EQ(p1.certainty, Certainty::exact);
  EXPECT_THROW(predict_g2(ramified(4)), ramified_prime);
}

TEST(PredictG3, CyclicSextic) {
  const auto p6 = predict_g3(split(6, 6));
  expect_fa(p6, 3, 0);
  EXPECT_EQ(p6.certainty, Certainty::exact);
  const auto p3 = predict_g3(split(6, 3));
  expect_fa(p3, 0, 3);
  EXPECT_EQ(p3.profile.type_name, "superspecial");
  const auto p2 = predict_g3(split(6, 2));
  expect_fa(p2, 0, 2);
  EXPECT_EQ(p2.certainty, Certainty::partial);
  const auto p1 = predict_g3(split(6, 1));
  expect_fa(p1, 0, 1);
  EXPECT_EQ(p1.certainty, Certainty::partial);
  EXPECT_THROW(predict_g3(ramified(6)), ramified_prime);
}

TEST(PredictGeneral, Cases) {
  const auto ord = predict_general(5, split(10, 10));
  ASSERT_TRUE(ord);
  expect_fa(*ord, 5, 0);
  const auto ssp = predict_general(5, split(10, 5));
  ASSERT_TRUE(ssp);
  expect_fa(*ssp, 0, 5);
  EXPECT_FALSE(predict_general(5, split(10, 2)));
  EXPECT_FALSE(predict_general(5, split(10, 1)));
  EXPECT_THROW(predict_general(5, ramified(10)), ramified_prime);
  EXPECT_THROW(predict_general(5, SplittingType{3, 3, false}), domain_error);
}

TEST(PredictGeneral, AgreesWithSexticTheorem) {
  for (int l : {1, 2, 3, 6}) {
    const auto general = predict_general(3, split(6, l));
    const auto sextic = predict_g3(split(6, l));
    if (l == 3 || l == 6) {
      ASSERT_TRUE(general);
      EXPECT_EQ(general->profile.p_rank, sextic.profile.p_rank);
      EXPECT_EQ(general->profile.a_number, sextic.profile.a_number);
    } else {
      EXPECT_FALSE(general);
    }
  }
}

TEST(Predict, ProfilesSatisfyBounds) {
  for (int g = 1; g <= 10; ++g)
    for (int l = 1; l <= 2 * g; ++l) {
      if ((2 * g) % l) continue;
      if (g == 1 && l > 2) continue;
      const auto p = predict(g, split(2 * g, l));
      if (!p) continue;
      EXPECT_NO_THROW(validate_profile(p->profile));
      EXPECT_GE(p->profile.p_rank, 0);
      EXPECT_LE(p->profile.p_rank, g);
      EXPECT_GE(p->profile.p_rank + p->profile.a_number, 1);
      EXPECT_LE(p->profile.p_rank + p->profile.a_number, g);
    }
}

TEST(TypeNorm, SexticProofFactorizations) {
  const auto phi = CMType::from_exponents(3, {0, 1, 2});
  const auto t6 = type_norm_orbit(phi, 6);
  EXPECT_EQ(t6.exponents, (std::vector<int>{1, 0, 0, 0, 1, 1}));
  EXPECT_FALSE(t6.constant);
  EXPECT_EQ(t6.zero_count, 3);
  const auto t3 = type_norm_orbit(phi, 3);
  EXPECT_EQ(t3.exponents, (std::vector<int>{1, 1, 1}));
  EXPECT_TRUE(t3.constant);
  const auto t2 = type_norm_orbit(phi, 2);
  EXPECT_EQ(t2.exponents, (std::vector<int>{2, 1}));
  EXPECT_FALSE(t2.constant);
  EXPECT_THROW(type_norm_orbit(phi, 4), domain_error);
}

TEST(TypeNorm, PropertiesForPrimitiveTypes) {
  for (int g = 1; g <= 8; ++g)
    for (const auto& c : enumerate_classes(g)) {
      if (!c.primitive()) continue;
      const auto& phi = c.representative;
      const auto full = type_norm_orbit(phi, 2 * g);
      EXPECT_EQ(full.zero_count, g) << phi.extended_bits();
      const auto half = type_norm_orbit(phi, g);
      EXPECT_TRUE(half.constant) << phi.extended_bits();
      int total = 0;
      for (int e : type_norm_orbit(phi, 1).exponents) total += e;
      EXPECT_EQ(total, g);
    }
}

TEST(Ekedahl, SexticProofCases) {
  const auto phi = CMType::from_exponents(3, {0, 1, 2});
  EXPECT_TRUE(ekedahl_check(phi, 3));
  EXPECT_FALSE(ekedahl_check(phi, 2));
  EXPECT_FALSE(ekedahl_check(phi, 1));
  EXPECT_EQ(frobenius_candidates(3, 2), (std::vector<int>{2, 4}));
  EXPECT_EQ(frobenius_candidates(3, 1), (std::vector<int>{1, 5}));
  EXPECT_EQ(frobenius_candidates(3, 3), (std::vector<int>{3}));
  EXPECT_EQ(superspecial_by_ekedahl(phi, 3), std::optional<bool>(true));
  EXPECT_EQ(superspecial_by_ekedahl(phi, 2), std::optional<bool>(false));
  EXPECT_EQ(superspecial_by_ekedahl(phi, 1), std::optional<bool>(false));
}

TEST(Ekedahl, ConjugationExponentIsAlwaysSuperspecial) {
  for (int g = 1; g <= 8; ++g)
    for (const auto& c : enumerate_classes(g)) {
      EXPECT_TRUE(ekedahl_check(c.representative, g));
      EXPECT_FALSE(ekedahl_check(c.representative, 0));
      if (c.primitive()) {
        EXPECT_EQ(superspecial_by_ekedahl(c.representative, g), std::optional<bool>(true));
        EXPECT_EQ(superspecial_by_ekedahl(c.representative, 2 * g), std::optional<bool>(false));
      }
    }
}

TEST(RmEndoDegree, Examples) {
  EXPECT_EQ(rm_endo_degree(5), 1);
  EXPECT_EQ(rm_endo_degree(8), 64);
  EXPECT_EQ(rm_endo_degree(13), 9);
  EXPECT_EQ(rm_endo_degree(12), 144);
  EXPECT_THROW(rm_endo_degree(4), domain_error);
  EXPECT_THROW(rm_endo_degree(9), domain_error);
  EXPECT_THROW(rm_endo_degree(-3), domain_error);
  EXPECT_THROW(rm_endo_degree(16), domain_error);
}

TEST(MSmallCompose, Cases) {
  EXPECT_EQ(m_small_compose(7, 1, SmallnessCase::product), 49);
  EXPECT_EQ(m_small_compose(7, 3, SmallnessCase::isogeny), 63);
  EXPECT_EQ(m_small_compose(1, 1, SmallnessCase::isogeny), 1);
  EXPECT_EQ(m_small_compose(1, 1, SmallnessCase::product), 1);
  EXPECT_THROW(m_small_compose(0, 1, SmallnessCase::product), domain_error);
}
