#include <gtest/gtest.h>

#include "thetalab/gamma.hpp"

using namespace thetalab;

TEST(Gamma, GenericGenusSix) {
  auto t = gamma_dimensions(6, 0, 0, 6);
  EXPECT_EQ(t.gamma00, 42);
  EXPECT_EQ(t.gamma00_2, 22);
  EXPECT_EQ(t.gamma11, 1);
  EXPECT_EQ(t.gamma000, 1);
  EXPECT_TRUE(t.chain_consistent());
}

TEST(Gamma, TrigonalGenusSix) {
  auto t = gamma_dimensions(6, 1, 1, 6);
  EXPECT_EQ(t.gamma11, 2);
  EXPECT_EQ(t.gamma000, 3);
}

TEST(Gamma, GenusSeven) {
  auto t = gamma_dimensions(7, 0, 1, 10);
  EXPECT_EQ(t.gamma00, 99);
  EXPECT_EQ(t.gamma00_2, 64);
  EXPECT_EQ(t.gamma11, 9);
  EXPECT_EQ(t.gamma000, 10);
}

TEST(Gamma, LowGenusHasNoG000) {
  EXPECT_EQ(gamma_dimensions(3, 0, 0, 0).gamma000, 0);
  EXPECT_EQ(gamma_dimensions(4, 0, 0, 1).gamma000, 0);
  EXPECT_EQ(gamma_dimensions(5, 0, 0, 3).gamma000, 0);
}

TEST(Gamma, EntriesCarrySources) {
  auto t = gamma_dimensions(6, 0, 0, 6);
  auto e = t.entries();
  ASSERT_FALSE(e.empty());
  for (const auto& x : e) {
    EXPECT_FALSE(x.name.empty());
    EXPECT_FALSE(x.source.empty());
  }
}

TEST(Gamma, InconsistentInputsThrow) {
  EXPECT_THROW(gamma_dimensions(6, 0, 0, 5), GammaError);
  EXPECT_THROW(gamma_dimensions(6, -1, 0, 6), GammaError);
  EXPECT_THROW(gamma_dimensions(6, 0, 30, 6), GammaError);
  EXPECT_THROW(gamma_dimensions(1, 0, 0, 0), GammaError);
}

TEST(Gamma, ChainHoldsAcrossGenera) {
  for (int g = 3; g <= 12; ++g) {
    std::int64_t i2 = binomial(g - 2, 2);
    auto t = gamma_dimensions(g, binomial(g - 2, 4), 0, i2);
    EXPECT_GE(t.gamma00, t.gamma00_2);
    EXPECT_GE(t.gamma00_2, t.gamma11);
    EXPECT_GE(t.gamma11, 0);
    EXPECT_LE(t.gamma11, t.gamma000);
    EXPECT_LE(t.gamma000, t.gamma00_2);
  }
}

TEST(Gamma, Binomial) {
  EXPECT_EQ(binomial(7, 3), 35);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(4, 0), 1);
}
