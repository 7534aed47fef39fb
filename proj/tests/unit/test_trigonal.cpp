#include <gtest/gtest.h>

#include "thetalab/trigonal.hpp"

using namespace thetalab;

namespace {

std::string curve_path(const std::string& name) { return std::string(THETALAB_DATA_DIR) + "/curves/" + name + ".curve"; }

Vector random_vector(Rng& rng, const Field& f, std::size_t n) {
  Vector v(n);
  for (auto& x : v) x = rng.scalar(f);
  return v;
}

}  // namespace

class TrigonalCurves : public ::testing::TestWithParam<std::pair<const char*, std::size_t>> {};

TEST_P(TrigonalCurves, BetaIsIsomorphismAndCorankMatches) {
  auto [name, corank] = GetParam();
  auto m = load_curve(curve_path(name), Field::prime(10007));
  CanonicalRing ring(m);
  auto i2 = ideal_component(ring, 2);
  auto tc = trigonal_context(ring, 1);
  EXPECT_EQ(static_cast<int>(tc.dim_v()), m.genus() - 2);
  auto iso = beta_iso_certificate(ring, tc, i2);
  EXPECT_TRUE(iso.ok) << iso.reason;
  EXPECT_EQ(iso.rank, i2.dim());
  auto cr = corank_certificate(tc, i2, 2);
  EXPECT_EQ(cr.route_a, corank);
  EXPECT_EQ(cr.route_b, corank);
  EXPECT_TRUE(cr.stabilized);
}

INSTANTIATE_TEST_SUITE_P(Curves, TrigonalCurves,
                         ::testing::Values(std::pair{"TRIG5", std::size_t{0}}, std::pair{"TRIG6", std::size_t{1}},
                                           std::pair{"TRIG7", std::size_t{5}}),
                         [](const auto& info) { return std::string(info.param.first); });

TEST(Beta, AlternatingRankFourAndPencilIndependent) {
  auto m = load_curve(curve_path("TRIG7"), Field::prime(10007));
  const auto& f = m.field();
  CanonicalRing ring(m);
  auto tc = trigonal_context(ring, 3);
  Rng rng(9);
  auto tc2 = rebased(ring, tc, Scalar(f, 2), Scalar(f, 3), Scalar(f, 5), Scalar(f, 7));
  for (int k = 0; k < 20; ++k) {
    Vector v = random_vector(rng, f, tc.dim_v()), w = random_vector(rng, f, tc.dim_v());
    auto q = beta_map(tc, v, w);
    EXPECT_LE(q.rank(), 4u);
    EXPECT_TRUE(in_ideal(ring, q));
    EXPECT_TRUE(beta_map(tc, v, v).is_zero());
    EXPECT_TRUE(beta_map(tc, w, v).projectively_equal(q));
    EXPECT_TRUE(beta_map(tc2, v, w).projectively_equal(q));
    auto dq = delta_quadric(tc, {v, w});
    EXPECT_LE(dq.rank(), 4u);
    EXPECT_TRUE(in_ideal(ring, dq));
  }
}

TEST(Trigonal, RejectsUntaggedCurve) {
  auto m = load_curve(curve_path("GEN6"), Field::prime(10007));
  CanonicalRing ring(m);
  EXPECT_THROW(trigonal_context(ring, 1), TrigonalError);
}

TEST(Proxies, QuinticProxiesHaveTwoSections) {
  auto m = load_curve(curve_path("QUINTIC"), Field::prime(10007));
  CanonicalRing ring(m);
  auto proxies = sing_theta_proxies(m, 3, 1);
  ASSERT_EQ(proxies.size(), 3u);
  for (const auto& a : proxies) {
    EXPECT_EQ(static_cast<int>(a.size()), m.genus() - 1);
    EXPECT_EQ(rr_space(m, {}, Divisor::of(a)).dim(), 2u);
    auto q = tangent_cone_quadric(ring, a);
    EXPECT_LE(q.rank(), 4u);
    EXPECT_TRUE(in_ideal(ring, q));
  }
}
