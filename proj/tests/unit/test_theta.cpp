#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "thetalab/theta.hpp"

using namespace thetalab;

namespace {

const std::string kFixture = std::string(THETALAB_DATA_DIR) + "/theta/genus3_hyperelliptic.json";
constexpr double kPi = 3.14159265358979323846;

CVector vec(std::initializer_list<cplx> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST(Theta, GenusOneMatchesWideWindowSum) {
  CMatrix om(1, 1);
  om(0, 0) = cplx(0, 1);
  auto ctx = make_theta_context(om);
  CVector z = vec({cplx(0, 0)});
  cplx ref = 0;
  for (int n = -5000; n < 5000; ++n) ref += std::exp(cplx(-kPi * n * n, 0));
  EXPECT_NEAR(std::abs(theta_char(ctx, {0.0}, z) - ref), 0.0, 1e-12);
  // theta(0, i) = pi^(1/4) / Gamma(3/4)
  EXPECT_NEAR(ref.real(), std::pow(kPi, 0.25) / std::tgamma(0.75), 1e-13);
}

TEST(Theta, SecondOrderGenusOneAgainstDirectSum) {
  CMatrix om(1, 1);
  om(0, 0) = cplx(0.3, 1.1);
  auto ctx = make_theta_context(om);
  CVector w = vec({cplx(0.17, -0.05)});
  auto tv = theta2(ctx, w);
  for (int nu = 0; nu < 2; ++nu) {
    cplx ref = 0;
    for (int n = -200; n <= 200; ++n) {
      double k = n + 0.5 * nu;
      ref += std::exp(cplx(0, 2 * kPi) * om(0, 0) * k * k + cplx(0, 4 * kPi) * k * w[0]);
    }
    EXPECT_NEAR(std::abs(tv.values[nu] - ref), 0.0, 1e-12);
  }
}

TEST(Theta, TailBoundHonouredUnderRadiusDoubling) {
  auto ctx = make_theta_context(random_period_matrix(3, 4));
  auto wide = ctx;
  wide.radius_factor = 2;
  CVector w = vec({cplx(0.2, 0.1), cplx(-0.3, 0.05), cplx(0.4, -0.2)});
  auto a = theta2(ctx, w, 2), b = theta2(wide, w, 2);
  EXPECT_LT((a.values - b.values).cwiseAbs().maxCoeff(), 2 * ctx.epsilon + 1e-13);
  for (std::size_t i = 0; i < a.hessian.size(); ++i)
    EXPECT_LT((a.hessian[i] - b.hessian[i]).cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_GT(b.terms, a.terms);
}

TEST(Theta, EvenAndQuasiPeriodic) {
  auto ctx = make_theta_context(random_period_matrix(2, 9));
  CVector w = vec({cplx(0.31, 0.07), cplx(-0.12, 0.2)});
  auto plus = theta2(ctx, w).values, minus = theta2(ctx, -w).values;
  EXPECT_LT((plus - minus).cwiseAbs().maxCoeff(), 1e-13);
  Eigen::VectorXd m(2);
  m << 1, -1;
  CVector lam = ctx.omega * m.cast<cplx>();
  lam[0] += 1.0;
  CVector lhs = theta2(ctx, w + lam).values;
  CVector rhs = lattice_multiplier(ctx, m, w) * plus;
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff() / lhs.cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Theta, DerivativesMatchFiniteDifferences) {
  auto ctx = make_theta_context(random_period_matrix(3, 2));
  CVector w = vec({cplx(0.1, 0.05), cplx(0.2, -0.1), cplx(-0.3, 0.02)});
  auto tv = theta2(ctx, w, 2);
  const double h = 1e-5;
  for (int i = 0; i < 3; ++i) {
    CVector e = CVector::Zero(3);
    e[i] = 1;
    CVector num = (theta2(ctx, w + h * e).values - theta2(ctx, w - h * e).values) / (2 * h);
    EXPECT_LT((num - tv.gradient[i]).cwiseAbs().maxCoeff(), 1e-7 * std::max(1.0, tv.gradient[i].cwiseAbs().maxCoeff()));
  }
  CVector e0 = CVector::Zero(3), e1 = CVector::Zero(3);
  e0[0] = 1;
  e1[1] = 1;
  EXPECT_LT((theta2_directional(ctx, w, {e0, e1}) - tv.hessian[1]).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Theta, RejectsBadPeriodMatrices) {
  CMatrix om = CMatrix::Identity(2, 2) * cplx(0, 1);
  om(0, 1) = cplx(0.5, 0);
  EXPECT_THROW(make_theta_context(om), ThetaError);
  CMatrix neg = CMatrix::Identity(2, 2) * cplx(0, -1);
  EXPECT_THROW(make_theta_context(neg), ThetaError);
}

class Kummer : public ::testing::TestWithParam<int> {};

TEST_P(Kummer, TangentDimensionAndGap) {
  int g = GetParam();
  auto k = kummer_tangent_report(make_theta_context(random_period_matrix(g, 7)));
  std::size_t expected = std::min<std::size_t>(std::size_t{1} << g, 1 + g * (g + 1) / 2);
  EXPECT_EQ(k.tangent_dim, expected);
  EXPECT_EQ(k.gamma00_dim, (std::size_t{1} << g) - expected);
  EXPECT_GT(k.gap_ratio, 1e6);
  EXPECT_FALSE(k.indeterminate);
  auto d = kummer_tangent_report(make_theta_context(diagonal_period_matrix(g, 7)));
  EXPECT_EQ(d.tangent_dim, static_cast<std::size_t>(1 + g));
}

INSTANTIATE_TEST_SUITE_P(Genera, Kummer, ::testing::Values(2, 3, 4));

TEST(Kummer, ProjectionKillsTangentVectors) {
  auto ctx = make_theta_context(random_period_matrix(3, 1));
  auto k = kummer_tangent_report(ctx);
  CVector v = k.tangent_basis.col(2);
  EXPECT_LT(project_mod_tangent(k, v).norm(), 1e-12);
  CVector zero = CVector::Zero(3);
  auto tv = theta2(ctx, zero, 2);
  for (Eigen::Index c = 0; c < k.gamma00_basis.cols(); ++c) {
    CVector f = k.gamma00_basis.col(c);
    EXPECT_LT(std::abs((f.transpose() * tv.values).value()), 1e-9);
  }
}

TEST(Fixture, LoadsAndValidates) {
  std::ifstream probe(kFixture);
  if (!probe) GTEST_SKIP() << "fixture absent";
  auto fx = load_abelian_fixture(kFixture);
  EXPECT_EQ(fx.genus, 3);
  EXPECT_GE(fx.size(), 4u);
  EXPECT_NO_THROW(validate_fixture(fx));
  for (std::size_t a = 0; a < fx.size(); ++a)
    for (std::size_t b = 0; b < fx.size(); ++b) EXPECT_LT(std::abs(fx.q(a, b) + fx.q(b, a)), 1e-10);
}

TEST(Fixture, MissingAndMalformedFiles) {
  EXPECT_THROW(load_abelian_fixture("/nonexistent.json"), ThetaError);
  std::string bad = ::testing::TempDir() + "bad_fixture.json";
  std::ofstream(bad) << R"({"schema": "thetalab.abelian-fixture/1", "genus": 3})";
  EXPECT_THROW(load_abelian_fixture(bad), ThetaError);
}

TEST(Gunning, IdentitiesOnFixture) {
  std::ifstream probe(kFixture);
  if (!probe) GTEST_SKIP() << "fixture absent";
  auto fx = load_abelian_fixture(kFixture);
  auto ctx = make_theta_context(fx.omega);
  auto k = kummer_tangent_report(ctx);
  GunningSuite suite(ctx, fx, k);
  auto [r1, r2] = suite.four_point(0, 1, 2, 3);
  EXPECT_LT(r1, 1e-6);
  EXPECT_LT(r2, 1e-6);
  auto rep = suite.run();
  EXPECT_LT(rep.tau_symmetry, 1e-6);
  EXPECT_LE(rep.xi_span, 1u);
  EXPECT_LT(rep.frobenius, 1e-6);
  EXPECT_GT(rep.negative_control, 1e-3);
  ASSERT_EQ(k.gamma00_dim, 1u);
  auto id = identity_checks(ctx, fx, k.gamma00_basis.col(0));
  EXPECT_GE(id.vanishing_order, 4);
  EXPECT_LT(id.frobenius, 1e-6);
}
