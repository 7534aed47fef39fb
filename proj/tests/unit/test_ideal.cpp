#include <gtest/gtest.h>

#include "thetalab/ideal.hpp"
#include "thetalab/trigonal.hpp"

using namespace thetalab;

namespace {

std::string curve_path(const std::string& name) { return std::string(THETALAB_DATA_DIR) + "/curves/" + name + ".curve"; }

// Independent oracle: forms of degree n vanishing at many sampled canonical points.
std::size_t evaluation_oracle(const CurveModel& m, int n, std::size_t samples) {
  auto mons = monomials_of_degree(static_cast<std::size_t>(m.genus()), n);
  std::vector<Vector> rows;
  for (const auto& p : sample_points(m, samples, 77)) {
    Vector c = m.canonical_image(p);
    Vector row;
    for (const auto& e : mons) {
      Scalar v = Scalar::one(m.field());
      for (std::size_t i = 0; i < e.size(); ++i) v *= c[i].pow(static_cast<std::uint64_t>(e[i]));
      row.push_back(v);
    }
    rows.push_back(row);
  }
  return mons.size() - rank_of(Matrix::from_rows(m.field(), rows, mons.size()));
}

struct DimCase {
  const char* name;
  std::uint64_t prime;
  std::size_t i2;
};

}  // namespace

class IdealDims : public ::testing::TestWithParam<DimCase> {};

TEST_P(IdealDims, QuadricsMatchEvaluationOracle) {
  auto c = GetParam();
  auto m = load_curve(curve_path(c.name), Field::prime(c.prime));
  CanonicalRing ring(m);
  auto i2 = ideal_component(ring, 2);
  EXPECT_EQ(i2.dim(), c.i2);
  EXPECT_EQ(evaluation_oracle(m, 2, 200), c.i2);
  EXPECT_TRUE(vanishes_on_sample(m, i2, 30, 5));
}

INSTANTIATE_TEST_SUITE_P(Curves, IdealDims,
                         ::testing::Values(DimCase{"QUARTIC", 10007, 0}, DimCase{"GEN5", 10007, 3},
                                           DimCase{"QUINTIC", 10007, 6}, DimCase{"QUINTIC", 65521, 6},
                                           DimCase{"GEN6", 10007, 6}, DimCase{"TRIG6", 65521, 6},
                                           DimCase{"GEN7", 10007, 10}, DimCase{"TRIG7", 10007, 10}),
                         [](const auto& info) { return std::string(info.param.name) + "_" + std::to_string(info.param.prime); });

TEST(Ideal, QuarticHasOneQuarticRelation) {
  auto m = load_curve(curve_path("QUARTIC"), Field::prime(10007));
  CanonicalRing ring(m);
  EXPECT_EQ(ideal_component(ring, 4).dim(), 1u);
  EXPECT_EQ(evaluation_oracle(m, 4, 100), 1u);
}

TEST(Ideal, NoQuadricSingularAlongCurve) {
  auto m = load_curve(curve_path("GEN6"), Field::prime(10007));
  EXPECT_EQ(higher_ideal(m, 2, 2, 3).dim(), 0u);
  auto d23 = higher_ideal(m, 2, 3, 3);
  auto again = higher_ideal(m, 2, 3, 4);
  EXPECT_EQ(d23.dim(), again.dim());
}

TEST(Syzygies, QuinticAndGen7) {
  for (auto [name, ker] : {std::pair{"QUINTIC", 0u}, std::pair{"GEN7", 1u}}) {
    auto m = load_curve(curve_path(name), Field::prime(10007));
    CanonicalRing ring(m);
    auto i2 = ideal_component(ring, 2);
    auto i4 = ideal_component(ring, 4);
    auto rep = syzygy_kernel(i2, i4, 1);
    EXPECT_EQ(rep.kernel_dim, ker) << name;
    EXPECT_TRUE(rep.consistency);
    EXPECT_EQ(rep.rank + rep.kernel_dim, rep.sym2_dim);
  }
}

TEST(Petri, GenericGenus5Ranks) {
  auto m = load_curve(curve_path("GEN5"), Field::prime(10007));
  CanonicalRing ring(m);
  auto i2 = ideal_component(ring, 2);
  auto pts = sample_points(m, 5, 3);
  ASSERT_TRUE(general_position_check(m, i2, pts).ok);
  auto pb = petri_basis(ring, i2, pts);
  EXPECT_TRUE(pb.duality);
  EXPECT_TRUE(pb.spans_ideal);
  ASSERT_EQ(pb.quadrics.size(), 3u);
  for (const auto& q : pb.quadrics) {
    EXPECT_EQ(q.rank, 5u);
    EXPECT_TRUE(in_ideal(ring, q.form));
  }
}

TEST(Petri, TrigonalQuadricsAreRankFour) {
  auto m = load_curve(curve_path("TRIG6"), Field::prime(10007));
  CanonicalRing ring(m);
  auto i2 = ideal_component(ring, 2);
  auto pts = sample_points(m, 6, 4);
  auto pb = petri_basis(ring, i2, pts);
  for (const auto& q : pb.quadrics) {
    EXPECT_EQ(q.rank, 4u);
    EXPECT_TRUE(q.dij_in_sing);
  }
}

TEST(Petri, RejectsTooFewPoints) {
  auto m = load_curve(curve_path("GEN6"), Field::prime(10007));
  CanonicalRing ring(m);
  auto i2 = ideal_component(ring, 2);
  EXPECT_THROW(petri_basis(ring, i2, sample_points(m, 4, 1)), std::invalid_argument);
}

TEST(TangentCone, FiberPlusGenericPointsGivesRankFour) {
  auto m = load_curve(curve_path("TRIG7"), Field::prime(10007));
  CanonicalRing ring(m);
  auto fibers = trigonal_context(ring, 6).fibers;
  ASSERT_FALSE(fibers.empty());
  auto a = fibers.front();
  for (const auto& p : sample_points(m, 3, 9)) a.push_back(p);
  auto q = tangent_cone_quadric(ring, a);
  EXPECT_LE(q.rank(), 4u);
  EXPECT_TRUE(in_ideal(ring, q));
}

TEST(Conic, SixRandomPointsAreNotOnAConic) {
  Field f = Field::prime(10007);
  Rng rng(2);
  std::vector<PlanePoint> pts;
  for (int i = 0; i < 6; ++i) pts.push_back({rng.scalar(f), rng.scalar(f), Scalar::one(f)});
  EXPECT_FALSE(points_on_conic(pts));
  std::vector<PlanePoint> on;
  for (long t = 1; t <= 6; ++t) on.push_back({Scalar(f, t), Scalar(f, t * t), Scalar::one(f)});
  EXPECT_TRUE(points_on_conic(on));
}
