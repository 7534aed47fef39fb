#include <gtest/gtest.h>

#include "thetalab/curve.hpp"
#include "thetalab/rr.hpp"
#include "thetalab/trigonal.hpp"

using namespace thetalab;

namespace {

std::string curve_path(const std::string& name) { return std::string(THETALAB_DATA_DIR) + "/curves/" + name + ".curve"; }

const Field P = Field::prime(10007);

struct Expect {
  const char* name;
  int degree;
  int genus;
};

}  // namespace

class Fixtures : public ::testing::TestWithParam<Expect> {};

TEST_P(Fixtures, GenusAndCanonicalSeries) {
  auto e = GetParam();
  auto m = load_curve(curve_path(e.name), P);
  EXPECT_EQ(m.degree(), e.degree);
  EXPECT_EQ(m.genus(), e.genus);
  EXPECT_EQ(static_cast<int>(m.canonical_forms().size()), e.genus);
  EXPECT_EQ(static_cast<int>(adjoint_space(m, m.degree() - 3).size()), e.genus);
  EXPECT_FALSE(m.irreducibility_certificate().empty());
}

TEST_P(Fixtures, SampledPointsLieOnCurve) {
  auto m = load_curve(curve_path(GetParam().name), P);
  auto pts = sample_points(m, 10, 1);
  ASSERT_EQ(pts.size(), 10u);
  for (const auto& p : pts) {
    EXPECT_TRUE(m.on_curve(p.xyz));
    EXPECT_TRUE(m.is_smooth_point(p));
  }
  EXPECT_EQ(sample_points(m, 10, 1)[3], pts[3]);
}

INSTANTIATE_TEST_SUITE_P(Curves, Fixtures,
                         ::testing::Values(Expect{"QUARTIC", 4, 3}, Expect{"GEN5", 6, 5}, Expect{"TRIG5", 5, 5},
                                           Expect{"QUINTIC", 5, 6}, Expect{"GEN6", 6, 6}, Expect{"TRIG6", 6, 6},
                                           Expect{"GEN7", 7, 7}, Expect{"TRIG7", 6, 7}),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(CurveText, RoundTrip) {
  auto spec = read_curve_file(curve_path("GEN5"));
  auto again = parse_curve_text(format_curve(spec));
  EXPECT_EQ(again.degree, spec.degree);
  EXPECT_EQ(again.terms.size(), spec.terms.size());
  EXPECT_EQ(again.singularities.size(), spec.singularities.size());
  EXPECT_EQ(again.tags, spec.tags);
}

TEST(CurveText, RejectsMalformedInput) {
  EXPECT_THROW(parse_curve_text("name X\ndegree 3\nterm 1 1\n"), CurveError);
  EXPECT_THROW(parse_curve_text("name X\ndegree 3\nbogus 1\n"), CurveError);
  // Declared genus disagrees with the singularity data.
  auto spec = parse_curve_text("name C\nfield Q\ndegree 4\ngenus 2\nterm 4 0 0 1\nterm 0 4 0 1\nterm 0 0 4 1\n");
  EXPECT_THROW(CurveModel::from_spec(spec, P), CurveError);
  EXPECT_THROW(load_curve("/nonexistent/curve"), std::ios_base::failure);
}

TEST(CurveModel, TrigonalFiberIsCollinearInCanonicalSpace) {
  auto m = load_curve(curve_path("TRIG7"), P);
  CanonicalRing ring(m);
  auto fibers = trigonal_context(ring, 4).fibers;
  ASSERT_FALSE(fibers.empty());
  auto fib = fibers.front();
  std::vector<Vector> rows;
  for (const auto& q : fib) rows.push_back(m.canonical_image(q));
  EXPECT_EQ(rank_of(Matrix::from_rows(P, rows, 7)), 2u);

  auto generic = sample_points(m, 3, 8);
  rows.clear();
  for (const auto& q : generic) rows.push_back(m.canonical_image(q));
  EXPECT_EQ(rank_of(Matrix::from_rows(P, rows, 7)), 3u);
}

TEST(RiemannRoch, DimensionsOnGen6) {
  auto m = load_curve(curve_path("GEN6"), P);
  auto pts = sample_points(m, 4, 2);
  EXPECT_EQ(canonical_series(m).dim(), 6u);
  auto k_minus_p = rr_space(m, {}, Divisor::point(pts[0]));
  EXPECT_EQ(k_minus_p.dim(), 5u);
  auto k_minus_2p = rr_space(m, {}, Divisor::point(pts[0], 2));
  EXPECT_EQ(k_minus_2p.dim(), 4u);
  // deg K + p + q - r = 2g - 1, non-special: h0 = g - 1 + 1 = g.
  auto x = rr_space(m, Divisor::of({pts[0], pts[1]}), Divisor::point(pts[2]));
  EXPECT_EQ(x.dim(), 6u);
  EXPECT_EQ(x.riemann_roch, 6);
  auto x2 = rr_space(m, Divisor::point(pts[0], 2) + Divisor::point(pts[1], 2), Divisor::point(pts[2], 2));
  EXPECT_EQ(x2.dim(), 7u);
}

TEST(RiemannRoch, FiberValuesDropOneCondition) {
  auto m = load_curve(curve_path("GEN5"), P);
  auto pts = sample_points(m, 3, 5);
  auto s = rr_space(m, {}, Divisor::point(pts[0], 2) + Divisor::point(pts[1]));
  EXPECT_EQ(s.dim(), 2u);
  // The next Taylor coefficient at p imposes exactly one more condition.
  EXPECT_FALSE(is_zero(fiber_value(m, s, pts[0])));
  auto fewer = rr_space(m, {}, Divisor::point(pts[0], 3) + Divisor::point(pts[1]));
  EXPECT_EQ(fewer.dim(), 1u);
}
