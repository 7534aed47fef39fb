#include <gtest/gtest.h>

#include "thetalab/bundles.hpp"
#include "thetalab/trigonal.hpp"

using namespace thetalab;

namespace {

std::string curve_path(const std::string& name) { return std::string(THETALAB_DATA_DIR) + "/curves/" + name + ".curve"; }

struct Loaded {
  CurveModel model;
  std::unique_ptr<CanonicalRing> ring;
  IdealComponent i2;
  PetriBasis petri;
};

Loaded load(const std::string& name, std::uint64_t seed) {
  Loaded l{load_curve(curve_path(name), Field::prime(10007)), nullptr, {}, {}};
  l.ring = std::make_unique<CanonicalRing>(l.model);
  l.i2 = ideal_component(*l.ring, 2);
  l.petri = petri_basis(*l.ring, l.i2, sample_points(l.model, static_cast<std::size_t>(l.model.genus()), seed));
  return l;
}

Vector wedge(const Vector& u, const Vector& v) {
  Vector out;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) out.push_back(u[i] * v[j] - u[j] * v[i]);
  return out;
}

}  // namespace

TEST(Pairs, RankSixRoundTripAndConjugacy) {
  auto l = load("GEN6", 3);
  const auto& m = l.model;
  int tested = 0;
  for (const auto& q : l.petri.quadrics) {
    if (q.rank != 6 || tested == 2) continue;
    ++tested;
    auto [a, b] = pair_from_quadric(m, q.form, 7);
    EXPECT_TRUE(quadric_from_pair(a).projectively_equal(q.form));
    EXPECT_TRUE(quadric_from_pair(b).projectively_equal(q.form));
    auto sp = sample_points(m, 21, 11);
    for (std::size_t k = 0; k + 1 < sp.size(); ++k) {
      auto cp = m.canonical_image(sp[k]), cq = m.canonical_image(sp[k + 1]);
      bool conj = q.form.polar(cp, cq).is_zero();
      EXPECT_EQ(conj, !sections_vanishing(a, {cp, cq}).empty());
    }
    std::vector<Vector> cps;
    for (std::size_t k = 0; k < 10; ++k) cps.push_back(m.canonical_image(sp[k]));
    EXPECT_EQ(pair_isomorphisms(a, b, cps), 0u);
  }
  EXPECT_EQ(tested, 2);
}

TEST(Pairs, RankFiveSymplecticIdentification) {
  auto l = load("GEN5", 3);
  const auto& q = l.petri.quadrics.front();
  ASSERT_EQ(q.rank, 5u);
  auto [a, b] = pair_from_quadric(l.model, q.form, 5);
  EXPECT_EQ(a.rank, 5u);
  EXPECT_TRUE(quadric_from_pair(a).projectively_equal(q.form));
  EXPECT_TRUE(quadric_from_pair(b).projectively_equal(q.form));
}

TEST(Pairs, RejectsLowRank) {
  auto l = load("TRIG6", 3);
  EXPECT_THROW(pair_from_quadric(l.model, l.petri.quadrics.front().form, 1), std::invalid_argument);
}

TEST(Pfaffian, ToyChartVanishesDoublyOnDecomposables) {
  Field f = Field::prime(10007);
  Rng rng(12);
  auto rnd = [&](std::size_t n) {
    Vector v(n);
    for (auto& x : v) x = rng.scalar(f);
    return v;
  };
  Vector e1 = zero_vector(f, 6);
  e1[0] = Scalar::one(f);
  std::vector<Vector> cols;
  for (std::size_t i = 1; i < 6; ++i) {
    Vector ei = zero_vector(f, 6);
    ei[i] = Scalar::one(f);
    cols.push_back(wedge(e1, ei));
  }
  for (int k = 0; k < 3; ++k) cols.push_back(wedge(rnd(6), rnd(6)));
  Matrix chart = Matrix::from_columns(f, cols, 15);
  Poly pf = pfaffian_pullback(chart, 1);
  EXPECT_EQ(pf.degree(), 3);
  for (int t = 0; t < 50; ++t) {
    Vector x = zero_vector(f, 8);
    for (std::size_t i = 0; i < 5; ++i) x[i] = rng.scalar(f);
    EXPECT_TRUE(pf.eval(x).is_zero());
    for (std::size_t v = 0; v < 8; ++v) EXPECT_TRUE(pf.derivative(v).eval(x).is_zero());
  }
  EXPECT_FALSE(pf.eval(rnd(8)).is_zero());
}

TEST(Pfaffian, FourByFourIsPluckerRelation) {
  Field f = Field::prime(10007);
  Matrix id = Matrix::identity(f, 6);
  Poly pf = pfaffian_pullback(id, 0);
  // p12 p34 - p13 p24 + p14 p23 in the order (p12, p13, p14, p23, p24, p34).
  EXPECT_EQ(pf.coeff({1, 0, 0, 0, 0, 1}), Scalar::one(f));
  EXPECT_EQ(pf.coeff({0, 1, 0, 0, 1, 0}), -Scalar::one(f));
  EXPECT_EQ(pf.coeff({0, 0, 1, 1, 0, 0}), Scalar::one(f));
}

TEST(Extension, TwoPathsAgreeOnGenericTriples) {
  auto m = load_curve(curve_path("GEN6"), Field::prime(10007));
  auto pts = sample_points(m, 9, 21);
  for (int t = 0; t < 3; ++t) {
    auto e = build_Epqr(m, pts[3 * t], pts[3 * t + 1], pts[3 * t + 2], 5);
    EXPECT_TRUE(e.paths_agree);
    EXPECT_EQ(e.h0_minus_2p_2q, 4u);
    EXPECT_EQ(e.space.sections.dim(), 7u);
  }
}

TEST(Extension, CollinearTripleRejected) {
  auto m = load_curve(curve_path("TRIG7"), Field::prime(10007));
  CanonicalRing ring(m);
  auto fibers = trigonal_context(ring, 3).fibers;
  ASSERT_FALSE(fibers.empty());
  for (const auto& fib : fibers) EXPECT_THROW(build_Epqr(m, fib[0], fib[1], fib[2]), CollinearError);
}

TEST(Incidence, PairingVanishesOnCollinearTriples) {
  auto m = load_curve(curve_path("GEN6"), Field::prime(10007));
  CanonicalRing ring(m);
  Rng rng(4);
  std::vector<Vector> basis;
  for (int k = 0; k < 3; ++k) {
    Vector v(6);
    for (auto& x : v) x = rng.scalar(m.field());
    basis.push_back(v);
  }
  auto ew = build_EW(m, make_three_plane(ring, basis));
  auto pts = sample_points(m, 3, 5);
  auto res = incidence_pairing(ew, pts[0], pts[1], pts[2]);
  EXPECT_TRUE(res.consistent);
  EXPECT_FALSE(res.pairing.is_zero());
  auto same = incidence_pairing(ew, pts[0], pts[0], pts[2]);
  EXPECT_TRUE(same.pairing.is_zero());
}

TEST(Surjectivity, GenericGenus6SpansSym2) {
  auto l = load("GEN6", 3);
  auto sr = surjectivity_certificate(*l.ring, l.i2, l.petri, 1);
  EXPECT_EQ(sr.span_dim, 21u);
  EXPECT_TRUE(sr.monotone);
}
