#include <gtest/gtest.h>

#include "thetalab/linalg.hpp"
#include "thetalab/quadratic_form.hpp"
#include "thetalab/rng.hpp"

using namespace thetalab;

namespace {

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.scalar(f);
  return m;
}

}  // namespace

TEST(Field, ParsesDescriptors) {
  EXPECT_TRUE(Field::parse("Q").is_rational());
  EXPECT_EQ(Field::parse("Fp:10007").characteristic(), 10007u);
  EXPECT_THROW(Field::parse("Fp:10003"), std::invalid_argument);
  EXPECT_THROW(Field::prime(7), std::invalid_argument);
  EXPECT_FALSE(is_prime_number(10003));
  EXPECT_TRUE(is_prime_number(10007));
  EXPECT_TRUE(is_prime_number(65521));
}

TEST(Scalar, PrimeFieldArithmetic) {
  Field f = Field::prime(10007);
  Scalar a(f, 1234), b(f, -5);
  EXPECT_EQ((a * a.inverse()), Scalar::one(f));
  EXPECT_EQ((a + b).residue(), 1229u);
  EXPECT_EQ(b.residue(), 10002u);
  EXPECT_EQ(a.pow(10006), Scalar::one(f));
  EXPECT_EQ(parse_scalar(f, "1/2") * Scalar(f, 2), Scalar::one(f));
  EXPECT_THROW(Scalar::zero(f).inverse(), std::domain_error);
}

TEST(Scalar, RationalArithmetic) {
  Field q;
  Scalar a = parse_scalar(q, "3/4"), b = parse_scalar(q, "-1/6");
  EXPECT_EQ((a + b).to_string(), "7/12");
  EXPECT_EQ((a / b).to_string(), "-9/2");
  EXPECT_THROW(a + Scalar(Field::prime(10007), 1), FieldMismatch);
}

TEST(Scalar, ReductionOfRationals) {
  Field f = Field::prime(10007);
  EXPECT_EQ(reduce_rational(f, mpq_class(1, 3)) * Scalar(f, 3), Scalar::one(f));
  EXPECT_THROW(reduce_rational(f, mpq_class(1, 10007)), std::domain_error);
}

TEST(Linalg, KernelOfSingleRow) {
  Field small = Field::prime(1009);
  Matrix m(small, 1, 3);
  m(0, 0) = Scalar(small, 1);
  m(0, 1) = Scalar(small, 2);
  m(0, 2) = Scalar(small, 3);
  auto k = exact_kernel(m);
  EXPECT_EQ(k.rank, 1u);
  ASSERT_EQ(k.basis.size(), 2u);
  for (const auto& v : k.basis) EXPECT_TRUE(is_zero(m * v));
}

TEST(Linalg, KernelVectorsAnnihilate) {
  Field f = Field::prime(10007);
  Matrix a = random_matrix(f, 5, 9, 3);
  auto k = exact_kernel(a);
  EXPECT_EQ(k.rank, 5u);
  EXPECT_EQ(k.basis.size(), 4u);
  for (const auto& v : k.basis) EXPECT_TRUE(is_zero(a * v));
}

TEST(Linalg, InverseAndDeterminant) {
  Field f = Field::prime(65521);
  Matrix a = random_matrix(f, 6, 6, 11);
  ASSERT_FALSE(determinant(a).is_zero());
  EXPECT_EQ(a * inverse(a), Matrix::identity(f, 6));
  Matrix b = random_matrix(f, 6, 6, 12);
  EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b));
}

TEST(Linalg, SolveAndSpans) {
  Field f = Field::prime(10007);
  Matrix a = random_matrix(f, 4, 4, 5);
  Vector x{Scalar(f, 1), Scalar(f, 2), Scalar(f, 3), Scalar(f, 4)};
  auto sol = solve(a, a * x);
  ASSERT_TRUE(sol);
  EXPECT_EQ(*sol, x);
  std::vector<Vector> vs{a.row(0), a.row(1), add(a.row(0), a.row(1))};
  EXPECT_EQ(span_dimension(f, vs, 4), 2u);
  EXPECT_TRUE(in_span(f, vs, scale(Scalar(f, 7), a.row(1))));
  EXPECT_FALSE(in_span(f, vs, a.row(2)));
  for (const auto& l : annihilator(f, vs, 4))
    for (const auto& v : vs) EXPECT_TRUE(dot(l, v).is_zero());
}

TEST(Linalg, RowReductionIndependentOfThreads) {
  Field f = Field::prime(10007);
  Matrix a = random_matrix(f, 120, 140, 9);
  set_linalg_threads(1);
  auto e1 = row_reduce(a);
  set_linalg_threads(4);
  auto e4 = row_reduce(a);
  set_linalg_threads(1);
  EXPECT_EQ(e1.pivots, e4.pivots);
  EXPECT_EQ(e1.rref, e4.rref);
}

TEST(Linalg, RationalRowReduction) {
  Field q;
  Matrix a(q, 2, 2);
  a(0, 0) = parse_scalar(q, "1/2");
  a(0, 1) = parse_scalar(q, "1/3");
  a(1, 0) = parse_scalar(q, "1/4");
  a(1, 1) = parse_scalar(q, "1/6");
  EXPECT_EQ(rank_of(a), 1u);
  EXPECT_TRUE(determinant(a).is_zero());
}

TEST(QuadraticForm, HyperbolicSplitOfIdentity) {
  Field f = Field::prime(10009);
  QuadraticForm q(Matrix::identity(f, 6));
  Rng rng(1);
  Matrix b = hyperbolic_split(q, rng);
  EXPECT_EQ(b.transpose() * q.gram() * b, hyperbolic_gram(f));
  EXPECT_FALSE(determinant(b).is_zero());
}

TEST(QuadraticForm, RankPolarAndRadical) {
  Field f = Field::prime(10007);
  Matrix g(f, 4, 4);
  g(0, 1) = g(1, 0) = Scalar(f, 1);
  g(2, 2) = Scalar(f, 3);
  QuadraticForm q(g);
  EXPECT_EQ(q.rank(), 3u);
  auto rad = q.singular_basis();
  ASSERT_EQ(rad.size(), 1u);
  EXPECT_TRUE(is_zero(q.gram() * rad[0]));
  Vector u{Scalar(f, 1), Scalar(f, 2), Scalar(f, 0), Scalar(f, 0)};
  EXPECT_EQ(q.value(u), Scalar(f, 4));
  EXPECT_EQ(q.polar(u, u), q.value(u));
  EXPECT_TRUE(QuadraticForm::from_poly(q.to_poly()).projectively_equal(q));
  EXPECT_TRUE(q.scaled(Scalar(f, 5)).projectively_equal(q));
}

TEST(Rng, DeterministicSeeds) {
  EXPECT_EQ(derive_seed(1, "a", 2), derive_seed(1, "a", 2));
  EXPECT_NE(derive_seed(1, "a", 2), derive_seed(1, "b", 2));
  Rng a(5), b(5);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next(), b.next());
}
