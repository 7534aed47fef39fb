#include <gtest/gtest.h>

#include "thetalab/poly.hpp"
#include "thetalab/upoly.hpp"

using namespace thetalab;

namespace {
const Field F = Field::prime(10007);
Poly var(std::size_t i, std::size_t n = 3) { return Poly::variable(F, n, i); }
Scalar s(long v) { return Scalar(F, v); }
}  // namespace

TEST(Poly, RingOperations) {
  Poly x = var(0), y = var(1), z = var(2);
  Poly p = (x + y) * (x - y);
  EXPECT_EQ(p, x * x - y * y);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_TRUE(p.is_homogeneous());
  EXPECT_FALSE((p + z).is_homogeneous());
  EXPECT_EQ((x + y).pow(3).coeff({1, 2, 0}), s(3));
  EXPECT_EQ(p.eval({s(3), s(2), s(9)}), s(5));
}

TEST(Poly, DerivativeAndSubstitution) {
  Poly x = var(0), y = var(1), z = var(2);
  Poly p = x * x * y + z.scaled(s(4));
  EXPECT_EQ(p.derivative(0), (x * y).scaled(s(2)));
  Poly q = p.substitute({y, x, z});
  EXPECT_EQ(q, y * y * x + z.scaled(s(4)));
}

TEST(Poly, NormalFormIsRemainder) {
  Poly x = var(0), y = var(1), z = var(2);
  Poly f = x * x * x + y * y * z + z * z * z;
  Poly h = (x * y + z * z) * f + x * x * y;
  EXPECT_EQ(normal_form(h, f), normal_form(x * x * y, f));
  EXPECT_TRUE(normal_form(f * f, f).is_zero());
  Poly r = normal_form(x.pow(5), f);
  for (const auto& [e, c] : r.terms()) EXPECT_FALSE(exponent_divides(f.leading_exponent(), e));
}

TEST(Poly, MonomialBasisCounts) {
  EXPECT_EQ(monomials_of_degree(3, 4).size(), 15u);
  EXPECT_EQ(monomials_of_degree(6, 2).size(), 21u);
  Poly x = var(0), y = var(1), z = var(2);
  Poly f = x.pow(5) + y.pow(5) + z.pow(5);
  // Standard monomials of degree k in k[x,y,z]/(f) number 5k - 5 for k >= 5.
  EXPECT_EQ(MonomialBasis::standard(f, 6).size(), 25u);
  auto b = MonomialBasis::of_degree(3, 2);
  Poly p = x * y.scaled(s(3)) + z * z;
  EXPECT_EQ(b.poly(F, b.coordinates(p)), p);
  EXPECT_THROW(b.coordinates(x), std::invalid_argument);
}

TEST(UPoly, DivisionGcdAndRoots) {
  UPoly a(F, {s(-1), s(0), s(1)});   // t^2 - 1
  UPoly b(F, {s(-1), s(1)});         // t - 1
  UPoly q, r;
  divmod(a, b, q, r);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(q, UPoly(F, {s(1), s(1)}));
  EXPECT_EQ(gcd(a, b).monic(), b);
  Rng rng(3);
  auto roots = roots_fp(a * UPoly(F, {s(-5), s(1)}), rng);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_EQ(roots[0], s(1));
  EXPECT_EQ(roots[1], s(5));
  EXPECT_EQ(roots[2], s(-1));
  EXPECT_FALSE(is_squarefree(b * b));
  EXPECT_TRUE(is_irreducible_fp(UPoly(F, {s(5), s(0), s(1)})) == roots_fp(UPoly(F, {s(5), s(0), s(1)}), rng).empty());
}
