#pragma once

#include <vector>

#include "thetalab/rng.hpp"
#include "thetalab/scalar.hpp"

namespace thetalab {

// Dense univariate polynomial, coefficients from low to high degree, trailing zeros trimmed.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(const Field& f) : field_(f) {}
  UPoly(const Field& f, std::vector<Scalar> coeffs);
  static UPoly monomial(const Field& f, int degree, const Scalar& c);

  const Field& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(int i) const;
  Scalar leading() const;

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly scaled(const Scalar& s) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }
  Scalar eval(const Scalar& x) const;
  UPoly derivative() const;
  UPoly monic() const;

 private:
  Field field_;
  std::vector<Scalar> c_;
  void trim();
};

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly operator%(const UPoly& a, const UPoly& b);
UPoly exact_quotient(const UPoly& a, const UPoly& b);
UPoly gcd(const UPoly& a, const UPoly& b);
UPoly powmod(const UPoly& base, std::uint64_t e, const UPoly& mod);
bool is_squarefree(const UPoly& f);

// Distinct roots in F_p, sorted by residue.
std::vector<Scalar> roots_fp(const UPoly& f, Rng& rng);
// True iff f is irreducible over F_p (deg >= 1).
bool is_irreducible_fp(const UPoly& f);

}  // namespace thetalab
