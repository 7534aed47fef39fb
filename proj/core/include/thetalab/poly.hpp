#pragma once

#include <map>
#include <string>
#include <vector>

#include "thetalab/linalg.hpp"
#include "thetalab/scalar.hpp"

namespace thetalab {

using Exponent = std::vector<int>;

// Graded lexicographic order, largest first.
struct GrlexDesc {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

int exponent_degree(const Exponent& e);
bool exponent_divides(const Exponent& a, const Exponent& b);

class Poly {
 public:
  using Terms = std::map<Exponent, Scalar, GrlexDesc>;

  Poly() = default;
  Poly(const Field& f, std::size_t nvars) : field_(f), nvars_(nvars) {}
  static Poly constant(const Field& f, std::size_t nvars, const Scalar& c);
  static Poly variable(const Field& f, std::size_t nvars, std::size_t i);
  static Poly monomial(const Field& f, const Exponent& e, const Scalar& c);

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  bool is_homogeneous() const;
  Scalar coeff(const Exponent& e) const;
  void add_term(const Exponent& e, const Scalar& c);

  const Exponent& leading_exponent() const;
  const Scalar& leading_coefficient() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly scaled(const Scalar& s) const;
  Poly pow(unsigned n) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Scalar eval(const Vector& point) const;
  Poly derivative(std::size_t var) const;
  // Composition: variable i is replaced by images[i] (all in one ring).
  Poly substitute(const std::vector<Poly>& images) const;

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  friend Poly normal_form(const Poly& p, const Poly& f);
  Field field_;
  std::size_t nvars_ = 0;
  Terms terms_;
};

std::vector<Exponent> monomials_of_degree(std::size_t nvars, int degree);

// Remainder of p modulo the principal ideal (f); {f} is a Groebner basis of (f).
Poly normal_form(const Poly& p, const Poly& f);

// Indexed set of monomials used for coordinate vectors.
class MonomialBasis {
 public:
  MonomialBasis() = default;
  explicit MonomialBasis(std::vector<Exponent> monomials);
  static MonomialBasis of_degree(std::size_t nvars, int degree);
  // Degree-d monomials not divisible by the leading monomial of f.
  static MonomialBasis standard(const Poly& f, int degree);

  std::size_t size() const { return mons_.size(); }
  const Exponent& operator[](std::size_t i) const { return mons_[i]; }
  const std::vector<Exponent>& monomials() const { return mons_; }
  long index_of(const Exponent& e) const;

  // Throws if p has a term outside the basis.
  Vector coordinates(const Poly& p) const;
  Poly poly(const Field& f, const Vector& coords) const;

 private:
  std::vector<Exponent> mons_;
  std::map<Exponent, std::size_t> index_;
};

}  // namespace thetalab
