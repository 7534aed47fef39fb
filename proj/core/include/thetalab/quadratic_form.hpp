#pragma once

#include <string>
#include <vector>

#include "thetalab/linalg.hpp"
#include "thetalab/poly.hpp"
#include "thetalab/rng.hpp"

namespace thetalab {

class QuadraticForm {
 public:
  QuadraticForm() = default;
  explicit QuadraticForm(Matrix gram, std::string label = {});
  // Homogeneous quadric polynomial in n variables.
  static QuadraticForm from_poly(const Poly& q, std::string label = {});

  std::size_t dim() const { return gram_.rows(); }
  const Matrix& gram() const { return gram_; }
  const Field& field() const { return gram_.field(); }
  const std::string& label() const { return label_; }

  Poly to_poly() const;
  Scalar value(const Vector& v) const;
  Scalar polar(const Vector& u, const Vector& v) const;
  std::size_t rank() const;
  // Basis of the Gram kernel; Sing Q is its projectivization.
  std::vector<Vector> singular_basis() const;
  bool is_zero() const { return gram_.is_zero(); }
  bool projectively_equal(const QuadraticForm& o) const;
  // Form x -> Q(L x) for an n x m matrix L.
  QuadraticForm pullback(const Matrix& l) const;
  QuadraticForm operator+(const QuadraticForm& o) const;
  QuadraticForm scaled(const Scalar& s) const;
  // Upper-triangle coordinates (i <= j) of the Gram matrix.
  Vector upper_coordinates() const;

 private:
  Matrix gram_;
  std::string label_;
};

// Gram matrix of x0 x1 + x2 x3 + x4 x5.
Matrix hyperbolic_gram(const Field& f);

// Invertible B with B^T G B = hyperbolic_gram, for a nondegenerate 6-dim form over F_p.
Matrix hyperbolic_split(const QuadraticForm& q, Rng& rng);

// Invertible S whose last (n - rank) columns span the radical of q.
Matrix radical_adapted_basis(const QuadraticForm& q);

}  // namespace thetalab
