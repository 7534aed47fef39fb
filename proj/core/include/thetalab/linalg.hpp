#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "thetalab/scalar.hpp"

namespace thetalab {

using Vector = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, std::size_t rows, std::size_t cols);
  static Matrix identity(const Field& f, std::size_t n);
  static Matrix from_rows(const Field& f, const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const Field& f, const std::vector<Vector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Vector operator*(const Vector& v) const;
  bool operator==(const Matrix& o) const;
  bool is_zero() const;
  void append_row(const Vector& r);

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

struct Echelon {
  Matrix rref;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

struct KernelResult {
  std::size_t rank = 0;
  std::vector<Vector> basis;
};

// Worker threads used by row reduction; results do not depend on this value.
void set_linalg_threads(unsigned n);
unsigned linalg_threads();

Echelon row_reduce(Matrix m);
KernelResult exact_kernel(const Matrix& m);
std::size_t rank_of(const Matrix& m);
std::optional<Vector> solve(const Matrix& a, const Vector& b);
Matrix inverse(const Matrix& m);
Scalar determinant(const Matrix& m);

// Reduced echelon basis of the span of the given vectors.
std::vector<Vector> span_basis(const Field& f, const std::vector<Vector>& vs, std::size_t dim);
std::size_t span_dimension(const Field& f, const std::vector<Vector>& vs, std::size_t dim);
// Linear functionals vanishing on the span (basis of the annihilator).
std::vector<Vector> annihilator(const Field& f, const std::vector<Vector>& vs, std::size_t dim);
std::vector<Vector> intersect_spans(const Field& f, const std::vector<Vector>& a, const std::vector<Vector>& b,
                                    std::size_t dim);
bool in_span(const Field& f, const std::vector<Vector>& span, const Vector& v);

Vector zero_vector(const Field& f, std::size_t n);
Scalar dot(const Vector& a, const Vector& b);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Scalar& s, const Vector& v);
bool is_zero(const Vector& v);
// True iff a and b are nonzero and proportional.
bool projectively_equal(const Vector& a, const Vector& b);
// Scale so that the first nonzero entry is 1.
Vector normalize_projective(const Vector& v);

}  // namespace thetalab
