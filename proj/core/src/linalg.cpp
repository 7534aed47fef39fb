#include "thetalab/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace thetalab {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_linalg_threads(unsigned n) { g_threads = n == 0 ? 1 : n; }
unsigned linalg_threads() { return g_threads; }

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_columns(const Field& f, const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vector Matrix::row(std::size_t i) const { return Vector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

Vector Matrix::column(std::size_t j) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  if (field_ != o.field_) throw FieldMismatch("matrix product over different fields");
  Matrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

Vector Matrix::operator*(const Vector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
  Vector r(rows_, Scalar::zero(field_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && a_ == o.a_;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
}

void Matrix::append_row(const Vector& r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("row length mismatch");
  a_.insert(a_.end(), r.begin(), r.end());
  ++rows_;
}

namespace {

void check_fields(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).field() != m.field()) throw FieldMismatch("matrix entries lie in different fields");
}

void eliminate_rows(Matrix& m, std::size_t pivot_row, std::size_t col, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    if (i == pivot_row) continue;
    Scalar factor = m(i, col);
    if (factor.is_zero()) continue;
    for (std::size_t j = col; j < m.cols(); ++j) {
      const Scalar& pv = m(pivot_row, j);
      if (!pv.is_zero()) m(i, j) -= factor * pv;
    }
  }
}

}  // namespace

Echelon row_reduce(Matrix m) {
  check_fields(m);
  Echelon e;
  std::size_t r = 0;
  const unsigned threads = linalg_threads();
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    const std::size_t work = m.rows() * (m.cols() - c);
    if (threads > 1 && work > 20000) {
      std::vector<std::thread> pool;
      std::size_t chunk = (m.rows() + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        std::size_t b = t * chunk, en = std::min(m.rows(), b + chunk);
        if (b >= en) break;
        pool.emplace_back(eliminate_rows, std::ref(m), r, c, b, en);
      }
      for (auto& th : pool) th.join();
    } else {
      eliminate_rows(m, r, c, 0, m.rows());
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.rref = std::move(m);
  return e;
}

KernelResult exact_kernel(const Matrix& m) {
  Echelon e = row_reduce(m);
  KernelResult k;
  k.rank = e.rank();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols(), Scalar::zero(m.field()));
    v[f] = Scalar::one(m.field());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rref(i, f);
    k.basis.push_back(std::move(v));
  }
  return k;
}

std::size_t rank_of(const Matrix& m) { return row_reduce(m).rank(); }

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs size mismatch");
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Echelon e = row_reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vector x(a.cols(), Scalar::zero(a.field()));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.rref(i, a.cols());
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar::one(m.field());
  }
  Echelon e = row_reduce(std::move(aug));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
  return inv;
}

Scalar determinant(const Matrix& m0) {
  if (m0.rows() != m0.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  Matrix m = m0;
  std::size_t n = m.rows();
  Scalar det = Scalar::one(m.field());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c).is_zero()) ++piv;
    if (piv == n) return Scalar::zero(m.field());
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    Scalar inv = m(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      Scalar f = m(i, c) * inv;
      if (f.is_zero()) continue;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

std::vector<Vector> span_basis(const Field& f, const std::vector<Vector>& vs, std::size_t dim) {
  if (vs.empty()) return {};
  Echelon e = row_reduce(Matrix::from_rows(f, vs, dim));
  std::vector<Vector> out;
  for (std::size_t i = 0; i < e.rank(); ++i) out.push_back(e.rref.row(i));
  return out;
}

std::size_t span_dimension(const Field& f, const std::vector<Vector>& vs, std::size_t dim) {
  if (vs.empty()) return 0;
  return rank_of(Matrix::from_rows(f, vs, dim));
}

std::vector<Vector> annihilator(const Field& f, const std::vector<Vector>& vs, std::size_t dim) {
  if (vs.empty()) {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < dim; ++i) {
      Vector v(dim, Scalar::zero(f));
      v[i] = Scalar::one(f);
      out.push_back(v);
    }
    return out;
  }
  return exact_kernel(Matrix::from_rows(f, vs, dim)).basis;
}

std::vector<Vector> intersect_spans(const Field& f, const std::vector<Vector>& a, const std::vector<Vector>& b,
                                    std::size_t dim) {
  std::vector<Vector> ann = annihilator(f, a, dim);
  auto annb = annihilator(f, b, dim);
  ann.insert(ann.end(), annb.begin(), annb.end());
  return annihilator(f, ann, dim);
}

bool in_span(const Field& f, const std::vector<Vector>& span, const Vector& v) {
  std::vector<Vector> all = span;
  std::size_t r0 = span_dimension(f, span, v.size());
  all.push_back(v);
  return span_dimension(f, all, v.size()) == r0;
}

Vector zero_vector(const Field& f, std::size_t n) { return Vector(n, Scalar::zero(f)); }

Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size() || a.empty()) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    throw std::invalid_argument("dot: empty vectors");
  }
  Scalar s = Scalar::zero(a[0].field());
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vector add(const Vector& a, const Vector& b) {
  Vector r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

Vector sub(const Vector& a, const Vector& b) {
  Vector r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

Vector scale(const Scalar& s, const Vector& v) {
  Vector r = v;
  for (auto& x : r) x *= s;
  return r;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool projectively_equal(const Vector& a, const Vector& b) {
  if (a.size() != b.size() || is_zero(a) || is_zero(b)) return false;
  std::size_t k = 0;
  while (a[k].is_zero()) ++k;
  if (b[k].is_zero()) return false;
  Scalar ratio = b[k] / a[k];
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] * ratio != b[i]) return false;
  return true;
}

Vector normalize_projective(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return scale(x.inverse(), v);
  return v;
}

}  // namespace thetalab
