#include "thetalab/quadratic_form.hpp"

#include <stdexcept>

#include "thetalab/upoly.hpp"

namespace thetalab {

QuadraticForm::QuadraticForm(Matrix gram, std::string label) : gram_(std::move(gram)), label_(std::move(label)) {
  if (gram_.rows() != gram_.cols()) throw std::invalid_argument("Gram matrix must be square");
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = i + 1; j < gram_.cols(); ++j)
      if (gram_(i, j) != gram_(j, i)) throw std::invalid_argument("Gram matrix must be symmetric");
}

QuadraticForm QuadraticForm::from_poly(const Poly& q, std::string label) {
  if (!q.is_zero() && (q.degree() != 2 || !q.is_homogeneous()))
    throw std::invalid_argument("quadratic form needs a homogeneous quadric");
  const Field& f = q.field();
  std::size_t n = q.nvars();
  Matrix g(f, n, n);
  Scalar half = Scalar::one(f) / Scalar(f, 2L);
  for (const auto& [e, c] : q.terms()) {
    std::size_t i = n, j = n;
    for (std::size_t k = 0; k < n; ++k) {
      for (int r = 0; r < e[k]; ++r) (i == n ? i : j) = k;
    }
    if (j == n) j = i;
    if (i == j) {
      g(i, i) += c;
    } else {
      g(i, j) += c * half;
      g(j, i) += c * half;
    }
  }
  return QuadraticForm(std::move(g), std::move(label));
}

Poly QuadraticForm::to_poly() const {
  const Field& f = field();
  std::size_t n = dim();
  Poly p(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Exponent e(n, 0);
      e[i] += 1;
      e[j] += 1;
      p.add_term(e, i == j ? gram_(i, i) : gram_(i, j) * Scalar(f, 2L));
    }
  return p;
}

Scalar QuadraticForm::value(const Vector& v) const { return polar(v, v); }

Scalar QuadraticForm::polar(const Vector& u, const Vector& v) const { return dot(u, gram_ * v); }

std::size_t QuadraticForm::rank() const { return rank_of(gram_); }

std::vector<Vector> QuadraticForm::singular_basis() const { return exact_kernel(gram_).basis; }

bool QuadraticForm::projectively_equal(const QuadraticForm& o) const {
  return dim() == o.dim() && thetalab::projectively_equal(upper_coordinates(), o.upper_coordinates());
}

QuadraticForm QuadraticForm::pullback(const Matrix& l) const {
  return QuadraticForm(l.transpose() * gram_ * l, label_);
}

QuadraticForm QuadraticForm::operator+(const QuadraticForm& o) const {
  Matrix g = gram_;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) g(i, j) += o.gram_(i, j);
  return QuadraticForm(std::move(g));
}

QuadraticForm QuadraticForm::scaled(const Scalar& s) const {
  Matrix g = gram_;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) g(i, j) *= s;
  return QuadraticForm(std::move(g), label_);
}

Vector QuadraticForm::upper_coordinates() const {
  Vector v;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i; j < dim(); ++j) v.push_back(gram_(i, j));
  return v;
}

Matrix hyperbolic_gram(const Field& f) {
  Matrix h(f, 6, 6);
  Scalar half = Scalar::one(f) / Scalar(f, 2L);
  for (std::size_t k = 0; k < 3; ++k) {
    h(2 * k, 2 * k + 1) = half;
    h(2 * k + 1, 2 * k) = half;
  }
  return h;
}

namespace {

Vector column_combination(const Matrix& w, const Vector& coeffs) { return w * coeffs; }

}  // namespace

Matrix hyperbolic_split(const QuadraticForm& q, Rng& rng) {
  const Field& f = q.field();
  if (!f.is_prime()) throw std::invalid_argument("hyperbolic_split requires finite-field mode (F_p)");
  if (q.dim() != 6 || q.rank() != 6) throw std::invalid_argument("not a nondegenerate 6-dim form");
  const Matrix& g = q.gram();
  Matrix out(f, 6, 6);
  Matrix w = Matrix::identity(f, 6);
  Scalar two(f, 2L);
  for (std::size_t k = 0; k < 3; ++k) {
    std::size_t m = w.cols();
    Vector v;
    for (int attempt = 0; attempt < 2000 && v.empty(); ++attempt) {
      Vector cu(m), cw(m);
      for (std::size_t i = 0; i < m; ++i) {
        cu[i] = rng.scalar(f);
        cw[i] = rng.scalar(f);
      }
      Vector u = column_combination(w, cu), x = column_combination(w, cw);
      if (is_zero(x)) continue;
      Scalar a = q.value(x), b = q.polar(u, x), c = q.value(u);
      std::vector<Scalar> ts;
      if (a.is_zero()) {
        if (b.is_zero()) continue;
        ts.push_back(-c / (two * b));
      } else {
        Scalar disc = b * b - a * c;
        UPoly sq(f, {-disc, Scalar::zero(f), Scalar::one(f)});
        for (const auto& s : roots_fp(sq, rng)) ts.push_back((-b + s) / a);
      }
      for (const auto& t : ts) {
        Vector cand = add(u, scale(t, x));
        if (!is_zero(cand) && q.value(cand).is_zero()) {
          v = cand;
          break;
        }
      }
    }
    if (v.empty()) throw std::domain_error("form is not split over the prime field (anisotropic residue)");
    Vector partner;
    for (std::size_t j = 0; j < m; ++j) {
      Vector col = w.column(j);
      if (!q.polar(v, col).is_zero()) {
        partner = col;
        break;
      }
    }
    if (partner.empty()) throw std::domain_error("degenerate restriction during hyperbolic split");
    Scalar bvw = q.polar(v, partner);
    partner = sub(partner, scale(q.value(partner) / (two * bvw), v));
    partner = scale(Scalar::one(f) / (two * q.polar(v, partner)), partner);
    for (std::size_t i = 0; i < 6; ++i) {
      out(i, 2 * k) = v[i];
      out(i, 2 * k + 1) = partner[i];
    }
    if (k == 2) break;
    Matrix cond(f, 2, m);
    Vector gv = g * v, gp = g * partner;
    for (std::size_t j = 0; j < m; ++j) {
      Vector col = w.column(j);
      cond(0, j) = dot(gv, col);
      cond(1, j) = dot(gp, col);
    }
    auto ker = exact_kernel(cond).basis;
    std::vector<Vector> cols;
    for (const auto& kv : ker) cols.push_back(w * kv);
    w = Matrix::from_columns(f, cols, 6);
  }
  if (!(out.transpose() * g * out == hyperbolic_gram(f)))
    throw std::logic_error("hyperbolic split verification failed");
  return out;
}

Matrix radical_adapted_basis(const QuadraticForm& q) {
  const Field& f = q.field();
  std::size_t n = q.dim();
  auto rad = q.singular_basis();
  std::vector<Vector> cols;
  std::vector<Vector> current = rad;
  for (std::size_t i = 0; i < n && cols.size() + rad.size() < n; ++i) {
    Vector e(n, Scalar::zero(f));
    e[i] = Scalar::one(f);
    auto trial = current;
    trial.push_back(e);
    if (span_dimension(f, trial, n) == trial.size()) {
      current = trial;
      cols.push_back(e);
    }
  }
  for (const auto& r : rad) cols.push_back(r);
  return Matrix::from_columns(f, cols, n);
}

}  // namespace thetalab
