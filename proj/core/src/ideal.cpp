#include "thetalab/ideal.hpp"

#include <algorithm>
#include <stdexcept>

namespace thetalab {

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Scalar falling(const Field& f, int a, int b) {
  Scalar r = Scalar::one(f);
  for (int i = 0; i < b; ++i) r = r * Scalar(f, static_cast<long>(a - i));
  return r;
}

// Rows: partial derivatives of order < t at c, columns: monomials.
Matrix derivative_conditions(const MonomialBasis& mons, const Vector& c, int t) {
  const Field& f = c[0].field();
  std::size_t g = c.size();
  Matrix out(f, 0, mons.size());
  for (int k = 0; k < t; ++k) {
    MonomialBasis ds = MonomialBasis::of_degree(g, k);
    for (std::size_t d = 0; d < ds.size(); ++d) {
      Vector row(mons.size(), Scalar::zero(f));
      for (std::size_t m = 0; m < mons.size(); ++m) {
        const Exponent& a = mons[m];
        const Exponent& b = ds[d];
        Scalar v = Scalar::one(f);
        for (std::size_t i = 0; i < g && !v.is_zero(); ++i) {
          if (b[i] > a[i]) {
            v = Scalar::zero(f);
            break;
          }
          v = v * falling(f, a[i], b[i]) * c[i].pow(static_cast<unsigned>(a[i] - b[i]));
        }
        row[m] = v;
      }
      out.append_row(row);
    }
  }
  return out;
}

Matrix sym_outer(const Vector& u, const Vector& v) {
  const Field& f = u[0].field();
  Matrix m(f, u.size(), u.size());
  Scalar half = Scalar(f, 2L).inverse();
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t b = 0; b < u.size(); ++b) m(a, b) = half * (u[a] * v[b] + v[a] * u[b]);
  return m;
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
  Matrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

}  // namespace

CanonicalRing::CanonicalRing(const CurveModel& model) : model_(&model) {
  const Field& f = model.field();
  adjoint_monomials_ = MonomialBasis::standard(model.equation(), model.degree() - 3);
  std::vector<Vector> cols;
  for (const auto& h : model.canonical_forms()) cols.push_back(adjoint_monomials_.coordinates(h));
  adjoint_matrix_ = Matrix::from_columns(f, cols, adjoint_monomials_.size());
}

const Poly& CanonicalRing::product(const Exponent& e) {
  auto it = cache_.find(e);
  if (it != cache_.end()) return it->second;
  const Field& f = model_->field();
  std::size_t k = 0;
  while (k < e.size() && e[k] == 0) ++k;
  Poly value;
  if (k == e.size()) {
    value = Poly::constant(f, 3, Scalar::one(f));
  } else {
    Exponent prev = e;
    --prev[k];
    value = normal_form(product(prev) * model_->canonical_forms()[k], model_->equation());
  }
  return cache_.emplace(e, std::move(value)).first->second;
}

Poly CanonicalRing::section(const Poly& form) {
  if (form.nvars() != static_cast<std::size_t>(genus()))
    throw std::invalid_argument("form must be in the canonical coordinates");
  Poly r(model_->field(), 3);
  for (const auto& [e, c] : form.terms()) r += product(e).scaled(c);
  return r;
}

const MonomialBasis& CanonicalRing::standard(int degree) {
  auto it = standard_.find(degree);
  if (it != standard_.end()) return it->second;
  return standard_.emplace(degree, MonomialBasis::standard(model_->equation(), degree)).first->second;
}

Vector CanonicalRing::section_coordinates(const Poly& form) {
  int n = form.degree();
  if (n < 0) n = 0;
  return standard(n * (model_->degree() - 3)).coordinates(section(form));
}

Poly CanonicalRing::adjoint(const Vector& linear) const {
  const auto& forms = model_->canonical_forms();
  if (linear.size() != forms.size()) throw std::invalid_argument("linear form has wrong length");
  Poly r(model_->field(), 3);
  for (std::size_t i = 0; i < forms.size(); ++i) r += forms[i].scaled(linear[i]);
  return r;
}

Vector CanonicalRing::coordinates_of_adjoint(const Poly& h) const {
  auto x = solve(adjoint_matrix_, adjoint_monomials_.coordinates(normal_form(h, model_->equation())));
  if (!x) throw std::invalid_argument("form is not a canonical adjoint");
  return *x;
}

std::vector<Vector> IdealComponent::coordinate_vectors() const {
  std::vector<Vector> out;
  for (const auto& b : basis) out.push_back(monomials.coordinates(b));
  return out;
}

bool IdealComponent::contains(const Poly& form) const {
  if (basis.empty()) return form.is_zero();
  return in_span(basis[0].field(), coordinate_vectors(), monomials.coordinates(form));
}

IdealComponent ideal_component(CanonicalRing& ring, int n) {
  if (n < 2) throw std::invalid_argument("ideal_component needs n >= 2");
  const CurveModel& model = ring.model();
  const Field& f = model.field();
  std::size_t g = static_cast<std::size_t>(model.genus());
  IdealComponent comp;
  comp.degree = n;
  comp.order = 1;
  comp.nvars = g;
  comp.curve = model.name();
  comp.monomials = MonomialBasis::of_degree(g, n);
  const MonomialBasis& target = ring.standard(n * (model.degree() - 3));
  std::vector<Vector> cols;
  for (const auto& e : comp.monomials.monomials()) cols.push_back(target.coordinates(ring.product(e)));
  Matrix m = Matrix::from_columns(f, cols, target.size());
  for (const auto& v : exact_kernel(m).basis) comp.basis.push_back(comp.monomials.poly(f, v));
  if (n == 2 && comp.dim() > (g - 2) * (g - 3) / 2)
    throw CurveError("canonical map is not an embedding (hyperelliptic model)");
  return comp;
}

IdealComponent ideal_component(const CurveModel& model, int n) {
  CanonicalRing ring(model);
  return ideal_component(ring, n);
}

IdealComponent higher_ideal(const CurveModel& model, int t, int n, std::uint64_t seed) {
  if (t < 1 || n < t) throw std::invalid_argument("higher_ideal needs t >= 1 and n >= t");
  const Field& f = model.field();
  std::size_t g = static_cast<std::size_t>(model.genus());
  IdealComponent comp;
  comp.degree = n;
  comp.order = t;
  comp.nvars = g;
  comp.curve = model.name();
  comp.monomials = MonomialBasis::of_degree(g, n);
  std::size_t per_point = 0;
  for (int k = 0; k < t; ++k) per_point += binom(g - 1 + static_cast<std::size_t>(k), static_cast<std::size_t>(k));
  std::size_t count = comp.monomials.size() / per_point + 4;
  long previous = -1;
  std::vector<Vector> kernel;
  for (int round = 0; round < 12; ++round) {
    std::vector<CurvePoint> pts;
    try {
      pts = sample_points(model, count, derive_seed(seed, "higher_ideal"));
    } catch (const std::domain_error&) {
      throw CurveError("sampling cannot stabilize: field too small");
    }
    Matrix cond(f, 0, comp.monomials.size());
    for (const auto& p : pts) {
      Matrix rows = derivative_conditions(comp.monomials, model.canonical_image(p), t);
      for (std::size_t r = 0; r < rows.rows(); ++r) cond.append_row(rows.row(r));
    }
    kernel = exact_kernel(cond).basis;
    comp.sample_size = count;
    if (static_cast<long>(kernel.size()) == previous) break;
    previous = static_cast<long>(kernel.size());
    count *= 2;
    if (round == 11) throw CurveError("sampling cannot stabilize");
  }
  for (const auto& v : kernel) comp.basis.push_back(comp.monomials.poly(f, v));
  return comp;
}

bool vanishes_on_sample(const CurveModel& model, const IdealComponent& comp, std::size_t points,
                        std::uint64_t seed) {
  auto pts = sample_points(model, points, derive_seed(seed, "vanishing"));
  auto vecs = comp.coordinate_vectors();
  for (const auto& p : pts) {
    Matrix rows = derivative_conditions(comp.monomials, model.canonical_image(p), comp.order);
    for (const auto& v : vecs)
      if (!is_zero(rows * v)) return false;
  }
  return true;
}

SyzygyReport syzygy_kernel(const IdealComponent& i2, const IdealComponent& i4, std::uint64_t seed) {
  if (i2.degree != 2 || i4.degree != 4) throw std::invalid_argument("syzygy_kernel needs I(2) and I(4)");
  SyzygyReport rep;
  rep.ideal2_dim = i2.dim();
  rep.ideal4_dim = i4.dim();
  std::size_t n = i2.dim();
  rep.sym2_dim = n * (n + 1) / 2;
  if (n == 0) {
    rep.consistency = true;
    return rep;
  }
  const Field& f = i2.basis[0].field();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Poly> products;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      pairs.emplace_back(a, b);
      products.push_back(i2.basis[a] * i2.basis[b]);
    }
  Matrix basis4 = Matrix::from_columns(f, i4.coordinate_vectors(), i4.monomials.size());
  rep.m = Matrix(f, i4.dim(), products.size());
  for (std::size_t c = 0; c < products.size(); ++c) {
    auto x = solve(basis4, i4.monomials.coordinates(products[c]));
    if (!x) throw std::logic_error("product of quadrics outside I(4)");
    for (std::size_t r = 0; r < i4.dim(); ++r) rep.m(r, c) = (*x)[r];
  }
  KernelResult ker = exact_kernel(rep.m);
  rep.rank = ker.rank;
  rep.kernel_dim = ker.basis.size();
  Scalar half = Scalar(f, 2L).inverse();
  bool ok = rep.rank + rep.kernel_dim == rep.sym2_dim;
  for (const auto& v : ker.basis) {
    Matrix s(f, n, n);
    Poly check(f, i2.nvars);
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      auto [a, b] = pairs[c];
      if (a == b) {
        s(a, a) = v[c];
      } else {
        s(a, b) = v[c] * half;
        s(b, a) = v[c] * half;
      }
      check += products[c].scaled(v[c]);
    }
    if (!check.is_zero()) ok = false;
    rep.kernel.push_back(s);
  }
  Rng rng(derive_seed(seed, "syzygy-check"));
  for (int trial = 0; trial < 4; ++trial) {
    std::size_t c = static_cast<std::size_t>(rng.below(pairs.size()));
    Poly rebuilt(f, i2.nvars);
    for (std::size_t r = 0; r < i4.dim(); ++r) rebuilt += i4.basis[r].scaled(rep.m(r, c));
    if (rebuilt != products[c]) ok = false;
  }
  rep.consistency = ok;
  return rep;
}

GeneralPosition general_position_check(const CurveModel& model, const IdealComponent& i2,
                                       const std::vector<CurvePoint>& points) {
  GeneralPosition gp;
  std::size_t g = static_cast<std::size_t>(model.genus());
  if (points.size() < g - 2) throw std::invalid_argument("general_position_check needs g-2 points");
  std::size_t k = g - 2;
  gp.expected = k * (k - 1) / 2;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (points[a] == points[b]) {
        gp.reason = "repeated point " + points[a].to_string();
        return gp;
      }
  std::vector<Vector> imgs;
  for (std::size_t a = 0; a < k; ++a) imgs.push_back(model.canonical_image(points[a]));
  std::vector<QuadraticForm> qs;
  for (const auto& q : i2.basis) qs.push_back(QuadraticForm::from_poly(q));
  Matrix m(model.field(), 0, qs.size());
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      Vector row;
      for (const auto& q : qs) row.push_back(q.polar(imgs[a], imgs[b]));
      m.append_row(row);
    }
  gp.rank = qs.empty() ? 0 : rank_of(m);
  gp.ok = gp.rank == gp.expected && gp.expected == qs.size();
  if (!gp.ok)
    gp.reason = "pair functionals have rank " + std::to_string(gp.rank) + ", expected " + std::to_string(gp.expected);
  return gp;
}

PetriBasis petri_basis(CanonicalRing& ring, const IdealComponent& i2, const std::vector<CurvePoint>& points) {
  const CurveModel& model = ring.model();
  const Field& f = model.field();
  int g = model.genus();
  std::size_t gs = static_cast<std::size_t>(g);
  if (points.size() != gs) throw std::invalid_argument("petri_basis needs exactly g points");
  GeneralPosition gp = general_position_check(model, i2, points);
  if (!gp.ok) throw PetriError("points are not in general position: " + gp.reason);

  PetriBasis pb;
  pb.points = points;
  std::vector<Vector> imgs;
  for (const auto& p : points) imgs.push_back(model.canonical_image(p));
  for (std::size_t i = 0; i < gs; ++i) {
    Divisor others;
    for (std::size_t j = 0; j < gs; ++j)
      if (j != i) others = others + Divisor::point(points[j]);
    LinearSeries s = rr_space(model, Divisor(), others);
    if (s.dim() != 1)
      throw PetriError("H0(K - sum of other points) has dimension " + std::to_string(s.dim()) +
                       "; resample the points");
    Vector w = ring.coordinates_of_adjoint(s.basis[0]);
    Scalar at = dot(w, imgs[i]);
    if (at.is_zero()) throw PetriError("dual differential vanishes at its own point; resample");
    pb.omega.push_back(scale(at.inverse(), w));
  }
  Matrix wmat = Matrix::from_rows(f, pb.omega, gs);

  std::vector<Poly> adj;
  for (const auto& w : pb.omega) adj.push_back(ring.adjoint(w));
  const MonomialBasis& target = ring.standard(2 * (model.degree() - 3));
  auto prod = [&](std::size_t a, std::size_t b) {
    return target.coordinates(normal_form(adj[a] * adj[b], model.equation()));
  };
  std::size_t k = gs - 2;
  std::vector<Vector> cols;
  for (std::size_t s = 0; s < k; ++s) cols.push_back(prod(s, k));
  for (std::size_t s = 0; s < k; ++s) cols.push_back(prod(s, k + 1));
  cols.push_back(prod(k, k + 1));
  Matrix system = Matrix::from_columns(f, cols, target.size());
  Scalar half = Scalar(f, 2L).inverse();

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      auto sol = solve(system, prod(i, j));
      if (!sol) throw PetriError("Petri system is inconsistent (probable bad reduction)");
      PetriQuadric pq;
      pq.i = static_cast<int>(i);
      pq.j = static_cast<int>(j);
      Matrix gy(f, gs, gs);
      gy(i, j) = half;
      gy(j, i) = half;
      pq.eta = zero_vector(f, gs);
      pq.nu = zero_vector(f, gs);
      for (std::size_t s = 0; s < k; ++s) {
        Scalar l = (*sol)[s], m = (*sol)[k + s];
        pq.lambda.push_back(l);
        pq.mu.push_back(m);
        gy(s, k) = gy(s, k) - l * half;
        gy(k, s) = gy(k, s) - l * half;
        gy(s, k + 1) = gy(s, k + 1) - m * half;
        gy(k + 1, s) = gy(k + 1, s) - m * half;
        pq.eta = add(pq.eta, scale(l, pb.omega[s]));
        pq.nu = add(pq.nu, scale(m, pb.omega[s]));
      }
      pq.b = (*sol)[2 * k];
      gy(k, k + 1) = gy(k, k + 1) - pq.b * half;
      gy(k + 1, k) = gy(k + 1, k) - pq.b * half;
      pq.form = QuadraticForm(gy).pullback(wmat);
      pq.form = QuadraticForm(pq.form.gram(), "Q" + std::to_string(i + 1) + "," + std::to_string(j + 1));
      pq.rank = pq.form.rank();
      pq.dij_in_sing = true;
      for (std::size_t s = 0; s < k; ++s) {
        if (s == i || s == j) continue;
        pq.dij.push_back(static_cast<int>(s));
        if (!is_zero(pq.form.gram() * imgs[s])) pq.dij_in_sing = false;
      }
      pb.quadrics.push_back(std::move(pq));
    }

  bool dual = true;
  for (const auto& q : pb.quadrics)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        bool same = static_cast<int>(a) == q.i && static_cast<int>(b) == q.j;
        if (q.form.polar(imgs[a], imgs[b]).is_zero() == same) dual = false;
      }
  pb.duality = dual;
  std::vector<Vector> ups;
  bool contained = true;
  for (const auto& q : pb.quadrics) {
    Poly p = q.form.to_poly();
    ups.push_back(i2.monomials.coordinates(p));
    if (!i2.contains(p)) contained = false;
  }
  pb.span_rank = span_dimension(f, ups, i2.monomials.size());
  pb.spans_ideal = contained && pb.span_rank == i2.dim();
  return pb;
}

SingularityReport quadric_curve_singularity(const CurveModel& model, const QuadraticForm& q,
                                            const std::vector<CurvePoint>& candidates, std::size_t samples,
                                            std::uint64_t seed) {
  if (q.is_zero()) throw std::invalid_argument("zero quadric");
  SingularityReport rep;
  rep.rank = q.rank();
  rep.sing_basis = q.singular_basis();
  for (std::size_t c = 0; c < candidates.size(); ++c)
    if (is_zero(q.gram() * model.canonical_image(candidates[c]))) rep.candidates_in_sing.push_back(c);
  if (samples > 0) {
    auto pts = sample_points(model, samples, derive_seed(seed, "sing-sample"));
    rep.sampled = pts.size();
    for (const auto& p : pts)
      if (is_zero(q.gram() * model.canonical_image(p))) ++rep.sampled_hits;
  }
  return rep;
}

QuadraticForm tangent_cone_quadric(CanonicalRing& ring, const std::vector<CurvePoint>& a) {
  const CurveModel& model = ring.model();
  const Field& f = model.field();
  std::size_t g = static_cast<std::size_t>(model.genus());
  if (a.size() != g - 1) throw std::invalid_argument("proxy divisor must have degree g-1");
  LinearSeries s = rr_space(model, Divisor(), Divisor::of(a));
  if (s.dim() != 2)
    throw std::invalid_argument("not a Sing Theta proxy: h0 = " + std::to_string(s.dim()) + ", expected 2");
  const Poly& t1 = s.basis[0];
  const Poly& t2 = s.basis[1];
  const MonomialBasis& target = ring.standard(2 * (model.degree() - 3));
  std::vector<Vector> cols;
  for (const auto& w : model.canonical_forms())
    cols.push_back(target.coordinates(normal_form(w * t2, model.equation())));
  for (const auto& w : model.canonical_forms())
    cols.push_back(target.coordinates(normal_form(-(w * t1), model.equation())));
  Matrix mult = Matrix::from_columns(f, cols, target.size());
  auto ker = exact_kernel(mult).basis;
  if (ker.size() > 2) {
    for (const auto& b : pencil_base_points(model, {t1, t2}, a)) {
      Vector row = model.canonical_image(b);
      row.resize(2 * g, Scalar::zero(f));
      mult.append_row(row);
    }
    ker = exact_kernel(mult).basis;
  }
  if (ker.size() != 2)
    throw std::invalid_argument("not a Sing Theta proxy: pencil has base points (" + std::to_string(ker.size()) +
                                "-dimensional multiplication kernel)");
  auto split = [&](const Vector& v) {
    return std::make_pair(Vector(v.begin(), v.begin() + static_cast<long>(g)),
                          Vector(v.begin() + static_cast<long>(g), v.end()));
  };
  auto [w1, e1] = split(ker[0]);
  auto [w2, e2] = split(ker[1]);
  QuadraticForm q(mat_sub(sym_outer(w1, e2), sym_outer(w2, e1)), "tangent-cone");
  if (q.rank() > 4) throw std::logic_error("tangent cone quadric has rank above 4");
  return q;
}

std::vector<CurvePoint> pencil_base_points(const CurveModel& model, const std::vector<Poly>& pencil,
                                           const std::vector<CurvePoint>& known) {
  std::vector<CurvePoint> out;
  if (pencil.empty()) return out;
  for (const auto& c : common_zeros(model, pencil[0], static_cast<std::size_t>(model.degree() * model.degree()))) {
    bool all = true;
    for (std::size_t i = 1; i < pencil.size(); ++i)
      if (!eval_point(pencil[i], c.xyz).is_zero()) all = false;
    if (!all) continue;
    if (std::find(known.begin(), known.end(), c) != known.end()) continue;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

bool points_on_conic(const std::vector<PlanePoint>& pts) {
  if (pts.size() < 6) throw std::invalid_argument("points_on_conic needs six points");
  const Field& f = pts[0][0].field();
  Matrix m(f, 6, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& p = pts[i];
    Scalar vals[6] = {p[0] * p[0], p[0] * p[1], p[0] * p[2], p[1] * p[1], p[1] * p[2], p[2] * p[2]};
    for (std::size_t j = 0; j < 6; ++j) m(i, j) = vals[j];
  }
  return determinant(m).is_zero();
}

QuadraticForm quadric_form(const Poly& q) { return QuadraticForm::from_poly(q); }

bool in_ideal(CanonicalRing& ring, const QuadraticForm& q) { return ring.section(q.to_poly()).is_zero(); }

}  // namespace thetalab
