#include "thetalab/bundles.hpp"

#include <stdexcept>

namespace thetalab {

namespace {

Scalar det3(const Vector& a, const Vector& b, const Vector& c, std::size_t i, std::size_t j, std::size_t k) {
  return a[i] * (b[j] * c[k] - b[k] * c[j]) - a[j] * (b[i] * c[k] - b[k] * c[i]) +
         a[k] * (b[i] * c[j] - b[j] * c[i]);
}

Matrix plucker_gram(const Field& f) {
  Matrix g(f, 6, 6);
  Scalar half = Scalar(f, 2L).inverse();
  g(0, 5) = half;
  g(5, 0) = half;
  g(1, 4) = -half;
  g(4, 1) = -half;
  g(2, 3) = half;
  g(3, 2) = half;
  return g;
}

// Plucker coordinates from hyperbolic coordinates z with z0 z1 + z2 z3 + z4 z5.
Matrix z_to_plucker(const Field& f) {
  Matrix m(f, 6, 6);
  Scalar one = Scalar::one(f);
  m(0, 0) = one;   // p12
  m(1, 2) = one;   // p13
  m(2, 4) = one;   // p14
  m(3, 5) = one;   // p23
  m(4, 3) = -one;  // p24
  m(5, 1) = one;   // p34
  return m;
}

std::vector<Vector> column_space(const Matrix& m) {
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return span_basis(m.field(), cols, m.rows());
}

struct Chart {
  Matrix plucker;  // 6 x g
  Matrix symplectic;
};

Chart build_chart(const QuadraticForm& q, Rng& rng) {
  const Field& f = q.field();
  std::size_t g = q.dim();
  std::size_t r = q.rank();
  if (r != 5 && r != 6) throw std::invalid_argument("quadric rank must be 5 or 6, got " + std::to_string(r));
  Matrix s = radical_adapted_basis(q);
  Matrix sinv = inverse(s);
  Matrix qy = q.pullback(s).gram();
  Matrix g6(f, 6, 6);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) g6(i, j) = qy(i, j);
  if (r == 5) {
    Matrix g5(f, 5, 5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) g5(i, j) = qy(i, j);
    g6(5, 5) = -determinant(g5).inverse();
  }
  Matrix b = hyperbolic_split(QuadraticForm(g6), rng);
  Matrix binv = inverse(b);
  Matrix take(f, 6, g);
  for (std::size_t i = 0; i < r; ++i) take(i, i) = Scalar::one(f);
  Chart c;
  c.plucker = z_to_plucker(f) * binv * take * sinv;
  if (r == 5) {
    // Row 5 of b is the hyperplane functional in z coordinates.
    Vector phi_z = b.row(5);
    Vector phi(6);
    phi[0] = phi_z[0];
    phi[1] = phi_z[2];
    phi[2] = phi_z[4];
    phi[3] = phi_z[5];
    phi[4] = -phi_z[3];
    phi[5] = phi_z[1];
    c.symplectic = skew_of_plucker(phi);
  }
  return c;
}

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

ThreePlane make_three_plane(CanonicalRing& ring, const std::vector<Vector>& basis) {
  const CurveModel& model = ring.model();
  const Field& f = model.field();
  std::size_t g = static_cast<std::size_t>(model.genus());
  if (basis.size() != 3 || span_dimension(f, basis, g) != 3)
    throw std::invalid_argument("W must be a 3-dimensional subspace of H0(K)");
  ThreePlane w;
  w.basis = basis;
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = a + 1; b < g; ++b)
      for (std::size_t c = b + 1; c < g; ++c) w.plucker.push_back(det3(basis[0], basis[1], basis[2], a, b, c));
  const MonomialBasis& target = ring.standard(2 * (model.degree() - 3));
  std::vector<Vector> cols;
  for (const auto& v : basis) {
    Poly h = ring.adjoint(v);
    for (const auto& k : model.canonical_forms()) cols.push_back(target.coordinates(normal_form(h * k, model.equation())));
  }
  w.mult_rank = span_dimension(f, cols, target.size());
  w.mult_surjective = w.mult_rank == 3 * g - 3;
  return w;
}

std::optional<Vector> EWProxy::s_point(const CurvePoint& p) const {
  Vector c = model_->canonical_image(p);
  Vector s;
  for (const auto& w : w_.basis) s.push_back(dot(w, c));
  if (is_zero(s)) return std::nullopt;
  return s;
}

EWProxy build_EW(const CurveModel& model, const ThreePlane& w) {
  if (!w.mult_surjective)
    throw std::invalid_argument("W not admissible: W (x) H0(K) -> H0(2K) has rank " + std::to_string(w.mult_rank));
  return EWProxy(model, w);
}

IncidenceResult incidence_pairing(const EWProxy& ew, const CurvePoint& p, const CurvePoint& q, const CurvePoint& r) {
  auto sp = ew.s_point(p), sq = ew.s_point(q), sr = ew.s_point(r);
  if (!sp || !sq || !sr) throw std::invalid_argument("s-point undefined (point projects to the centre)");
  const CurveModel& model = ew.model();
  Vector cp = model.canonical_image(p), cq = model.canonical_image(q), cr = model.canonical_image(r);
  const ThreePlane& w = ew.plane();
  std::size_t g = cp.size();
  IncidenceResult res;
  res.determinant = det3(*sp, *sq, *sr, 0, 1, 2);
  res.pairing = Scalar::zero(model.field());
  std::size_t idx = 0;
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = a + 1; b < g; ++b)
      for (std::size_t c = b + 1; c < g; ++c) res.pairing = res.pairing + w.plucker[idx++] * det3(cp, cq, cr, a, b, c);
  res.consistent = res.pairing.is_zero() == res.determinant.is_zero();
  return res;
}

Matrix skew_of_plucker(const Vector& p) {
  if (p.size() != 6) throw std::invalid_argument("Plucker vector must have 6 entries");
  const Field& f = p[0].field();
  Matrix m(f, 4, 4);
  const std::size_t idx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (std::size_t k = 0; k < 6; ++k) {
    m(idx[k][0], idx[k][1]) = p[k];
    m(idx[k][1], idx[k][0]) = -p[k];
  }
  return m;
}

Vector PairEV::plucker(const Vector& canonical) const { return chart * canonical; }

std::vector<Vector> PairEV::gamma(const Vector& canonical) const {
  Matrix m = skew_of_plucker(plucker(canonical));
  if (m.is_zero()) throw std::invalid_argument("gamma undefined: point lies in Sing Q");
  std::vector<Vector> out = quotient_side ? exact_kernel(m).basis : column_space(m);
  if (out.size() != 2) throw std::logic_error("gamma is not a 2-plane (point off the quadric)");
  return out;
}

std::vector<Vector> PairEV::gamma_perp(const Vector& canonical) const {
  return annihilator(source.field(), gamma(canonical), 4);
}

std::pair<PairEV, PairEV> pair_from_quadric(const CurveModel& model, const QuadraticForm& q, std::uint64_t seed,
                                            std::size_t samples) {
  std::size_t r = q.rank();
  if (r != 5 && r != 6) throw std::invalid_argument("quadric rank must be 5 or 6, got " + std::to_string(r));
  if (samples > 0) {
    for (const auto& p : sample_points(model, samples, derive_seed(seed, "pair-sing")))
      if (is_zero(q.gram() * model.canonical_image(p)))
        throw std::invalid_argument("Sing Q meets the curve at " + p.to_string());
  }
  Rng rng(derive_seed(seed, "pair-split"));
  Chart c = build_chart(q, rng);
  PairEV a;
  a.source = q;
  a.rank = r;
  a.chart = c.plucker;
  a.symplectic = c.symplectic;
  a.stable = true;
  PairEV b = a;
  b.quotient_side = true;
  return {a, b};
}

std::vector<Vector> sections_vanishing(const PairEV& pair, const std::vector<Vector>& canonical_points) {
  const Field& f = pair.source.field();
  std::vector<Vector> cur;
  for (std::size_t i = 0; i < 4; ++i) {
    Vector e(4, Scalar::zero(f));
    e[i] = Scalar::one(f);
    cur.push_back(e);
  }
  for (const auto& c : canonical_points) {
    cur = intersect_spans(f, cur, pair.gamma_perp(c), 4);
    if (cur.empty()) break;
  }
  return cur;
}

QuadraticForm quadric_from_pair(const PairEV& pair) {
  return QuadraticForm(plucker_gram(pair.source.field()), "plucker").pullback(pair.chart);
}

std::size_t pair_isomorphisms(const PairEV& a, const PairEV& b, const std::vector<Vector>& canonical_points) {
  const Field& f = a.source.field();
  Matrix cond(f, 0, 16);
  for (const auto& c : canonical_points) {
    auto ga = a.gamma(c);
    auto gb_perp = b.gamma_perp(c);
    for (const auto& u : ga)
      for (const auto& v : gb_perp) {
        Vector row(16, Scalar::zero(f));
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j) row[i * 4 + j] = v[i] * u[j];
        cond.append_row(row);
      }
  }
  return 16 - rank_of(cond);
}

Poly pfaffian(const std::vector<std::vector<Poly>>& skew) {
  std::size_t n = skew.size();
  if (n % 2 != 0) throw std::invalid_argument("Pfaffian needs even size");
  if (n == 0) throw std::invalid_argument("empty matrix");
  const Poly& any = skew[0][0];
  if (n == 2) return skew[0][1];
  Poly total(any.field(), any.nvars());
  for (std::size_t j = 1; j < n; ++j) {
    if (skew[0][j].is_zero()) continue;
    std::vector<std::size_t> keep;
    for (std::size_t k = 1; k < n; ++k)
      if (k != j) keep.push_back(k);
    std::vector<std::vector<Poly>> minor(keep.size(), std::vector<Poly>(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = 0; b < keep.size(); ++b) minor[a][b] = skew[keep[a]][keep[b]];
    Poly term = skew[0][j] * pfaffian(minor);
    if (j % 2 == 1)
      total += term;
    else
      total -= term;
  }
  return total;
}

Poly pfaffian_pullback(const Matrix& chart, int d) {
  if (d < 0) throw std::invalid_argument("d must be non-negative");
  std::size_t n = static_cast<std::size_t>(2 * d + 4);
  if (chart.rows() != binom(n, 2)) throw std::invalid_argument("chart must map into the exterior square");
  if (rank_of(chart) != chart.cols()) throw std::invalid_argument("chart is not injective");
  const Field& f = chart.field();
  std::size_t m = chart.cols();
  std::vector<std::vector<Poly>> skew(n, std::vector<Poly>(n, Poly(f, m)));
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++row) {
      Poly l(f, m);
      for (std::size_t k = 0; k < m; ++k) {
        if (chart(row, k).is_zero()) continue;
        Exponent e(m, 0);
        e[k] = 1;
        l.add_term(e, chart(row, k));
      }
      skew[i][j] = l;
      skew[j][i] = -l;
    }
  return pfaffian(skew);
}

std::array<Vector, 2> ExtensionSpace::embed(const CurveModel& model, const CurvePoint& x) const {
  auto jet = fiber_jet(model, sections, x, 2);
  return {jet[0], jet[1]};
}

ExtensionSpace extension_space(const CurveModel& model, const CurvePoint& p, const CurvePoint& q,
                               const CurvePoint& r, std::uint64_t seed) {
  if (p == q || q == r || p == r) throw std::invalid_argument("points must be distinct");
  int g = model.genus();
  LinearSeries dual = rr_space(model, Divisor::point(r, 2), Divisor::point(p, 2) + Divisor::point(q, 2),
                               derive_seed(seed, "x2-check"));
  if (static_cast<int>(dual.dim()) != g - 3)
    throw std::invalid_argument("special triple: h0(x^2) > 0");
  ExtensionSpace e;
  e.p = p;
  e.q = q;
  e.r = r;
  e.sections = rr_space(model, Divisor::point(p, 2) + Divisor::point(q, 2), Divisor::point(r, 2),
                        derive_seed(seed, "extension"));
  return e;
}

ExtensionClass build_Epqr(const CurveModel& model, const CurvePoint& p, const CurvePoint& q, const CurvePoint& r,
                          std::uint64_t seed) {
  const Field& f = model.field();
  int g = model.genus();
  Matrix images = Matrix::from_columns(
      f, {model.canonical_image(p), model.canonical_image(q), model.canonical_image(r)}, static_cast<std::size_t>(g));
  if (rank_of(images) < 3) throw CollinearError("collinear: p, q, r span a line in canonical space", images);
  ExtensionClass e;
  e.space = extension_space(model, p, q, r, seed);
  const LinearSeries& s = e.space.sections;
  std::size_t n = s.dim();
  auto jp = e.space.embed(model, p);
  auto jq = e.space.embed(model, q);
  Matrix a = Matrix::from_columns(f, {jp[0], jp[1], scale(-Scalar::one(f), jq[0]), scale(-Scalar::one(f), jq[1])}, n);
  auto ker = exact_kernel(a);
  e.tangent_span = ker.rank;
  if (ker.basis.empty()) throw std::logic_error("tangent lines are disjoint (probable bad reduction)");
  if (ker.basis.size() > 1) throw std::logic_error("tangent lines coincide (probable bad reduction)");
  const Vector& k = ker.basis[0];
  e.functional = normalize_projective(add(scale(k[0], jp[0]), scale(k[1], jp[1])));

  auto embedded = [&](const LinearSeries& sub) {
    std::vector<Vector> out;
    for (const auto& h : sub.basis) {
      auto c = section_coordinates(model, s, h, sub.denominator);
      if (!c) throw std::logic_error("subspace section outside H0(K x^2)");
      out.push_back(*c);
    }
    return out;
  };
  auto vp = embedded(rr_space(model, Divisor::point(q, 2), Divisor::point(r, 2), derive_seed(seed, "sub-p")));
  auto vq = embedded(rr_space(model, Divisor::point(p, 2), Divisor::point(r, 2), derive_seed(seed, "sub-q")));
  std::vector<Vector> both = vp;
  both.insert(both.end(), vq.begin(), vq.end());
  auto ann = annihilator(f, both, n);
  e.h0_minus_2p_2q = intersect_spans(f, vp, vq, n).size();
  if (ann.size() == 1) {
    e.functional_b = normalize_projective(ann[0]);
    e.paths_agree = e.functional_b == e.functional;
  }
  e.provenance = "tangent-intersection; checked against span of H0(Kx^2(-2p)) and H0(Kx^2(-2q))";
  return e;
}

ThetaIncidence theta_incidence_check(const CurveModel& model, const ExtensionClass& e, const std::vector<CurvePoint>& a,
                          const std::optional<Vector>& functional_override) {
  const Field& f = model.field();
  std::size_t g = static_cast<std::size_t>(model.genus());
  if (a.size() != g - 1) throw std::invalid_argument("proxy divisor must have degree g-1");
  const CurvePoint& p = e.space.p;
  const CurvePoint& q = e.space.q;
  const CurvePoint& r = e.space.r;
  for (const auto& x : a)
    if (x == p || x == q || x == r) throw std::invalid_argument("proxy support meets {p, q, r}");
  Divisor da = Divisor::of(a);
  LinearSeries ka = rr_space(model, Divisor(), da);
  if (ka.dim() != 2) throw std::invalid_argument("proxy invalid: h0(a) = " + std::to_string(ka.dim()));
  ThetaIncidence res;
  res.pairing = Scalar::zero(f);
  Divisor pq = Divisor::point(p) + Divisor::point(q);
  LinearSeries u = rr_space(model, pq, da + Divisor::point(r));
  if (u.dim() > 1) {
    res.holds = true;
    res.branch = "h0(x^-1 a) > 0";
    return res;
  }
  if (rr_space(model, Divisor::point(r), da + pq).dim() > 0) {
    res.holds = true;
    res.branch = "h0(x^-1 a') > 0";
    return res;
  }
  if (u.dim() != 1) throw std::logic_error("h0(x a') is not 1");
  res.branch = "coboundary";
  const Poly& fe = model.equation();
  const Poly& w1 = ka.basis[0];
  const Poly& w2 = ka.basis[1];
  LinearSeries eta_space = rr_space(model, pq, Divisor::point(r));
  int deg = eta_space.form_degree + (model.degree() - 3);
  MonomialBasis mons = MonomialBasis::standard(fe, deg);
  std::vector<Vector> cols;
  for (const auto& h : eta_space.basis) cols.push_back(mons.coordinates(normal_form(h * w2, fe)));
  for (const auto& h : eta_space.basis) cols.push_back(mons.coordinates(normal_form(-(h * w1), fe)));
  Matrix mult = Matrix::from_columns(f, cols, mons.size());
  auto ker = exact_kernel(mult).basis;
  if (ker.size() > 1) {
    for (const auto& b : pencil_base_points(model, {w1, w2}, a)) {
      if (b == p || b == q || b == r) continue;
      Vector row = fiber_value(model, eta_space, b);
      row.resize(2 * eta_space.dim(), Scalar::zero(f));
      mult.append_row(row);
    }
    ker = exact_kernel(mult).basis;
  }
  if (ker.size() != 1)
    throw std::logic_error("H0(x a) pencil computation has dimension " + std::to_string(ker.size()));
  Vector ce(ker[0].begin(), ker[0].begin() + static_cast<long>(eta_space.dim()));
  Poly h_eta = eta_space.combine(ce);
  const Poly& h_u = u.basis[0];
  const LinearSeries& s = e.space.sections;
  Poly lhs_factor = w1 * eta_space.denominator * u.denominator;
  Poly rhs = normal_form(h_eta * h_u * s.denominator, fe);
  int tdeg = s.form_degree + lhs_factor.degree();
  MonomialBasis tm = MonomialBasis::standard(fe, tdeg);
  std::vector<Vector> tcols;
  for (const auto& h : s.basis) tcols.push_back(tm.coordinates(normal_form(h * lhs_factor, fe)));
  auto c = solve(Matrix::from_columns(f, tcols, tm.size()), tm.coordinates(rhs));
  if (!c) throw std::logic_error("product section outside H0(K x^2)");
  Vector functional = functional_override ? *functional_override : e.functional;
  res.pairing = dot(functional, *c);
  res.holds = res.pairing.is_zero();
  return res;
}

Vector square_tensor(const Vector& q) {
  Vector out;
  for (std::size_t a = 0; a < q.size(); ++a)
    for (std::size_t b = a; b < q.size(); ++b) out.push_back(a == b ? q[a] * q[a] : q[a] * q[b]);
  return out;
}

namespace {

struct Member {
  Vector coords;
  QuadraticForm form;
};

}  // namespace

SpanReport surjectivity_certificate(CanonicalRing& ring, const IdealComponent& i2, const PetriBasis& petri,
                                    std::uint64_t seed) {
  const CurveModel& model = ring.model();
  const Field& f = model.field();
  std::size_t n = i2.dim();
  std::size_t sym = n * (n + 1) / 2;
  SpanReport rep;
  rep.expected = sym;
  Matrix basis = Matrix::from_columns(f, i2.coordinate_vectors(), i2.monomials.size());
  auto coords_of = [&](const QuadraticForm& q) {
    auto x = solve(basis, i2.monomials.coordinates(q.to_poly()));
    if (!x) throw std::logic_error("quadric outside I(2)");
    return *x;
  };
  std::vector<Vector> squares;
  Rng rng(derive_seed(seed, "surjectivity"));
  auto add_member = [&](int step, std::vector<int> idx, std::vector<Scalar> params, const Vector& c, std::size_t rank) {
    squares.push_back(square_tensor(c));
    rep.contributions.push_back({step, std::move(idx), std::move(params), rank});
  };

  bool low_rank_petri = false;
  for (const auto& q : petri.quadrics)
    if (q.rank < 5) low_rank_petri = true;

  if (low_rank_petri && model.has_tag("plane-quintic")) {
    rep.route = "generic-members";
    Rng split_rng(derive_seed(seed, "split"));
    std::size_t last = 0;
    for (std::size_t draw = 0; draw < 20 * sym && last < sym; ++draw) {
      Vector c(n);
      for (auto& x : c) x = rng.scalar(f);
      Poly poly(f, i2.nvars);
      for (std::size_t k = 0; k < n; ++k) poly += i2.basis[k].scaled(c[k]);
      if (poly.is_zero()) continue;
      QuadraticForm qf = QuadraticForm::from_poly(poly);
      if (qf.rank() != 6) continue;
      try {
        hyperbolic_split(qf.pullback(radical_adapted_basis(qf)), split_rng);
      } catch (const std::exception&) {
        continue;
      }
      add_member(0, {}, c, c, 6);
      std::size_t now = span_dimension(f, squares, sym);
      if (now < last) rep.monotone = false;
      last = now;
    }
    rep.span_dim = span_dimension(f, squares, sym);
    return rep;
  }

  rep.route = "petri-steps";
  std::size_t k = static_cast<std::size_t>(model.genus()) - 2;
  std::vector<std::vector<long>> index(k, std::vector<long>(k, -1));
  std::vector<Vector> qc;
  for (std::size_t t = 0; t < petri.quadrics.size(); ++t) {
    const auto& q = petri.quadrics[t];
    index[static_cast<std::size_t>(q.i)][static_cast<std::size_t>(q.j)] = static_cast<long>(t);
    index[static_cast<std::size_t>(q.j)][static_cast<std::size_t>(q.i)] = static_cast<long>(t);
    qc.push_back(coords_of(q.form));
  }
  for (std::size_t t = 0; t < petri.quadrics.size(); ++t) {
    const auto& q = petri.quadrics[t];
    add_member(1, {q.i + 1, q.j + 1}, {}, qc[t], q.rank);
  }
  rep.step1_dim = span_dimension(f, squares, sym);

  auto generic_member = [&](const std::vector<std::size_t>& terms, std::size_t nparams,
                            auto coefficient) -> std::optional<std::pair<Vector, std::vector<Scalar>>> {
    for (int attempt = 0; attempt < 20; ++attempt) {
      std::vector<Scalar> params;
      for (std::size_t i = 0; i < nparams; ++i) params.push_back(rng.nonzero_scalar(f));
      Vector c = zero_vector(f, n);
      std::vector<Scalar> coeffs = coefficient(params);
      for (std::size_t i = 0; i < terms.size(); ++i) c = add(c, scale(coeffs[i], qc[terms[i]]));
      Poly poly(f, i2.nvars);
      for (std::size_t a = 0; a < n; ++a) poly += i2.basis[a].scaled(c[a]);
      if (QuadraticForm::from_poly(poly).rank() >= 5) return std::make_pair(c, params);
    }
    return std::nullopt;
  };
  auto rank_of_coords = [&](const Vector& c) {
    Poly poly(f, i2.nvars);
    for (std::size_t a = 0; a < n; ++a) poly += i2.basis[a].scaled(c[a]);
    return QuadraticForm::from_poly(poly).rank();
  };

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = j + 1; l < k; ++l) {
        if (j == i || l == i) continue;
        std::vector<std::size_t> terms = {static_cast<std::size_t>(index[i][j]), static_cast<std::size_t>(index[i][l])};
        auto m = generic_member(terms, 2, [](const std::vector<Scalar>& p) { return p; });
        std::vector<int> idx = {static_cast<int>(i) + 1, static_cast<int>(j) + 1, static_cast<int>(l) + 1};
        if (!m) {
          rep.failures.push_back("pencil Q" + std::to_string(i + 1) + std::to_string(j + 1) + ", Q" +
                                 std::to_string(i + 1) + std::to_string(l + 1) + " has no rank >= 5 member");
          continue;
        }
        add_member(2, idx, m->second, m->first, rank_of_coords(m->first));
      }
  std::size_t step2 = span_dimension(f, squares, sym);
  if (step2 < rep.step1_dim) rep.monotone = false;

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = j + 1; l < k; ++l)
        for (std::size_t m4 = l + 1; m4 < k; ++m4) {
          const std::size_t parts[3][4] = {{i, j, l, m4}, {i, l, j, m4}, {i, m4, l, j}};
          for (const auto& pt : parts) {
            std::size_t a1 = pt[0], a2 = pt[1], b1 = pt[2], b2 = pt[3];
            std::vector<std::size_t> terms = {
                static_cast<std::size_t>(index[a1][b1]), static_cast<std::size_t>(index[a1][b2]),
                static_cast<std::size_t>(index[a2][b1]), static_cast<std::size_t>(index[a2][b2])};
            auto mem = generic_member(terms, 4, [](const std::vector<Scalar>& p) {
              // p = (lambda, lambda', mu, mu')
              return std::vector<Scalar>{p[2] * p[0], p[2] * p[1], p[3] * p[0], p[3] * p[1]};
            });
            std::vector<int> idx = {static_cast<int>(a1) + 1, static_cast<int>(a2) + 1, static_cast<int>(b1) + 1,
                                    static_cast<int>(b2) + 1};
            if (!mem) {
              rep.failures.push_back("net (" + std::to_string(a1 + 1) + std::to_string(a2 + 1) + ")(" +
                                     std::to_string(b1 + 1) + std::to_string(b2 + 1) + ") has no rank >= 5 member");
              continue;
            }
            add_member(3, idx, mem->second, mem->first, rank_of_coords(mem->first));
          }
        }
  rep.span_dim = span_dimension(f, squares, sym);
  if (rep.span_dim < step2) rep.monotone = false;
  return rep;
}

}  // namespace thetalab
