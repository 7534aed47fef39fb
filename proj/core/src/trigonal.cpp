#include "thetalab/trigonal.hpp"

#include <algorithm>
#include <sstream>

namespace thetalab {

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Matrix sym_outer(const Vector& u, const Vector& v) {
  const Field& f = u[0].field();
  Matrix m(f, u.size(), u.size());
  Scalar half = Scalar(f, 2L).inverse();
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t b = 0; b < u.size(); ++b) m(a, b) = half * (u[a] * v[b] + v[a] * u[b]);
  return m;
}

CurvePoint parse_centre(const CurveModel& model) {
  const std::string key = "trigonal-center=";
  for (const auto& t : model.tags()) {
    if (t.rfind(key, 0) != 0) continue;
    std::stringstream ss(t.substr(key.size()));
    std::string item;
    PlanePoint p;
    std::size_t i = 0;
    while (std::getline(ss, item, ',') && i < 3) p[i++] = parse_scalar(model.field(), item);
    if (i != 3) throw TrigonalError("malformed trigonal-center tag");
    return make_point(p);
  }
  throw TrigonalError("model has no trigonal-center tag (no g13 realization)");
}

Poly line_through(const Field& f, const PlanePoint& c, Rng& rng) {
  for (;;) {
    PlanePoint r{rng.scalar(f), rng.scalar(f), rng.scalar(f)};
    PlanePoint l = cross(c, r);
    if (!(l[0].is_zero() && l[1].is_zero() && l[2].is_zero())) return linear_form(f, l);
  }
}

}  // namespace

std::optional<std::vector<CurvePoint>> line_fiber(const CurveModel& model, const PlanePoint& centre, Rng& rng) {
  const Field& f = model.field();
  PlanePoint b{rng.scalar(f), rng.scalar(f), rng.scalar(f)};
  if (model.on_curve(b)) return std::nullopt;
  UPoly phi = restrict_to_line(model.equation(), centre, b);
  int k = 0;
  while (k <= phi.degree() && phi.coeff(k).is_zero()) ++k;
  std::vector<Scalar> rest(phi.coeffs().begin() + k, phi.coeffs().end());
  UPoly res(f, rest);
  if (res.degree() < 1 || !is_squarefree(res)) return std::nullopt;
  auto roots = roots_fp(res, rng);
  if (static_cast<int>(roots.size()) != res.degree()) return std::nullopt;
  std::vector<CurvePoint> out;
  for (const auto& t : roots) {
    CurvePoint c = make_point({centre[0] + t * b[0], centre[1] + t * b[1], centre[2] + t * b[2]});
    if (model.is_singular_point(c) || !model.is_smooth_point(c)) return std::nullopt;
    out.push_back(c);
  }
  return out;
}

TrigonalContext trigonal_context(CanonicalRing& ring, std::uint64_t seed, std::size_t fibers) {
  const CurveModel& model = ring.model();
  const Field& f = model.field();
  if (!model.has_tag("trigonal")) throw TrigonalError("model is not tagged trigonal: beta requires a g13");
  TrigonalContext tc;
  tc.model = &model;
  tc.centre = parse_centre(model);
  int m = 0;
  for (const auto& s : model.singular_points())
    if (s.point == tc.centre) m = s.multiplicity;
  if (m != model.degree() - 3)
    throw TrigonalError("trigonal centre must be a singular point of multiplicity d - 3");
  Rng rng(derive_seed(seed, "trigonal"));
  tc.s0 = line_through(f, tc.centre.xyz, rng);
  do {
    tc.s1 = line_through(f, tc.centre.xyz, rng);
  } while (tc.s1.scaled(tc.s0.leading_coefficient()) == tc.s0.scaled(tc.s1.leading_coefficient()));

  int k = model.degree() - 4;
  MonomialBasis mons = MonomialBasis::of_degree(3, k);
  Matrix cond(f, 0, mons.size());
  for (const auto& s : model.singular_points()) {
    int order = s.point == tc.centre ? s.multiplicity - 3 : s.multiplicity - 2;
    if (order < 0) continue;
    Matrix t = taylor_conditions(mons, s.point, order);
    for (std::size_t r = 0; r < t.rows(); ++r) cond.append_row(t.row(r));
  }
  std::vector<Vector> ker;
  if (cond.rows() == 0) {
    for (std::size_t i = 0; i < mons.size(); ++i) {
      Vector e(mons.size(), Scalar::zero(f));
      e[i] = Scalar::one(f);
      ker.push_back(e);
    }
  } else {
    ker = exact_kernel(cond).basis;
  }
  for (const auto& v : ker) tc.v.push_back(mons.poly(f, v));
  if (static_cast<int>(tc.v.size()) != model.genus() - 2)
    throw TrigonalError("dim H0(K - g13) = " + std::to_string(tc.v.size()) + ", expected g - 2");
  for (const auto& v : tc.v) {
    tc.beta0.push_back(ring.coordinates_of_adjoint(tc.s0 * v));
    tc.beta1.push_back(ring.coordinates_of_adjoint(tc.s1 * v));
  }
  std::size_t g = static_cast<std::size_t>(model.genus());
  if (span_dimension(f, tc.beta0, g) != tc.v.size() || span_dimension(f, tc.beta1, g) != tc.v.size())
    throw TrigonalError("beta0 or beta1 is not injective");
  for (int attempt = 0; attempt < 200 && tc.fibers.size() < fibers; ++attempt) {
    auto fib = line_fiber(model, tc.centre.xyz, rng);
    if (fib && fib->size() == 3) tc.fibers.push_back(*fib);
  }
  return tc;
}

TrigonalContext rebased(CanonicalRing& ring, const TrigonalContext& tc, const Scalar& a, const Scalar& b,
                        const Scalar& c, const Scalar& d) {
  if ((a * d - b * c).is_zero()) throw std::invalid_argument("pencil change must be invertible");
  TrigonalContext out = tc;
  out.s0 = tc.s0.scaled(a) + tc.s1.scaled(b);
  out.s1 = tc.s0.scaled(c) + tc.s1.scaled(d);
  out.beta0.clear();
  out.beta1.clear();
  for (const auto& v : tc.v) {
    out.beta0.push_back(ring.coordinates_of_adjoint(out.s0 * v));
    out.beta1.push_back(ring.coordinates_of_adjoint(out.s1 * v));
  }
  return out;
}

QuadraticForm beta_map(const TrigonalContext& tc, const Vector& v, const Vector& w) {
  std::size_t n = tc.dim_v();
  if (v.size() != n || w.size() != n) throw std::invalid_argument("elements of V have wrong length");
  const Field& f = tc.model->field();
  std::size_t g = static_cast<std::size_t>(tc.model->genus());
  auto apply = [&](const std::vector<Vector>& beta, const Vector& x) {
    Vector out = zero_vector(f, g);
    for (std::size_t i = 0; i < n; ++i) out = add(out, scale(x[i], beta[i]));
    return out;
  };
  Matrix a = sym_outer(apply(tc.beta0, v), apply(tc.beta1, w));
  Matrix b = sym_outer(apply(tc.beta0, w), apply(tc.beta1, v));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) a(i, j) = a(i, j) - b(i, j);
  return QuadraticForm(a, "beta");
}

QuadraticForm delta_quadric(const TrigonalContext& tc, const std::vector<Vector>& u) {
  if (u.size() != 2 || span_dimension(tc.model->field(), u, tc.dim_v()) != 2)
    throw std::invalid_argument("U must be a 2-plane in V");
  return beta_map(tc, u[0], u[1]);
}

BetaIsoReport beta_iso_certificate(CanonicalRing& ring, const TrigonalContext& tc, const IdealComponent& i2) {
  BetaIsoReport rep;
  const Field& f = tc.model->field();
  std::size_t n = tc.dim_v();
  rep.expected = binom(n, 2);
  std::vector<Vector> images;
  rep.all_in_ideal = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      Vector ea(n, Scalar::zero(f)), eb(n, Scalar::zero(f));
      ea[a] = Scalar::one(f);
      eb[b] = Scalar::one(f);
      QuadraticForm q = beta_map(tc, ea, eb);
      Poly p = q.to_poly();
      if (!in_ideal(ring, q)) rep.all_in_ideal = false;
      images.push_back(i2.monomials.coordinates(p));
    }
  rep.rank = span_dimension(f, images, i2.monomials.size());
  rep.trisecants_contained = true;
  for (const auto& fib : tc.fibers) {
    Vector c1 = tc.model->canonical_image(fib[0]);
    Vector c2 = tc.model->canonical_image(fib[1]);
    Vector c3 = tc.model->canonical_image(fib[2]);
    Vector mid = add(c1, scale(Scalar(f, 2L), c2));
    for (const auto& q : i2.basis) {
      QuadraticForm qf = QuadraticForm::from_poly(q);
      for (const auto* x : {&c1, &c2, &c3, &mid})
        if (!qf.value(*x).is_zero()) rep.trisecants_contained = false;
    }
    ++rep.fibers_checked;
  }
  rep.ok = rep.all_in_ideal && rep.rank == rep.expected && rep.rank == i2.dim() && rep.trisecants_contained &&
           rep.fibers_checked > 0;
  if (!rep.ok) {
    std::ostringstream os;
    os << "rank " << rep.rank << " of " << rep.expected << ", dim I(2) " << i2.dim()
       << (rep.all_in_ideal ? "" : ", beta image outside I(2)")
       << (rep.trisecants_contained ? "" : ", trisecant not contained");
    rep.reason = os.str();
  }
  return rep;
}

CorankReport corank_certificate(const TrigonalContext& tc, const IdealComponent& i2, std::uint64_t seed) {
  const Field& f = tc.model->field();
  std::size_t n = tc.dim_v();
  std::size_t big = binom(n, 2);
  CorankReport rep;
  rep.expected = binom(n, 4);
  Rng rng(derive_seed(seed, "corank"));
  auto random_v = [&]() {
    Vector v(n);
    for (auto& x : v) x = rng.scalar(f);
    return v;
  };
  auto plucker = [&](const Vector& v, const Vector& w) {
    Vector out;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) out.push_back(v[a] * w[b] - v[b] * w[a]);
    return out;
  };

  std::size_t sym_big = big * (big + 1) / 2;
  rep.samples_a = 3 * sym_big;
  Matrix cond(f, 0, sym_big);
  for (std::size_t s = 0; s < rep.samples_a; ++s) cond.append_row(square_tensor(plucker(random_v(), random_v())));
  rep.route_a = exact_kernel(cond).basis.size();

  std::size_t m = i2.dim();
  std::size_t sym = m * (m + 1) / 2;
  Matrix basis = Matrix::from_columns(f, i2.coordinate_vectors(), i2.monomials.size());
  std::size_t count = 4 * sym;
  std::vector<Vector> squares;
  long previous = -1;
  for (int round = 0; round < 8; ++round) {
    while (squares.size() < count) {
      QuadraticForm q = beta_map(tc, random_v(), random_v());
      auto x = solve(basis, i2.monomials.coordinates(q.to_poly()));
      if (!x) throw std::logic_error("beta image outside I(2)");
      squares.push_back(square_tensor(*x));
    }
    std::size_t span = span_dimension(f, squares, sym);
    rep.samples_b = count;
    if (static_cast<long>(span) == previous) {
      rep.stabilized = true;
      rep.route_b = sym - span;
      break;
    }
    previous = static_cast<long>(span);
    count *= 2;
  }
  if (!rep.stabilized) throw std::runtime_error("beta-squares span did not stabilize");
  return rep;
}

std::vector<std::vector<CurvePoint>> sing_theta_proxies(const CurveModel& model, std::size_t count,
                                                        std::uint64_t seed) {
  std::size_t g = static_cast<std::size_t>(model.genus());
  Rng rng(derive_seed(seed, "proxies"));
  PlanePoint centre;
  bool through_point = false;
  if (model.has_tag("trigonal")) {
    centre = parse_centre(model).xyz;
    through_point = true;
  } else {
    int best = 0;
    for (const auto& s : model.singular_points())
      if (s.multiplicity > best) {
        best = s.multiplicity;
        centre = s.point.xyz;
        through_point = true;
      }
  }
  std::vector<std::vector<CurvePoint>> out;
  auto extra = sample_points(model, 4 * count + 8, derive_seed(seed, "proxy-extra"));
  std::size_t next_extra = 0;
  for (int attempt = 0; attempt < 400 && out.size() < count; ++attempt) {
    std::optional<std::vector<CurvePoint>> fib;
    if (through_point) {
      fib = line_fiber(model, centre, rng);
    } else {
      PlanePoint base = sample_points(model, 1, derive_seed(seed, "proxy-base", static_cast<std::uint64_t>(attempt)))[0].xyz;
      fib = line_fiber(model, base, rng);
    }
    if (!fib) continue;
    std::vector<CurvePoint> a = *fib;
    if (a.size() > g - 1) a.resize(g - 1);
    while (a.size() < g - 1 && next_extra < extra.size()) {
      const CurvePoint& x = extra[next_extra++];
      if (std::find(a.begin(), a.end(), x) == a.end()) a.push_back(x);
    }
    if (a.size() != g - 1) break;
    if (rr_space(model, Divisor(), Divisor::of(a)).dim() != 2) continue;
    out.push_back(a);
  }
  return out;
}

}  // namespace thetalab
