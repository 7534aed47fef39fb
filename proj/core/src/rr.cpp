#include "thetalab/rr.hpp"

#include <sstream>

namespace thetalab {

Divisor Divisor::point(const CurvePoint& p, int m) {
  Divisor d;
  if (m != 0) d.terms.emplace_back(p, m);
  return d;
}

Divisor Divisor::of(const std::vector<CurvePoint>& pts) {
  Divisor d;
  for (const auto& p : pts) d = d + point(p);
  return d;
}

Divisor Divisor::operator+(const Divisor& o) const {
  Divisor r = *this;
  for (const auto& [p, m] : o.terms) {
    bool merged = false;
    for (auto& [q, k] : r.terms)
      if (q == p) {
        k += m;
        merged = true;
        break;
      }
    if (!merged) r.terms.emplace_back(p, m);
  }
  std::vector<std::pair<CurvePoint, int>> kept;
  for (auto& t : r.terms)
    if (t.second != 0) kept.push_back(t);
  r.terms = kept;
  return r;
}

int Divisor::degree() const {
  int d = 0;
  for (const auto& t : terms) d += t.second;
  return d;
}

int Divisor::multiplicity(const CurvePoint& p) const {
  for (const auto& [q, m] : terms)
    if (q == p) return m;
  return 0;
}

std::string Divisor::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, m] : terms) {
    if (!first) os << " + ";
    first = false;
    if (m != 1) os << m << "*";
    os << p.to_string();
  }
  if (first) os << "0";
  return os.str();
}

Poly LinearSeries::combine(const Vector& coeffs) const {
  if (coeffs.size() != basis.size()) throw std::invalid_argument("coefficient vector has wrong length");
  if (basis.empty()) throw std::invalid_argument("empty linear series");
  Poly r(basis[0].field(), 3);
  for (std::size_t i = 0; i < basis.size(); ++i) r += basis[i].scaled(coeffs[i]);
  return r;
}

namespace {

PlanePoint point_on_line_off_curve(const CurveModel& model, const Poly& line, const CurvePoint& avoid, Rng& rng) {
  const Field& f = model.field();
  Matrix lm(f, 1, 3);
  lm(0, 0) = line.coeff({1, 0, 0});
  lm(0, 1) = line.coeff({0, 1, 0});
  lm(0, 2) = line.coeff({0, 0, 1});
  auto ker = exact_kernel(lm).basis;
  for (int attempt = 0; attempt < 200; ++attempt) {
    Scalar s = rng.scalar(f), t = rng.scalar(f);
    PlanePoint b{s * ker[0][0] + t * ker[1][0], s * ker[0][1] + t * ker[1][1], s * ker[0][2] + t * ker[1][2]};
    if (b[0].is_zero() && b[1].is_zero() && b[2].is_zero()) continue;
    if (model.on_curve(b)) continue;
    if (make_point(b) == avoid) continue;
    return b;
  }
  throw CurveError("could not find an auxiliary point on a line");
}

// Validates an auxiliary line through base with the expected contact order; fills the residual.
bool prepare_line(const CurveModel& model, AuxLine& line, const std::vector<CurvePoint>& avoid, Rng& rng) {
  for (const auto& s : model.singular_points())
    if (eval_point(line.form, s.point.xyz).is_zero()) return false;
  for (const auto& q : avoid)
    if (q != line.base && eval_point(line.form, q.xyz).is_zero()) return false;
  line.direction = point_on_line_off_curve(model, line.form, line.base, rng);
  UPoly phi = restrict_to_line(model.equation(), line.base.xyz, line.direction);
  for (int i = 0; i < line.base_order; ++i)
    if (!phi.coeff(i).is_zero()) return false;
  if (phi.coeff(line.base_order).is_zero()) return false;
  std::vector<Scalar> rest(phi.coeffs().begin() + line.base_order, phi.coeffs().end());
  line.residual = UPoly(model.field(), rest);
  return is_squarefree(line.residual);
}

}  // namespace

LinearSeries rr_space(const CurveModel& model, const Divisor& plus, const Divisor& minus, std::uint64_t seed) {
  const Field& f = model.field();
  std::vector<CurvePoint> support;
  for (const auto* d : {&plus, &minus})
    for (const auto& [p, m] : d->terms) {
      if (m < 0) throw std::invalid_argument("rr_space needs effective divisors");
      if (model.is_singular_point(p) || !model.is_smooth_point(p))
        throw std::invalid_argument("divisor support must consist of smooth curve points: " + p.to_string());
      support.push_back(p);
    }
  for (const auto& [p, m] : plus.terms)
    if (minus.multiplicity(p) != 0) throw std::invalid_argument("plus and minus supports overlap at " + p.to_string());

  LinearSeries s;
  s.plus = plus;
  s.minus = minus;
  Rng rng(derive_seed(seed, "rr_space"));
  int e = 0;
  for (const auto& [p, m] : plus.terms) {
    if (m > 3) throw std::invalid_argument("rr_space supports plus multiplicities up to 3");
    if (m >= 2) {
      AuxLine t;
      t.form = model.tangent_line(p);
      t.base = p;
      t.base_order = 2;
      bool ok = false;
      for (int attempt = 0; attempt < 20 && !ok; ++attempt) ok = prepare_line(model, t, support, rng);
      if (!ok)
        throw CurveError("tangent line at " + p.to_string() +
                         " is special (flex, bitangent or through other support points)");
      s.lines.push_back(t);
      e += 1;
    }
    if (m % 2 == 1) {
      bool ok = false;
      for (int attempt = 0; attempt < 200 && !ok; ++attempt) {
        AuxLine l;
        PlanePoint r{rng.scalar(f), rng.scalar(f), rng.scalar(f)};
        PlanePoint c = cross(p.xyz, r);
        if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero()) continue;
        l.form = linear_form(f, c);
        l.base = p;
        l.base_order = 1;
        if (!prepare_line(model, l, support, rng)) continue;
        bool clash = false;
        for (const auto& other : s.lines) {
          PlanePoint lc{l.form.coeff({1, 0, 0}), l.form.coeff({0, 1, 0}), l.form.coeff({0, 0, 1})};
          PlanePoint oc{other.form.coeff({1, 0, 0}), other.form.coeff({0, 1, 0}), other.form.coeff({0, 0, 1})};
          PlanePoint x = cross(lc, oc);
          if (x[0].is_zero() && x[1].is_zero() && x[2].is_zero()) {
            clash = true;
            break;
          }
          if (other.base == p) continue;
          if (model.on_curve(x)) clash = true;
        }
        if (clash) continue;
        s.lines.push_back(l);
        ok = true;
      }
      if (!ok) throw CurveError("could not choose an auxiliary line through " + p.to_string());
      e += 1;
    }
  }
  for (std::size_t i = 0; i < s.lines.size(); ++i)
    for (std::size_t j = i + 1; j < s.lines.size(); ++j) {
      if (s.lines[i].base == s.lines[j].base) continue;
      const Poly& a = s.lines[i].form;
      const Poly& b = s.lines[j].form;
      PlanePoint x = cross({a.coeff({1, 0, 0}), a.coeff({0, 1, 0}), a.coeff({0, 0, 1})},
                           {b.coeff({1, 0, 0}), b.coeff({0, 1, 0}), b.coeff({0, 0, 1})});
      if ((x[0].is_zero() && x[1].is_zero() && x[2].is_zero()) || model.on_curve(x))
        throw CurveError("auxiliary lines meet on the curve; choose other points");
    }

  s.denominator = Poly::constant(f, 3, Scalar::one(f));
  for (const auto& l : s.lines) s.denominator = s.denominator * l.form;
  s.form_degree = model.degree() - 3 + e;
  MonomialBasis mons = MonomialBasis::standard(model.equation(), s.form_degree);
  Matrix cond(f, 0, mons.size());
  for (const auto& sp : model.singular_points()) {
    Matrix t = taylor_conditions(mons, sp.point, sp.multiplicity - 2);
    for (std::size_t r = 0; r < t.rows(); ++r) cond.append_row(t.row(r));
  }
  for (const auto& l : s.lines) {
    std::vector<Vector> cols;
    std::size_t rdeg = static_cast<std::size_t>(l.residual.degree());
    if (rdeg == 0) continue;
    Matrix block(f, rdeg, mons.size());
    for (std::size_t c = 0; c < mons.size(); ++c) {
      UPoly hm = restrict_to_line(Poly::monomial(f, mons[c], Scalar::one(f)), l.base.xyz, l.direction);
      UPoly rem = hm % l.residual;
      for (std::size_t r = 0; r < rdeg; ++r) block(r, c) = rem.coeff(static_cast<int>(r));
    }
    for (std::size_t r = 0; r < rdeg; ++r) cond.append_row(block.row(r));
  }
  for (const auto& [q, m] : minus.terms) {
    Branch br = model.branch(q, static_cast<std::size_t>(m));
    Matrix block(f, static_cast<std::size_t>(m), mons.size());
    for (std::size_t c = 0; c < mons.size(); ++c) {
      Series ser = CurveModel::restrict_to_branch(Poly::monomial(f, mons[c], Scalar::one(f)), br);
      for (int r = 0; r < m; ++r) block(static_cast<std::size_t>(r), c) = ser[static_cast<std::size_t>(r)];
    }
    for (int r = 0; r < m; ++r) cond.append_row(block.row(static_cast<std::size_t>(r)));
  }
  if (cond.rows() == 0) {
    for (std::size_t i = 0; i < mons.size(); ++i) s.basis.push_back(Poly::monomial(f, mons[i], Scalar::one(f)));
  } else {
    for (const auto& v : exact_kernel(cond).basis) s.basis.push_back(mons.poly(f, v));
  }
  int g = model.genus();
  int degree = 2 * g - 2 + plus.degree() - minus.degree();
  if (degree > 2 * g - 2) {
    s.riemann_roch = degree - g + 1;
    if (static_cast<long>(s.dim()) != s.riemann_roch)
      throw CurveError("Riemann-Roch mismatch: computed " + std::to_string(s.dim()) + ", expected " +
                       std::to_string(s.riemann_roch));
  }
  return s;
}

LinearSeries canonical_series(const CurveModel& model) {
  LinearSeries s;
  const Field& f = model.field();
  s.denominator = Poly::constant(f, 3, Scalar::one(f));
  s.form_degree = model.degree() - 3;
  s.basis = model.canonical_forms();
  s.riemann_roch = model.genus();
  return s;
}

std::vector<Vector> fiber_jet(const CurveModel& model, const LinearSeries& s, const CurvePoint& p, int terms) {
  int plus = s.plus.multiplicity(p);
  int minus = s.minus.multiplicity(p);
  std::size_t probe = static_cast<std::size_t>(s.denominator.degree() + 2);
  Branch br = model.branch(p, probe);
  int ordg = series_order(CurveModel::restrict_to_branch(s.denominator, br));
  if (ordg < 0) throw CurveError("auxiliary denominator vanishes identically on a branch");
  int shift = minus + ordg - plus;
  if (shift < 0) throw std::logic_error("negative fiber shift");
  std::size_t need = static_cast<std::size_t>(shift + terms);
  br = model.branch(p, need);
  std::vector<Vector> out(static_cast<std::size_t>(terms));
  for (const auto& h : s.basis) {
    Series ser = CurveModel::restrict_to_branch(h, br);
    for (int k = 0; k < terms; ++k) out[static_cast<std::size_t>(k)].push_back(ser[static_cast<std::size_t>(shift + k)]);
  }
  return out;
}

Vector fiber_value(const CurveModel& model, const LinearSeries& s, const CurvePoint& p) {
  return fiber_jet(model, s, p, 1)[0];
}

std::optional<Vector> section_coordinates(const CurveModel& model, const LinearSeries& s, const Poly& h,
                                          const Poly& g) {
  const Field& f = model.field();
  const Poly& fe = model.equation();
  int deg = s.form_degree + g.degree();
  MonomialBasis mons = MonomialBasis::standard(fe, deg);
  std::vector<Vector> cols;
  for (const auto& b : s.basis) cols.push_back(mons.coordinates(normal_form(b * g, fe)));
  Vector rhs = mons.coordinates(normal_form(h * s.denominator, fe));
  if (cols.empty()) {
    if (is_zero(rhs)) return Vector{};
    return std::nullopt;
  }
  return solve(Matrix::from_columns(f, cols, mons.size()), rhs);
}

bool sections_equal(const CurveModel& model, const Poly& h1, const Poly& g1, const Poly& h2, const Poly& g2) {
  return normal_form(h1 * g2 - h2 * g1, model.equation()).is_zero();
}

}  // namespace thetalab

namespace thetalab {

namespace {

// Coefficients of y^j (as polynomials in x) of a plane form dehomogenized at z = 1.
std::vector<UPoly> by_y(const Poly& h) {
  const Field& f = h.field();
  int dy = 0;
  for (const auto& [e, c] : h.terms()) dy = std::max(dy, e[1]);
  std::vector<std::vector<Scalar>> raw(static_cast<std::size_t>(dy + 1));
  for (const auto& [e, c] : h.terms()) {
    auto& v = raw[static_cast<std::size_t>(e[1])];
    if (v.size() <= static_cast<std::size_t>(e[0])) v.resize(static_cast<std::size_t>(e[0] + 1), Scalar::zero(f));
    v[static_cast<std::size_t>(e[0])] = v[static_cast<std::size_t>(e[0])] + c;
  }
  std::vector<UPoly> out;
  for (auto& v : raw) out.emplace_back(f, v);
  return out;
}

UPoly at_x(const std::vector<UPoly>& cs, const Scalar& x) {
  std::vector<Scalar> v;
  for (const auto& c : cs) v.push_back(c.eval(x));
  return UPoly(x.field(), v);
}

}  // namespace

std::vector<CurvePoint> common_zeros(const CurveModel& model, const Poly& h, std::size_t max_points) {
  const Field& f = model.field();
  if (!f.is_prime()) throw std::invalid_argument("common_zeros requires finite-field mode");
  std::vector<CurvePoint> out;
  if (h.is_zero()) throw std::invalid_argument("common_zeros of the zero form");
  auto fc = by_y(model.equation());
  auto hc = by_y(h);
  Rng rng(derive_seed(0, "common_zeros"));
  std::uint64_t p = f.characteristic();
  for (std::uint64_t xi = 0; xi < p && out.size() < max_points; ++xi) {
    Scalar x = Scalar::from_raw(f, xi);
    UPoly a = at_x(fc, x), b = at_x(hc, x);
    if (a.is_zero() || b.is_zero()) continue;
    UPoly g = gcd(a, b);
    if (g.degree() < 1) continue;
    for (const auto& y : roots_fp(g, rng)) {
      CurvePoint c = make_point({x, y, Scalar::one(f)});
      if (model.is_singular_point(c) || !model.is_smooth_point(c)) continue;
      out.push_back(c);
      if (out.size() >= max_points) break;
    }
  }
  return out;
}

}  // namespace thetalab
