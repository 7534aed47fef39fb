#include "thetalab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace thetalab {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw CurveError("curve file: bad integer for " + what + ": " + s);
  }
}

Scalar binomial(const Field& f, int n, int k) {
  if (k < 0 || k > n) return Scalar::zero(f);
  Scalar r = Scalar::one(f);
  for (int i = 1; i <= k; ++i) r = r * Scalar(f, static_cast<long>(n - k + i)) / Scalar(f, static_cast<long>(i));
  return r;
}

}  // namespace

CurveSpec parse_curve_text(const std::string& text) {
  CurveSpec spec;
  bool have_field = false, have_degree = false;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    auto need = [&](std::size_t n) {
      if (tok.size() != n) throw CurveError("curve file line " + std::to_string(lineno) + ": expected " +
                                            std::to_string(n - 1) + " fields after '" + key + "'");
    };
    if (key == "name") {
      need(2);
      spec.name = tok[1];
    } else if (key == "field") {
      need(2);
      try {
        spec.field = Field::parse(tok[1]);
      } catch (const std::exception& e) {
        throw CurveError(std::string("curve file: ") + e.what());
      }
      have_field = true;
    } else if (key == "degree") {
      need(2);
      spec.degree = parse_int(tok[1], "degree");
      have_degree = true;
    } else if (key == "genus") {
      need(2);
      spec.genus = parse_int(tok[1], "genus");
    } else if (key == "tags") {
      spec.tags.assign(tok.begin() + 1, tok.end());
    } else if (key == "term") {
      need(5);
      CurveSpec::Term t;
      for (int i = 0; i < 3; ++i) t.exponent[static_cast<std::size_t>(i)] = parse_int(tok[1 + i], "exponent");
      try {
        t.coefficient = parse_rational(tok[4]);
      } catch (const std::exception& e) {
        throw CurveError(std::string("curve file: ") + e.what());
      }
      spec.terms.push_back(t);
    } else if (key == "singular") {
      need(5);
      CurveSpec::Singularity s;
      try {
        for (int i = 0; i < 3; ++i) s.point[static_cast<std::size_t>(i)] = parse_rational(tok[1 + i]);
      } catch (const std::exception& e) {
        throw CurveError(std::string("curve file: ") + e.what());
      }
      s.multiplicity = parse_int(tok[4], "multiplicity");
      spec.singularities.push_back(s);
    } else {
      throw CurveError("curve file line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_field || !have_degree) throw CurveError("curve file: 'field' and 'degree' are required");
  if (spec.degree < 1) throw CurveError("curve file: degree must be positive");
  for (const auto& t : spec.terms)
    if (t.exponent[0] + t.exponent[1] + t.exponent[2] != spec.degree || *std::min_element(t.exponent.begin(), t.exponent.end()) < 0)
      throw CurveError("curve file: term exponents must be nonnegative and sum to the degree");
  for (const auto& s : spec.singularities)
    if (s.multiplicity < 2) throw CurveError("curve file: singular multiplicity must be >= 2");
  return spec;
}

std::string format_curve(const CurveSpec& spec) {
  std::ostringstream os;
  if (!spec.name.empty()) os << "name " << spec.name << "\n";
  os << "field " << spec.field.describe() << "\n";
  os << "degree " << spec.degree << "\n";
  if (spec.genus) os << "genus " << *spec.genus << "\n";
  if (!spec.tags.empty()) {
    os << "tags";
    for (const auto& t : spec.tags) os << " " << t;
    os << "\n";
  }
  std::map<Exponent, mpq_class, GrlexDesc> merged;
  for (const auto& t : spec.terms) merged[Exponent(t.exponent.begin(), t.exponent.end())] += t.coefficient;
  for (const auto& [e, c] : merged) {
    if (c == 0) continue;
    os << "term " << e[0] << " " << e[1] << " " << e[2] << " " << c.get_str() << "\n";
  }
  for (const auto& s : spec.singularities)
    os << "singular " << s.point[0].get_str() << " " << s.point[1].get_str() << " " << s.point[2].get_str() << " "
       << s.multiplicity << "\n";
  return os.str();
}

CurveSpec read_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read curve file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_curve_text(ss.str());
}

std::size_t CurvePoint::chart() const {
  for (std::size_t i = 3; i-- > 0;)
    if (!xyz[i].is_zero()) return i;
  throw std::invalid_argument("zero vector is not a projective point");
}

bool CurvePoint::operator==(const CurvePoint& o) const {
  return xyz[0] == o.xyz[0] && xyz[1] == o.xyz[1] && xyz[2] == o.xyz[2];
}

std::string CurvePoint::to_string() const {
  return "(" + xyz[0].to_string() + ":" + xyz[1].to_string() + ":" + xyz[2].to_string() + ")";
}

CurvePoint make_point(const PlanePoint& p) {
  CurvePoint c{p};
  std::size_t k = c.chart();
  Scalar inv = p[k].inverse();
  for (auto& x : c.xyz) x *= inv;
  return c;
}

Series series_mul(const Series& a, const Series& b, std::size_t n) {
  const Field& f = a[0].field();
  Series r(n, Scalar::zero(f));
  for (std::size_t i = 0; i < std::min(n, a.size()); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n && j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

int series_order(const Series& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!s[i].is_zero()) return static_cast<int>(i);
  return -1;
}

bool CurveModel::has_tag(const std::string& t) const { return std::find(tags_.begin(), tags_.end(), t) != tags_.end(); }

Scalar eval_point(const Poly& h, const PlanePoint& p) { return h.eval(Vector(p.begin(), p.end())); }

bool CurveModel::on_curve(const PlanePoint& p) const { return eval_point(f_, p).is_zero(); }

Vector CurveModel::gradient(const CurvePoint& p) const {
  return {eval_point(grad_[0], p.xyz), eval_point(grad_[1], p.xyz), eval_point(grad_[2], p.xyz)};
}

bool CurveModel::is_smooth_point(const CurvePoint& p) const { return on_curve(p.xyz) && !is_zero(gradient(p)); }

bool CurveModel::is_singular_point(const CurvePoint& p) const {
  for (const auto& s : sing_)
    if (s.point == p) return true;
  return on_curve(p.xyz) && is_zero(gradient(p));
}

Poly linear_form(const Field& f, const PlanePoint& c) {
  Poly l(f, 3);
  l.add_term({1, 0, 0}, c[0]);
  l.add_term({0, 1, 0}, c[1]);
  l.add_term({0, 0, 1}, c[2]);
  return l;
}

PlanePoint cross(const PlanePoint& a, const PlanePoint& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Poly CurveModel::tangent_line(const CurvePoint& p) const {
  Vector g = gradient(p);
  if (is_zero(g)) throw CurveError("tangent line requested at a singular point " + p.to_string());
  return linear_form(field_, {g[0], g[1], g[2]});
}

Series CurveModel::restrict_to_branch(const Poly& h, const Branch& b) {
  const Field& f = h.field();
  std::size_t n = b.order;
  Series out(n, Scalar::zero(f));
  if (h.is_zero()) return out;
  int maxdeg = h.degree();
  std::array<std::vector<Series>, 3> pw;
  for (std::size_t i = 0; i < 3; ++i) {
    Series one(n, Scalar::zero(f));
    one[0] = Scalar::one(f);
    pw[i].push_back(one);
  }
  for (const auto& [e, c] : h.terms()) {
    Series t(n, Scalar::zero(f));
    t[0] = c;
    for (std::size_t i = 0; i < 3; ++i) {
      while (static_cast<int>(pw[i].size()) <= e[i]) pw[i].push_back(series_mul(pw[i].back(), b.coords[i], n));
      if (e[i]) t = series_mul(t, pw[i][static_cast<std::size_t>(e[i])], n);
    }
    for (std::size_t k = 0; k < n; ++k) out[k] += t[k];
  }
  (void)maxdeg;
  return out;
}

Branch CurveModel::branch(const CurvePoint& p, std::size_t order) const {
  if (!is_smooth_point(p)) throw CurveError("local branch requested at a non-smooth point " + p.to_string());
  const Field& f = field_;
  std::size_t k = p.chart();
  std::size_t a = k == 0 ? 1 : 0;
  std::size_t b = k == 2 ? 1 : 2;
  Vector g = gradient(p);
  std::size_t param = a, dep = b;
  if (g[b].is_zero()) std::swap(param, dep);
  if (g[dep].is_zero()) throw CurveError("both affine partials vanish at a smooth point");
  Branch br;
  br.point = p;
  br.order = order;
  for (std::size_t i = 0; i < 3; ++i) {
    br.coords[i] = Series(order, Scalar::zero(f));
    br.coords[i][0] = p.xyz[i];
  }
  if (order > 1) br.coords[param][1] = Scalar::one(f);
  Scalar inv = g[dep].inverse();
  for (std::size_t j = 1; j < order; ++j) {
    Series s = restrict_to_branch(f_, br);
    br.coords[dep][j] = -s[j] * inv;
  }
  return br;
}

Vector CurveModel::canonical_image(const CurvePoint& p) const {
  if (!is_smooth_point(p)) throw CurveError("canonical image requested at a non-smooth point " + p.to_string());
  Vector v;
  for (const auto& h : canonical_) v.push_back(eval_point(h, p.xyz));
  return v;
}

std::array<Vector, 3> CurveModel::canonical_jet(const CurvePoint& p) const {
  Branch br = branch(p, 3);
  std::array<Vector, 3> out;
  for (const auto& h : canonical_) {
    Series s = restrict_to_branch(h, br);
    out[0].push_back(s[0]);
    out[1].push_back(s[1]);
    out[2].push_back(s[2] * Scalar(field_, 2L));
  }
  return out;
}

Matrix taylor_conditions(const MonomialBasis& monomials, const CurvePoint& p, int order) {
  const Field& f = p.xyz[0].field();
  std::size_t k = p.chart();
  std::size_t a = k == 0 ? 1 : 0;
  std::size_t b = k == 2 ? 1 : 2;
  std::vector<std::pair<int, int>> rows;
  for (int tot = 0; tot <= order; ++tot)
    for (int i = tot; i >= 0; --i) rows.emplace_back(i, tot - i);
  Matrix m(f, rows.size(), monomials.size());
  for (std::size_t c = 0; c < monomials.size(); ++c) {
    const Exponent& e = monomials[c];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto [i, j] = rows[r];
      if (i > e[a] || j > e[b]) continue;
      m(r, c) = binomial(f, e[a], i) * p.xyz[a].pow(static_cast<std::uint64_t>(e[a] - i)) * binomial(f, e[b], j) *
                p.xyz[b].pow(static_cast<std::uint64_t>(e[b] - j));
    }
  }
  return m;
}

std::vector<Poly> adjoint_space(const CurveModel& model, int k) {
  const Field& f = model.field();
  if (k < 0) return {};
  MonomialBasis mons =
      k >= model.degree() ? MonomialBasis::standard(model.equation(), k) : MonomialBasis::of_degree(3, k);
  Matrix cond(f, 0, mons.size());
  for (const auto& s : model.singular_points()) {
    if (s.multiplicity < 2) continue;
    Matrix t = taylor_conditions(mons, s.point, s.multiplicity - 2);
    for (std::size_t r = 0; r < t.rows(); ++r) cond.append_row(t.row(r));
  }
  std::vector<Poly> out;
  if (cond.rows() == 0) {
    for (std::size_t i = 0; i < mons.size(); ++i) out.push_back(Poly::monomial(f, mons[i], Scalar::one(f)));
    return out;
  }
  for (const auto& v : exact_kernel(cond).basis) out.push_back(mons.poly(f, v));
  return out;
}

UPoly restrict_to_line(const Poly& h, const PlanePoint& a, const PlanePoint& b) {
  const Field& f = h.field();
  std::array<std::vector<UPoly>, 3> pw;
  for (std::size_t i = 0; i < 3; ++i) {
    pw[i].push_back(UPoly(f, {Scalar::one(f)}));
  }
  UPoly out(f);
  for (const auto& [e, c] : h.terms()) {
    UPoly t(f, {c});
    for (std::size_t i = 0; i < 3; ++i) {
      while (static_cast<int>(pw[i].size()) <= e[i]) pw[i].push_back(pw[i].back() * UPoly(f, {a[i], b[i]}));
      if (e[i]) t = t * pw[i][static_cast<std::size_t>(e[i])];
    }
    out = out + t;
  }
  return out;
}

namespace {

Scalar reduce_checked(const Field& f, const mpq_class& q) {
  try {
    return reduce_rational(f, q);
  } catch (const std::domain_error&) {
    throw CurveError("bad reduction: a denominator is divisible by the characteristic of " + f.describe());
  }
}

Poly equation_over(const CurveSpec& spec, const Field& f) {
  Poly p(f, 3);
  for (const auto& t : spec.terms)
    p.add_term(Exponent(t.exponent.begin(), t.exponent.end()), reduce_checked(f, t.coefficient));
  return p;
}

// Binary form of degree m given by coefficients c[i] of u^i v^(m-i) is squarefree.
bool binary_form_squarefree(const Field& f, const std::vector<Scalar>& c) {
  int m = static_cast<int>(c.size()) - 1;
  UPoly g(f, c);  // g(s) = B(s, 1)
  if (g.is_zero()) return false;
  int at_infinity = m - g.degree();
  if (at_infinity > 1) return false;
  return is_squarefree(g);
}

std::string certify_irreducible(const Poly& f_fp, Rng& rng) {
  const Field& f = f_fp.field();
  int d = f_fp.degree();
  std::optional<std::string> line_cert, point_cert;
  for (int attempt = 0; attempt < 400 && !(line_cert && point_cert); ++attempt) {
    PlanePoint a{rng.scalar(f), rng.scalar(f), rng.scalar(f)};
    PlanePoint b{rng.scalar(f), rng.scalar(f), rng.scalar(f)};
    UPoly r = restrict_to_line(f_fp, a, b);
    if (!line_cert && r.degree() == d && is_irreducible_fp(r)) line_cert = "irreducible line restriction";
    if (!point_cert && r.degree() == d) {
      for (const auto& t : roots_fp(r, rng)) {
        PlanePoint q{a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2]};
        bool smooth = false;
        for (std::size_t i = 0; i < 3 && !smooth; ++i) smooth = !eval_point(f_fp.derivative(i), q).is_zero();
        if (smooth) {
          point_cert = "smooth rational point " + make_point(q).to_string();
          break;
        }
      }
    }
  }
  if (!line_cert || !point_cert) throw CurveError("could not certify absolute irreducibility over " + f.describe());
  return f.describe() + ": " + *line_cert + "; " + *point_cert;
}

}  // namespace

CurveModel CurveModel::from_spec(const CurveSpec& spec, const Field& target) {
  if (spec.field.is_prime() && spec.field != target)
    throw CurveError("curve is defined over " + spec.field.describe() + " and cannot be used over " + target.describe());
  CurveModel m;
  m.spec_ = spec;
  m.name_ = spec.name;
  m.field_ = target;
  m.degree_ = spec.degree;
  m.tags_ = spec.tags;
  m.f_ = equation_over(spec, target);
  if (m.f_.is_zero() || m.f_.degree() != spec.degree || !m.f_.is_homogeneous())
    throw CurveError("equation is not a nonzero form of the declared degree over " + target.describe());
  for (std::size_t i = 0; i < 3; ++i) m.grad_[i] = m.f_.derivative(i);

  int arithmetic = (spec.degree - 1) * (spec.degree - 2) / 2;
  int delta = 0;
  for (const auto& s : spec.singularities) {
    PlanePoint p{reduce_checked(target, s.point[0]), reduce_checked(target, s.point[1]), reduce_checked(target, s.point[2])};
    if (p[0].is_zero() && p[1].is_zero() && p[2].is_zero()) throw CurveError("singular point has zero coordinates");
    CurvePoint cp = make_point(p);
    std::vector<Exponent> mons;
    Vector coeffs;
    for (const auto& [e, c] : m.f_.terms()) {
      mons.push_back(e);
      coeffs.push_back(c);
    }
    MonomialBasis fb(mons);
    Matrix t = taylor_conditions(fb, cp, s.multiplicity);
    Vector taylor = t * coeffs;
    std::size_t idx = 0;
    std::vector<Scalar> cone;
    for (int tot = 0; tot <= s.multiplicity; ++tot)
      for (int i = tot; i >= 0; --i, ++idx) {
        if (tot < s.multiplicity && !taylor[idx].is_zero())
          throw CurveError("point " + cp.to_string() + " does not have multiplicity >= " +
                           std::to_string(s.multiplicity));
        if (tot == s.multiplicity) cone.push_back(taylor[idx]);
      }
    // cone[r] is the coefficient of u^(m-r) v^r; reorder to ascending powers of u.
    std::vector<Scalar> asc(cone.rbegin(), cone.rend());
    if (is_zero(cone))
      throw CurveError("point " + cp.to_string() + " has multiplicity above " + std::to_string(s.multiplicity));
    if (!binary_form_squarefree(target, asc))
      throw CurveError("non-ordinary singularity at " + cp.to_string() + " (tangent cone not reduced)");
    for (const auto& prev : m.sing_)
      if (prev.point == cp) throw CurveError("singular point listed twice: " + cp.to_string());
    m.sing_.push_back({cp, s.multiplicity});
    delta += s.multiplicity * (s.multiplicity - 1) / 2;
  }
  m.genus_ = arithmetic - delta;
  if (spec.genus && *spec.genus != m.genus_)
    throw CurveError("genus mismatch: declared " + std::to_string(*spec.genus) + ", formula gives " +
                     std::to_string(m.genus_));
  if (m.genus_ < 3) throw CurveError("genus must be at least 3, got " + std::to_string(m.genus_));

  m.canonical_ = adjoint_space(m, spec.degree - 3);
  if (static_cast<int>(m.canonical_.size()) != m.genus_)
    throw CurveError("adjoint dimension " + std::to_string(m.canonical_.size()) + " differs from genus " +
                     std::to_string(m.genus_));

  Rng rng(derive_seed(0, "irreducibility:" + spec.name));
  if (target.is_prime()) {
    m.irreducible_cert_ = certify_irreducible(m.f_, rng);
  } else {
    std::string err;
    for (std::uint64_t p : {10007ull, 10009ull, 65521ull, 1000003ull}) {
      try {
        Poly fp = equation_over(spec, Field::prime(p));
        if (fp.degree() != spec.degree) continue;
        m.irreducible_cert_ = certify_irreducible(fp, rng);
        break;
      } catch (const CurveError& e) {
        err = e.what();
      }
    }
    if (m.irreducible_cert_.empty()) throw CurveError("could not certify irreducibility: " + err);
  }
  return m;
}

CurveModel load_curve(const std::string& path, std::optional<Field> target) {
  CurveSpec spec = read_curve_file(path);
  return CurveModel::from_spec(spec, target.value_or(spec.field));
}

std::vector<CurvePoint> sample_points(const CurveModel& model, std::size_t n, std::uint64_t seed) {
  const Field& f = model.field();
  if (!f.is_prime()) throw std::invalid_argument("point sampling requires finite-field mode");
  std::vector<CurvePoint> out;
  if (n == 0) return out;
  double p = static_cast<double>(f.characteristic());
  double bound = p + 1 + 2.0 * model.genus() * std::sqrt(p);
  if (static_cast<double>(n) > bound)
    throw std::domain_error("requested " + std::to_string(n) + " points but the curve has at most " +
                            std::to_string(static_cast<long long>(bound)) + " over " + f.describe() +
                            "; use a larger prime");
  Rng rng(derive_seed(seed, "sample_points"));
  std::set<std::string> seen_points, seen_images;
  std::size_t attempts = 0, max_attempts = 200 * n + 1000;
  while (out.size() < n) {
    if (++attempts > max_attempts)
      throw std::domain_error("insufficient distinct smooth points found over " + f.describe() +
                              "; use a larger prime");
    Scalar x0 = rng.scalar(f);
    PlanePoint a{x0, Scalar::zero(f), Scalar::one(f)};
    PlanePoint b{Scalar::zero(f), Scalar::one(f), Scalar::zero(f)};
    UPoly r = restrict_to_line(model.equation(), a, b);
    if (r.is_zero()) continue;
    auto roots = roots_fp(r, rng);
    if (roots.empty()) continue;
    const Scalar& y = roots[rng.below(roots.size())];
    CurvePoint c = make_point({x0, y, Scalar::one(f)});
    if (!model.is_smooth_point(c) || model.is_singular_point(c)) continue;
    std::string key = c.to_string();
    if (seen_points.count(key)) continue;
    Vector img = normalize_projective(model.canonical_image(c));
    std::string ikey;
    for (const auto& s : img) ikey += s.to_string() + ",";
    if (is_zero(img) || seen_images.count(ikey)) continue;
    seen_points.insert(key);
    seen_images.insert(ikey);
    out.push_back(c);
  }
  return out;
}

std::optional<std::vector<CurvePoint>> rational_line_section(const CurveModel& model, const Poly& line, Rng& rng) {
  const Field& f = model.field();
  PlanePoint l{line.coeff({1, 0, 0}), line.coeff({0, 1, 0}), line.coeff({0, 0, 1})};
  Matrix lm(f, 1, 3);
  for (std::size_t i = 0; i < 3; ++i) lm(0, i) = l[i];
  auto ker = exact_kernel(lm).basis;
  if (ker.size() != 2) throw std::invalid_argument("not a line");
  PlanePoint a{ker[0][0], ker[0][1], ker[0][2]};
  PlanePoint b;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Scalar s = rng.scalar(f);
    b = {ker[1][0] + s * a[0], ker[1][1] + s * a[1], ker[1][2] + s * a[2]};
    if (!model.on_curve(b)) break;
  }
  UPoly r = restrict_to_line(model.equation(), a, b);
  if (r.degree() != model.degree() || !is_squarefree(r)) return std::nullopt;
  auto roots = roots_fp(r, rng);
  if (static_cast<int>(roots.size()) != model.degree()) return std::nullopt;
  std::vector<CurvePoint> pts;
  for (const auto& t : roots) pts.push_back(make_point({a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2]}));
  return pts;
}

}  // namespace thetalab
