#include "thetalab/poly.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace thetalab {

bool GrlexDesc::operator()(const Exponent& a, const Exponent& b) const {
  int da = exponent_degree(a), db = exponent_degree(b);
  if (da != db) return da > db;
  return a > b;
}

int exponent_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool exponent_divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Poly Poly::constant(const Field& f, std::size_t nvars, const Scalar& c) {
  Poly p(f, nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Poly Poly::variable(const Field& f, std::size_t nvars, std::size_t i) {
  Exponent e(nvars, 0);
  e[i] = 1;
  return monomial(f, e, Scalar::one(f));
}

Poly Poly::monomial(const Field& f, const Exponent& e, const Scalar& c) {
  Poly p(f, e.size());
  p.add_term(e, c);
  return p;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return exponent_degree(terms_.begin()->first);
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = degree();
  for (const auto& [e, c] : terms_)
    if (exponent_degree(e) != d) return false;
  return true;
}

Scalar Poly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

void Poly::add_term(const Exponent& e, const Scalar& c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent length does not match the ring");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

const Exponent& Poly::leading_exponent() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return terms_.begin()->first;
}

const Scalar& Poly::leading_coefficient() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return terms_.begin()->second;
}

Poly& Poly::operator+=(const Poly& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial rings differ");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial rings differ");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator-() const { return scaled(-Scalar::one(field_)); }

Poly Poly::operator*(const Poly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial rings differ");
  if (field_ != o.field_) throw FieldMismatch("polynomials over different fields");
  Poly r(field_, nvars_);
  Exponent e(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::scaled(const Scalar& s) const {
  Poly r(field_, nvars_);
  if (s.is_zero()) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * s);
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly r = constant(field_, nvars_, Scalar::one(field_));
  for (unsigned i = 0; i < n; ++i) r = r * *this;
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  for (; a != terms_.end(); ++a, ++b)
    if (a->first != b->first || a->second != b->second) return false;
  return true;
}

Scalar Poly::eval(const Vector& point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong length");
  Scalar s = Scalar::zero(field_);
  int maxdeg = std::max(degree(), 0);
  std::vector<std::vector<Scalar>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    powers[i].push_back(Scalar::one(field_));
    for (int k = 1; k <= maxdeg; ++k) powers[i].push_back(powers[i].back() * point[i]);
  }
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) t *= powers[i][e[i]];
    s += t;
  }
  return s;
}

Poly Poly::derivative(std::size_t var) const {
  Poly r(field_, nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    r.add_term(f, c * Scalar(field_, static_cast<long>(e[var])));
  }
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  if (images.size() != nvars_) throw std::invalid_argument("substitution needs one image per variable");
  if (images.empty()) return *this;
  std::size_t m = images[0].nvars();
  Poly r(field_, m);
  int maxdeg = std::max(degree(), 0);
  std::vector<std::vector<Poly>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    powers[i].push_back(constant(field_, m, Scalar::one(field_)));
    for (int k = 1; k <= maxdeg; ++k) powers[i].push_back(powers[i].back() * images[i]);
  }
  for (const auto& [e, c] : terms_) {
    Poly t = constant(field_, m, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) t = t * powers[i][e[i]];
    r += t;
  }
  return r;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.to_string();
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      os << "*" << (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

namespace {
void enumerate(std::size_t nvars, int degree, std::size_t pos, Exponent& cur, std::vector<Exponent>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  for (int k = degree; k >= 0; --k) {
    cur[pos] = k;
    enumerate(nvars, degree - k, pos + 1, cur, out);
  }
}
}  // namespace

std::vector<Exponent> monomials_of_degree(std::size_t nvars, int degree) {
  std::vector<Exponent> out;
  if (nvars == 0 || degree < 0) return out;
  Exponent cur(nvars, 0);
  enumerate(nvars, degree, 0, cur, out);
  return out;
}

Poly normal_form(const Poly& p, const Poly& f) {
  if (f.is_zero()) throw std::domain_error("normal form modulo the zero polynomial");
  const Exponent& lm = f.leading_exponent();
  Scalar lc_inv = f.leading_coefficient().inverse();
  Poly r = p;
  Poly::Terms& t = r.terms_;
  auto it = t.begin();
  Exponent shift(lm.size());
  while (it != t.end()) {
    if (!exponent_divides(lm, it->first)) {
      ++it;
      continue;
    }
    Exponent e = it->first;
    Scalar c = it->second * lc_inv;
    for (std::size_t i = 0; i < lm.size(); ++i) shift[i] = e[i] - lm[i];
    for (const auto& [fe, fc] : f.terms()) {
      Exponent m(lm.size());
      for (std::size_t i = 0; i < lm.size(); ++i) m[i] = fe[i] + shift[i];
      r.add_term(m, -(c * fc));
    }
    it = t.lower_bound(e);
  }
  return r;
}

MonomialBasis::MonomialBasis(std::vector<Exponent> monomials) : mons_(std::move(monomials)) {
  for (std::size_t i = 0; i < mons_.size(); ++i) index_.emplace(mons_[i], i);
}

MonomialBasis MonomialBasis::of_degree(std::size_t nvars, int degree) {
  return MonomialBasis(monomials_of_degree(nvars, degree));
}

MonomialBasis MonomialBasis::standard(const Poly& f, int degree) {
  std::vector<Exponent> out;
  const Exponent& lm = f.leading_exponent();
  for (auto& e : monomials_of_degree(f.nvars(), degree))
    if (!exponent_divides(lm, e)) out.push_back(e);
  return MonomialBasis(std::move(out));
}

long MonomialBasis::index_of(const Exponent& e) const {
  auto it = index_.find(e);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

Vector MonomialBasis::coordinates(const Poly& p) const {
  Vector v(mons_.size(), Scalar::zero(p.field()));
  for (const auto& [e, c] : p.terms()) {
    long i = index_of(e);
    if (i < 0) throw std::invalid_argument("polynomial has a term outside the monomial basis");
    v[static_cast<std::size_t>(i)] = c;
  }
  return v;
}

Poly MonomialBasis::poly(const Field& f, const Vector& coords) const {
  if (coords.size() != mons_.size()) throw std::invalid_argument("coordinate vector has wrong length");
  std::size_t n = mons_.empty() ? 0 : mons_[0].size();
  Poly p(f, n);
  for (std::size_t i = 0; i < mons_.size(); ++i) p.add_term(mons_[i], coords[i]);
  return p;
}

}  // namespace thetalab
