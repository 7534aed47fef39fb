#include "thetalab/upoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace thetalab {

UPoly::UPoly(const Field& f, std::vector<Scalar> coeffs) : field_(f), c_(std::move(coeffs)) { trim(); }

UPoly UPoly::monomial(const Field& f, int degree, const Scalar& c) {
  std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1, Scalar::zero(f));
  v[static_cast<std::size_t>(degree)] = c;
  return UPoly(f, v);
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar UPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return Scalar::zero(field_);
  return c_[static_cast<std::size_t>(i)];
}

Scalar UPoly::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Scalar> v(std::max(c_.size(), o.c_.size()), Scalar::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return UPoly(field_, v);
}

UPoly UPoly::operator-(const UPoly& o) const {
  std::vector<Scalar> v(std::max(c_.size(), o.c_.size()), Scalar::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] -= o.c_[i];
  return UPoly(field_, v);
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (c_.empty() || o.c_.empty()) return UPoly(field_);
  std::vector<Scalar> v(c_.size() + o.c_.size() - 1, Scalar::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return UPoly(field_, v);
}

UPoly UPoly::scaled(const Scalar& s) const {
  std::vector<Scalar> v = c_;
  for (auto& x : v) x *= s;
  return UPoly(field_, v);
}

Scalar UPoly::eval(const Scalar& x) const {
  Scalar r = Scalar::zero(field_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

UPoly UPoly::derivative() const {
  std::vector<Scalar> v;
  for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * Scalar(field_, static_cast<long>(i)));
  return UPoly(field_, v);
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  return scaled(leading().inverse());
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const Field& f = a.field();
  std::vector<Scalar> rem = a.coeffs();
  int db = b.degree();
  Scalar inv = b.leading().inverse();
  std::vector<Scalar> quo(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0, Scalar::zero(f));
  for (int i = a.degree(); i >= db; --i) {
    Scalar c = rem[static_cast<std::size_t>(i)] * inv;
    if (c.is_zero()) continue;
    quo[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  q = UPoly(f, quo);
  rem.resize(static_cast<std::size_t>(std::max(0, std::min(a.degree() + 1, db))), Scalar::zero(f));
  r = UPoly(f, rem);
}

UPoly operator%(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(a, b, q, r);
  return r;
}

UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(a, b, q, r);
  if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
  return q;
}

UPoly gcd(const UPoly& a0, const UPoly& b0) {
  UPoly a = a0, b = b0;
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = b;
    b = r;
  }
  return a.monic();
}

UPoly powmod(const UPoly& base, std::uint64_t e, const UPoly& mod) {
  const Field& f = base.field();
  UPoly result(f, {Scalar::one(f)});
  result = result % mod;
  UPoly b = base % mod;
  while (e) {
    if (e & 1) result = (result * b) % mod;
    b = (b * b) % mod;
    e >>= 1;
  }
  return result;
}

bool is_squarefree(const UPoly& f) {
  if (f.degree() <= 0) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

namespace {

void split_linear(const UPoly& f, Rng& rng, std::vector<Scalar>& out) {
  const Field& fld = f.field();
  if (f.degree() == 0) return;
  if (f.degree() == 1) {
    UPoly m = f.monic();
    out.push_back(-m.coeff(0));
    return;
  }
  std::uint64_t p = fld.characteristic();
  for (;;) {
    UPoly t(fld, {rng.scalar(fld), Scalar::one(fld)});
    UPoly h = powmod(t, (p - 1) / 2, f) - UPoly(fld, {Scalar::one(fld)});
    UPoly d = gcd(f, h);
    if (d.degree() > 0 && d.degree() < f.degree()) {
      split_linear(d, rng, out);
      split_linear(exact_quotient(f, d), rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Scalar> roots_fp(const UPoly& f, Rng& rng) {
  const Field& fld = f.field();
  if (!fld.is_prime()) throw std::invalid_argument("root finding requires a prime field");
  if (f.is_zero()) throw std::domain_error("roots of the zero polynomial");
  std::vector<Scalar> out;
  if (f.degree() <= 0) return out;
  UPoly m = f.monic();
  UPoly x(fld, {Scalar::zero(fld), Scalar::one(fld)});
  UPoly g = gcd(m, powmod(x, fld.characteristic(), m) - x);
  split_linear(g, rng, out);
  std::sort(out.begin(), out.end(), [](const Scalar& a, const Scalar& b) { return a.residue() < b.residue(); });
  return out;
}

bool is_irreducible_fp(const UPoly& f) {
  const Field& fld = f.field();
  if (!fld.is_prime()) throw std::invalid_argument("irreducibility test requires a prime field");
  int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  UPoly m = f.monic();
  UPoly x(fld, {Scalar::zero(fld), Scalar::one(fld)});
  UPoly xp = x;
  for (int i = 1; i <= n / 2; ++i) {
    xp = powmod(xp, fld.characteristic(), m);
    if (gcd(m, xp - x).degree() > 0) return false;
  }
  return true;
}

}  // namespace thetalab
