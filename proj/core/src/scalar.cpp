#include "thetalab/scalar.hpp"

#include <cctype>

namespace thetalab {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p < 1009 || p % 2 == 0 || !is_prime_number(p) || p >= (1ull << 62)) {
    throw std::invalid_argument("field characteristic must be 0 or an odd prime >= 1009, got " +
                                std::to_string(p));
  }
  Field f;
  f.p_ = p;
  return f;
}

Field Field::parse(const std::string& descriptor) {
  if (descriptor == "Q") return rationals();
  if (descriptor.rfind("Fp:", 0) == 0) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(descriptor.substr(3));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad field descriptor: " + descriptor);
    }
    return prime(p);
  }
  throw std::invalid_argument("bad field descriptor: " + descriptor);
}

std::string Field::describe() const { return p_ == 0 ? "Q" : "Fp:" + std::to_string(p_); }

Scalar::Scalar(const Field& f, long v) : field_(f) {
  if (f.is_prime()) {
    long long p = static_cast<long long>(f.characteristic());
    long long r = static_cast<long long>(v) % p;
    if (r < 0) r += p;
    v_ = static_cast<std::uint64_t>(r);
  } else {
    v_ = mpq_class(v);
  }
}

Scalar::Scalar(const Field& f, const mpq_class& q) : field_(f) {
  if (f.is_prime()) {
    *this = reduce_rational(f, q);
  } else {
    mpq_class c = q;
    c.canonicalize();
    v_ = c;
  }
}

Scalar Scalar::from_raw(const Field& f, std::uint64_t raw) {
  if (!f.is_prime()) throw std::invalid_argument("random scalars require a prime field");
  Scalar s;
  s.field_ = f;
  s.v_ = raw % f.characteristic();
  return s;
}

void Scalar::check(const Scalar& o) const {
  if (field_ != o.field_) {
    throw FieldMismatch("mixed-field arithmetic: " + field_.describe() + " vs " + o.field_.describe());
  }
}

bool Scalar::is_zero() const {
  if (field_.is_prime()) return std::get<0>(v_) == 0;
  return std::get<1>(v_) == 0;
}

bool Scalar::is_one() const {
  if (field_.is_prime()) return std::get<0>(v_) == 1;
  return std::get<1>(v_) == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check(o);
  Scalar r;
  r.field_ = field_;
  if (field_.is_prime()) {
    std::uint64_t p = field_.characteristic();
    std::uint64_t s = std::get<0>(v_) + std::get<0>(o.v_);
    r.v_ = s >= p ? s - p : s;
  } else {
    r.v_ = mpq_class(std::get<1>(v_) + std::get<1>(o.v_));
  }
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  check(o);
  Scalar r;
  r.field_ = field_;
  if (field_.is_prime()) {
    std::uint64_t p = field_.characteristic();
    std::uint64_t a = std::get<0>(v_), b = std::get<0>(o.v_);
    r.v_ = a >= b ? a - b : a + p - b;
  } else {
    r.v_ = mpq_class(std::get<1>(v_) - std::get<1>(o.v_));
  }
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check(o);
  Scalar r;
  r.field_ = field_;
  if (field_.is_prime()) {
    r.v_ = mulmod(std::get<0>(v_), std::get<0>(o.v_), field_.characteristic());
  } else {
    r.v_ = mpq_class(std::get<1>(v_) * std::get<1>(o.v_));
  }
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar r;
  r.field_ = field_;
  if (field_.is_prime()) {
    std::uint64_t a = std::get<0>(v_);
    r.v_ = a == 0 ? 0 : field_.characteristic() - a;
  } else {
    r.v_ = mpq_class(-std::get<1>(v_));
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  check(o);
  if (field_.is_prime()) return std::get<0>(v_) == std::get<0>(o.v_);
  return std::get<1>(v_) == std::get<1>(o.v_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  Scalar r;
  r.field_ = field_;
  if (field_.is_prime()) {
    std::uint64_t p = field_.characteristic();
    r.v_ = powmod(std::get<0>(v_), p - 2, p);
  } else {
    r.v_ = mpq_class(1 / std::get<1>(v_));
  }
  return r;
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar r = one(field_);
  Scalar a = *this;
  while (e) {
    if (e & 1) r *= a;
    a *= a;
    e >>= 1;
  }
  return r;
}

std::uint64_t Scalar::residue() const {
  if (!field_.is_prime()) throw std::invalid_argument("residue() on a rational scalar");
  return std::get<0>(v_);
}

const mpq_class& Scalar::rational() const {
  if (field_.is_prime()) throw std::invalid_argument("rational() on a prime-field scalar");
  return std::get<1>(v_);
}

std::string Scalar::to_string() const {
  if (field_.is_prime()) return std::to_string(std::get<0>(v_));
  return std::get<1>(v_).get_str();
}

bool Scalar::less_canonical(const Scalar& o) const {
  check(o);
  if (field_.is_prime()) return std::get<0>(v_) < std::get<0>(o.v_);
  return std::get<1>(v_) < std::get<1>(o.v_);
}

mpq_class parse_rational(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
  };
  auto slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("bad rational literal: " + text);
  }
  if (num[0] == '+') num = num.substr(1);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + text);
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

Scalar reduce_rational(const Field& f, const mpq_class& q) {
  if (!f.is_prime()) return Scalar(f, q);
  mpz_class p(static_cast<unsigned long>(f.characteristic()));
  mpz_class num = q.get_num() % p;
  mpz_class den = q.get_den() % p;
  if (num < 0) num += p;
  if (den == 0) throw std::domain_error("denominator divisible by the field characteristic");
  Scalar a = Scalar::from_raw(f, num.get_ui());
  Scalar b = Scalar::from_raw(f, den.get_ui());
  return a / b;
}

Scalar parse_scalar(const Field& f, const std::string& text) { return reduce_rational(f, parse_rational(text)); }

}  // namespace thetalab
