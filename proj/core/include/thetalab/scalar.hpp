#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace thetalab {

struct FieldMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Either the rationals (characteristic 0) or a prime field F_p with p odd, p >= 1009.
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(std::uint64_t p);
  // Parses "Q" or "Fp:<p>".
  static Field parse(const std::string& descriptor);

  bool is_prime() const { return p_ != 0; }
  bool is_rational() const { return p_ == 0; }
  std::uint64_t characteristic() const { return p_; }
  std::string describe() const;

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

 private:
  std::uint64_t p_ = 0;
};

bool is_prime_number(std::uint64_t n);

class Scalar {
 public:
  Scalar() = default;
  Scalar(const Field& f, long v);
  Scalar(const Field& f, const mpq_class& q);

  static Scalar zero(const Field& f) { return Scalar(f, 0L); }
  static Scalar one(const Field& f) { return Scalar(f, 1L); }
  // Uniform element of F_p from a raw 64-bit draw; rationals not supported.
  static Scalar from_raw(const Field& f, std::uint64_t raw);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;

  // Residue in [0,p) for prime fields.
  std::uint64_t residue() const;
  const mpq_class& rational() const;
  // Canonical text: residue for F_p, "a" or "a/b" for Q.
  std::string to_string() const;
  // Deterministic total order used only for canonical output.
  bool less_canonical(const Scalar& o) const;

 private:
  Field field_;
  std::variant<std::uint64_t, mpq_class> v_{mpq_class(0)};
  void check(const Scalar& o) const;
};

// Parses "a", "-a", "a/b" into a field element (denominator must be invertible).
Scalar parse_scalar(const Field& f, const std::string& text);
mpq_class parse_rational(const std::string& text);
Scalar reduce_rational(const Field& f, const mpq_class& q);

}  // namespace thetalab
