#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetalab/poly.hpp"
#include "thetalab/rng.hpp"
#include "thetalab/upoly.hpp"

namespace thetalab {

struct CurveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact file-level description of a plane curve (rational data).
struct CurveSpec {
  struct Term {
    std::array<int, 3> exponent;
    mpq_class coefficient;
  };
  struct Singularity {
    std::array<mpq_class, 3> point;
    int multiplicity = 2;
  };
  std::string name;
  Field field;
  int degree = 0;
  std::vector<Term> terms;
  std::vector<Singularity> singularities;
  std::optional<int> genus;
  std::vector<std::string> tags;
};

CurveSpec parse_curve_text(const std::string& text);
std::string format_curve(const CurveSpec& spec);
CurveSpec read_curve_file(const std::string& path);

using PlanePoint = std::array<Scalar, 3>;

// A point of P^2 scaled so that its last nonzero coordinate equals 1.
struct CurvePoint {
  PlanePoint xyz;
  std::size_t chart() const;
  bool operator==(const CurvePoint& o) const;
  bool operator!=(const CurvePoint& o) const { return !(*this == o); }
  std::string to_string() const;
};

CurvePoint make_point(const PlanePoint& p);

struct SingularPoint {
  CurvePoint point;
  int multiplicity;
};

// Truncated power series in a local parameter t.
using Series = std::vector<Scalar>;
Series series_mul(const Series& a, const Series& b, std::size_t n);
int series_order(const Series& s);

// Local analytic branch of the curve at a smooth point: coordinate series in t.
struct Branch {
  CurvePoint point;
  std::size_t order = 0;
  std::array<Series, 3> coords;
};

class CurveModel {
 public:
  // Validates every model invariant over the target field.
  static CurveModel from_spec(const CurveSpec& spec, const Field& target);

  const std::string& name() const { return name_; }
  const Field& field() const { return field_; }
  int degree() const { return degree_; }
  int genus() const { return genus_; }
  const Poly& equation() const { return f_; }
  const std::vector<SingularPoint>& singular_points() const { return sing_; }
  const std::vector<std::string>& tags() const { return tags_; }
  bool has_tag(const std::string& t) const;
  const std::vector<Poly>& canonical_forms() const { return canonical_; }
  const CurveSpec& spec() const { return spec_; }
  std::string irreducibility_certificate() const { return irreducible_cert_; }

  bool on_curve(const PlanePoint& p) const;
  bool is_smooth_point(const CurvePoint& p) const;
  bool is_singular_point(const CurvePoint& p) const;
  Vector gradient(const CurvePoint& p) const;
  // Tangent line at a smooth point as a linear form.
  Poly tangent_line(const CurvePoint& p) const;

  Branch branch(const CurvePoint& p, std::size_t order) const;
  // Taylor coefficients of a plane form along a branch.
  static Series restrict_to_branch(const Poly& h, const Branch& b);

  // Canonical image of a smooth point (values of the canonical basis).
  Vector canonical_image(const CurvePoint& p) const;
  // Values and first two derivatives of the canonical basis along the local parameter.
  std::array<Vector, 3> canonical_jet(const CurvePoint& p) const;

 private:
  std::string name_;
  Field field_;
  int degree_ = 0;
  int genus_ = 0;
  Poly f_;
  std::array<Poly, 3> grad_;
  std::vector<SingularPoint> sing_;
  std::vector<std::string> tags_;
  std::vector<Poly> canonical_;
  CurveSpec spec_;
  std::string irreducible_cert_;
};

CurveModel load_curve(const std::string& path, std::optional<Field> target = std::nullopt);

// Linear conditions: Taylor coefficients of total degree <= order at a plane point, for a degree-k form.
// Rows index (i, j) with i + j <= order; columns index monomials of the basis.
Matrix taylor_conditions(const MonomialBasis& monomials, const CurvePoint& p, int order);

// Degree-k forms vanishing to order m-1 at every singular point, reduced modulo f when k >= d.
std::vector<Poly> adjoint_space(const CurveModel& model, int k);

// Distinct smooth points with pairwise distinct canonical images; deterministic per seed.
std::vector<CurvePoint> sample_points(const CurveModel& model, std::size_t n, std::uint64_t seed);

// Points of a line section: all intersections of the line with the curve when they are F_p-rational.
std::optional<std::vector<CurvePoint>> rational_line_section(const CurveModel& model, const Poly& line, Rng& rng);

// Restriction of a plane form to the line through a and b: polynomial in t for the point a + t b.
UPoly restrict_to_line(const Poly& h, const PlanePoint& a, const PlanePoint& b);

PlanePoint cross(const PlanePoint& a, const PlanePoint& b);
Poly linear_form(const Field& f, const PlanePoint& coeffs);
Scalar eval_point(const Poly& h, const PlanePoint& p);

}  // namespace thetalab
