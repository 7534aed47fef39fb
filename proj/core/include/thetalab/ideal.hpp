#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thetalab/quadratic_form.hpp"
#include "thetalab/rr.hpp"

namespace thetalab {

// Products of canonical forms reduced modulo the curve equation, with caching.
class CanonicalRing {
 public:
  explicit CanonicalRing(const CurveModel& model);
  const CurveModel& model() const { return *model_; }
  int genus() const { return model_->genus(); }
  // Reduced plane form representing the monomial x^e in the canonical coordinates.
  const Poly& product(const Exponent& e);
  // Section of nK (as a reduced plane form) for a degree-n form in g variables.
  Poly section(const Poly& form);
  // Coordinates of section(form) in the standard monomials of degree n(d-3).
  Vector section_coordinates(const Poly& form);
  // Linear form in canonical coordinates to an adjoint plane form, and back.
  Poly adjoint(const Vector& linear) const;
  Vector coordinates_of_adjoint(const Poly& h) const;
  const MonomialBasis& standard(int degree);

 private:
  const CurveModel* model_;
  std::map<Exponent, Poly> cache_;
  std::map<int, MonomialBasis> standard_;
  Matrix adjoint_matrix_;
  MonomialBasis adjoint_monomials_;
};

struct IdealComponent {
  int degree = 0;
  int order = 1;
  std::size_t nvars = 0;
  MonomialBasis monomials;
  std::vector<Poly> basis;
  std::string curve;
  std::size_t sample_size = 0;

  std::size_t dim() const { return basis.size(); }
  // Basis vectors in the monomial coordinates.
  std::vector<Vector> coordinate_vectors() const;
  bool contains(const Poly& form) const;
};

IdealComponent ideal_component(CanonicalRing& ring, int n);
IdealComponent ideal_component(const CurveModel& model, int n);
// Degree-n forms vanishing to order t along the canonical curve, by sampling until stable.
IdealComponent higher_ideal(const CurveModel& model, int t, int n, std::uint64_t seed);
// Checks vanishing to order comp.order at the given number of sampled points.
bool vanishes_on_sample(const CurveModel& model, const IdealComponent& comp, std::size_t points,
                        std::uint64_t seed);

struct SyzygyReport {
  std::size_t ideal2_dim = 0;
  std::size_t ideal4_dim = 0;
  std::size_t sym2_dim = 0;
  Matrix m;  // columns: products Q_A Q_B (A <= B) in I(4) coordinates
  std::size_t rank = 0;
  std::size_t kernel_dim = 0;
  std::vector<Matrix> kernel;  // symmetric tensors S with sum S_AB Q_A Q_B = 0
  bool consistency = false;
};

SyzygyReport syzygy_kernel(const IdealComponent& i2, const IdealComponent& i4, std::uint64_t seed = 0);

struct GeneralPosition {
  bool ok = false;
  std::size_t rank = 0;
  std::size_t expected = 0;
  std::string reason;
};

GeneralPosition general_position_check(const CurveModel& model, const IdealComponent& i2,
                                       const std::vector<CurvePoint>& points);

struct PetriQuadric {
  int i = 0, j = 0;  // zero-based, i < j <= g - 3
  QuadraticForm form;
  std::vector<Scalar> lambda, mu;
  Scalar b;
  Vector eta, nu;  // canonical coordinates
  std::size_t rank = 0;
  std::vector<int> dij;
  bool dij_in_sing = false;
};

struct PetriBasis {
  std::vector<CurvePoint> points;
  std::vector<Vector> omega;  // canonical coordinates of the dual differentials
  std::vector<PetriQuadric> quadrics;
  bool duality = false;
  std::size_t span_rank = 0;
  bool spans_ideal = false;
};

class PetriError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PetriBasis petri_basis(CanonicalRing& ring, const IdealComponent& i2, const std::vector<CurvePoint>& points);

struct SingularityReport {
  std::size_t rank = 0;
  std::vector<Vector> sing_basis;
  std::vector<std::size_t> candidates_in_sing;
  std::size_t sampled = 0;
  std::size_t sampled_hits = 0;
};

SingularityReport quadric_curve_singularity(const CurveModel& model, const QuadraticForm& q,
                                            const std::vector<CurvePoint>& candidates, std::size_t samples,
                                            std::uint64_t seed);

// Base points of a pencil of canonical adjoints outside the known points (rational, affine chart).
std::vector<CurvePoint> pencil_base_points(const CurveModel& model, const std::vector<Poly>& pencil,
                                           const std::vector<CurvePoint>& known);

// Rank <= 4 quadric attached to a degree g-1 divisor with two sections.
QuadraticForm tangent_cone_quadric(CanonicalRing& ring, const std::vector<CurvePoint>& a);

bool points_on_conic(const std::vector<PlanePoint>& pts);

// Quadratic form in canonical coordinates of a quadric polynomial in g variables, and back.
QuadraticForm quadric_form(const Poly& q);
bool in_ideal(CanonicalRing& ring, const QuadraticForm& q);

}  // namespace thetalab
