#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thetalab/ideal.hpp"

namespace thetalab {

struct ThreePlane {
  std::vector<Vector> basis;  // three linear forms in canonical coordinates
  Vector plucker;             // coordinates on triples a < b < c
  bool mult_surjective = false;
  std::size_t mult_rank = 0;
};

ThreePlane make_three_plane(CanonicalRing& ring, const std::vector<Vector>& basis);

class EWProxy {
 public:
  EWProxy(const CurveModel& model, ThreePlane w) : model_(&model), w_(std::move(w)) {}
  const ThreePlane& plane() const { return w_; }
  const CurveModel& model() const { return *model_; }
  // Restriction of the evaluation functional at p to W; empty when p projects to the centre.
  std::optional<Vector> s_point(const CurvePoint& p) const;

 private:
  const CurveModel* model_;
  ThreePlane w_;
};

EWProxy build_EW(const CurveModel& model, const ThreePlane& w);

struct IncidenceResult {
  Scalar pairing;
  Scalar determinant;
  bool consistent = false;
};

IncidenceResult incidence_pairing(const EWProxy& ew, const CurvePoint& p, const CurvePoint& q, const CurvePoint& r);

// Chart of a rank 5/6 quadric into Plucker coordinates (p12, p13, p14, p23, p24, p34).
struct PairEV {
  QuadraticForm source;
  std::size_t rank = 0;
  Matrix chart;  // 6 x g
  bool quotient_side = false;
  bool stable = false;
  Matrix symplectic;  // rank 5 only: maps sub-side planes to quotient-side planes

  Vector plucker(const Vector& canonical) const;
  // Basis of gamma(p) in the 4-dim space; throws if undefined.
  std::vector<Vector> gamma(const Vector& canonical) const;
  std::vector<Vector> gamma_perp(const Vector& canonical) const;
};

std::pair<PairEV, PairEV> pair_from_quadric(const CurveModel& model, const QuadraticForm& q, std::uint64_t seed,
                                            std::size_t samples = 20);
std::vector<Vector> sections_vanishing(const PairEV& pair, const std::vector<Vector>& canonical_points);
QuadraticForm quadric_from_pair(const PairEV& pair);
// Dimension of the space of linear maps T with T(gamma_a(p)) inside gamma_b(p) for all given points.
std::size_t pair_isomorphisms(const PairEV& a, const PairEV& b, const std::vector<Vector>& canonical_points);
// Skew matrix of the Plucker vector.
Matrix skew_of_plucker(const Vector& p);

// Pullback of the Pfaffian of a (2d+4) x (2d+4) skew matrix through a chart into its exterior square.
Poly pfaffian_pullback(const Matrix& chart, int d);
Poly pfaffian(const std::vector<std::vector<Poly>>& skew);

struct ExtensionSpace {
  CurvePoint p, q, r;
  LinearSeries sections;  // H0(K x^2), x = O(p + q - r)
  std::array<Vector, 2> embed(const CurveModel& model, const CurvePoint& x) const;
};

ExtensionSpace extension_space(const CurveModel& model, const CurvePoint& p, const CurvePoint& q,
                               const CurvePoint& r, std::uint64_t seed = 0);

class CollinearError : public std::invalid_argument {
 public:
  CollinearError(const std::string& what, Matrix witness) : std::invalid_argument(what), witness(std::move(witness)) {}
  Matrix witness;
};

struct ExtensionClass {
  ExtensionSpace space;
  Vector functional;     // tangent-line intersection
  Vector functional_b;   // annihilator of the two vanishing subspaces
  bool paths_agree = false;
  std::size_t tangent_span = 0;
  std::size_t h0_minus_2p_2q = 0;
  std::string provenance;
};

ExtensionClass build_Epqr(const CurveModel& model, const CurvePoint& p, const CurvePoint& q, const CurvePoint& r,
                          std::uint64_t seed = 0);

struct ThetaIncidence {
  bool holds = false;
  std::string branch;  // "h0(x^-1 a) > 0", "h0(x^-1 a') > 0" or "coboundary"
  Scalar pairing;
};

ThetaIncidence theta_incidence_check(const CurveModel& model, const ExtensionClass& e, const std::vector<CurvePoint>& a,
                          const std::optional<Vector>& functional_override = std::nullopt);

struct SpanContribution {
  int step = 0;
  std::vector<int> indices;
  std::vector<Scalar> params;
  std::size_t rank = 0;
};

struct SpanReport {
  std::string route;
  std::vector<SpanContribution> contributions;
  std::size_t step1_dim = 0;
  std::size_t span_dim = 0;
  std::size_t expected = 0;
  bool monotone = true;
  std::vector<std::string> failures;
};

// Upper-triangle coordinates of Q (x) Q in Sym^2 I(2), Q given in I(2) coordinates.
Vector square_tensor(const Vector& q);

SpanReport surjectivity_certificate(CanonicalRing& ring, const IdealComponent& i2, const PetriBasis& petri,
                                    std::uint64_t seed);

}  // namespace thetalab
