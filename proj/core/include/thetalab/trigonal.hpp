#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thetalab/bundles.hpp"

namespace thetalab {

class TrigonalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Residual points of a random line through a plane point, if they are all rational, smooth and distinct.
std::optional<std::vector<CurvePoint>> line_fiber(const CurveModel& model, const PlanePoint& centre, Rng& rng);

struct TrigonalContext {
  const CurveModel* model = nullptr;
  CurvePoint centre;
  Poly s0, s1;              // lines through the centre
  std::vector<Poly> v;      // basis of H0(K - g13) as plane forms of degree d - 4
  std::vector<Vector> beta0, beta1;  // images in canonical coordinates
  std::vector<std::vector<CurvePoint>> fibers;

  std::size_t dim_v() const { return v.size(); }
};

TrigonalContext trigonal_context(CanonicalRing& ring, std::uint64_t seed, std::size_t fibers = 8);
// Same context with the pencil basis replaced by (a s0 + b s1, c s0 + d s1).
TrigonalContext rebased(CanonicalRing& ring, const TrigonalContext& tc, const Scalar& a, const Scalar& b,
                        const Scalar& c, const Scalar& d);

QuadraticForm beta_map(const TrigonalContext& tc, const Vector& v, const Vector& w);
QuadraticForm delta_quadric(const TrigonalContext& tc, const std::vector<Vector>& u);

struct BetaIsoReport {
  bool ok = false;
  std::size_t rank = 0;
  std::size_t expected = 0;
  bool all_in_ideal = false;
  bool trisecants_contained = false;
  std::size_t fibers_checked = 0;
  std::string reason;
};

BetaIsoReport beta_iso_certificate(CanonicalRing& ring, const TrigonalContext& tc, const IdealComponent& i2);

struct CorankReport {
  std::size_t route_a = 0;  // quadrics on the exterior square through the Grassmannian
  std::size_t route_b = 0;  // codimension of the beta-squares span
  std::size_t expected = 0;
  std::size_t samples_a = 0;
  std::size_t samples_b = 0;
  bool stabilized = false;
};

CorankReport corank_certificate(const TrigonalContext& tc, const IdealComponent& i2, std::uint64_t seed);

// Divisors of degree g-1 with exactly two sections, built from line pencils.
std::vector<std::vector<CurvePoint>> sing_theta_proxies(const CurveModel& model, std::size_t count,
                                                        std::uint64_t seed);

}  // namespace thetalab
