#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace thetalab {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

class ThetaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ThetaContext {
  int genus = 0;
  CMatrix omega;
  double epsilon = 1e-14;
  Eigen::MatrixXd im_chol;   // upper triangular T with Im(omega) = T^t T
  Eigen::MatrixXd im_inv;
  double lattice_min = 0;    // lower bound for the shortest vector of T Z^g
  double inv_norm = 0;       // spectral norm of T^{-1}
  double radius = 0;         // summation radius for real arguments and order 4
  double radius_factor = 1;  // multiplies every derived radius
};

ThetaContext make_theta_context(const CMatrix& omega, double epsilon = 1e-14);
CMatrix random_period_matrix(int g, std::uint64_t seed);
CMatrix diagonal_period_matrix(int g, std::uint64_t seed);

// Characteristic nu in lexicographic order over {0, 1/2}^g, first coordinate most significant.
std::vector<double> theta_characteristic(int g, std::size_t index);

// Tail of the lattice sum beyond radius rho, for derivative order `order` with unit directions.
double theta_tail_bound(const ThetaContext& ctx, double scale, double rho, int order, double center_norm);

cplx theta_char(const ThetaContext& ctx, const std::vector<double>& nu, const CVector& z);

struct ThetaVector {
  CVector w;
  CVector values;                  // 2^g second-order theta values
  std::vector<CVector> gradient;   // per coordinate, if requested
  std::vector<CVector> hessian;    // upper triangle (i <= j) in row-major order, if requested
  std::size_t terms = 0;
};

// order 0, 1 or 2: values and optionally full gradient / Hessian.
ThetaVector theta2(const ThetaContext& ctx, const CVector& w, int order = 0);
// D_{a_1} ... D_{a_k} theta_2 (w) with k <= 4.
CVector theta2_directional(const ThetaContext& ctx, const CVector& w, const std::vector<CVector>& dirs);
cplx lattice_multiplier(const ThetaContext& ctx, const Eigen::VectorXd& m, const CVector& w);

struct KummerReport {
  int genus = 0;
  std::size_t ambient = 0;
  std::size_t tangent_dim = 0;
  std::size_t gamma00_dim = 0;
  std::vector<double> singular_values;  // normalised by the largest
  double threshold = 0;
  double gap_ratio = 0;
  bool indeterminate = false;
  CMatrix tangent_basis;   // orthonormal columns
  CMatrix gamma00_basis;   // coefficient vectors f with f^t theta_2 of multiplicity >= 4
};

KummerReport kummer_tangent_report(const ThetaContext& ctx, double threshold = 1e-8);
CVector project_mod_tangent(const KummerReport& k, const CVector& v);

struct FixturePoint {
  cplx x;
  CVector w;
  CVector w_prime;
};

struct AbelianFixture {
  std::string schema;
  std::string description;
  std::string normalization;
  int genus = 0;
  CMatrix omega;
  std::vector<FixturePoint> points;
  CMatrix q, dlog_q, d2log_q;

  std::size_t size() const { return points.size(); }
};

AbelianFixture load_abelian_fixture(const std::string& path);
void validate_fixture(const AbelianFixture& fx, double tol = 1e-10);

struct GunningReport {
  std::size_t points = 0;
  double xi_skew = 0;
  double sigma_symmetry = 0;
  double tau_symmetry = 0;
  double quartic_jet = 0;
  double secant = 0;
  double identity_scale = 0;
  double xi_magnitude = 0;
  std::size_t xi_span = 0;
  std::size_t xi_bound = 0;
  double frobenius = 0;
  double negative_control = 0;
  std::size_t tuples = 0;
};

class GunningSuite {
 public:
  GunningSuite(const ThetaContext& ctx, const AbelianFixture& fx, const KummerReport& kummer);

  CVector xi(std::size_t a1, std::size_t a2, std::size_t a3);
  CVector sigma(std::size_t a1, std::size_t a2, std::size_t a3, std::size_t a4);
  CVector tau(std::size_t a1, std::size_t a2, std::size_t a3, std::size_t a4);
  // Residuals of the two four-point identities on one ordered tuple.
  std::pair<double, double> four_point(std::size_t i1, std::size_t i2, std::size_t i3, std::size_t i4);

  GunningReport run();

 private:
  const ThetaContext& ctx_;
  const AbelianFixture& fx_;
  const KummerReport& k_;
};

struct IdentityReport {
  int vanishing_order = 0;  // smallest even order with a nonzero derivative at 0, capped at 6
  double frobenius = 0;
  double three_term_sum = 0;
  bool three_term_checked = false;
};

// f is a coefficient vector over the theta_2 basis, acting by the bilinear pairing.
IdentityReport identity_checks(const ThetaContext& ctx, const AbelianFixture& fx, const CVector& f,
                               double tol = 1e-8);

}  // namespace thetalab
