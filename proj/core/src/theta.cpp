#include "thetalab/theta.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "thetalab/rng.hpp"

namespace thetalab {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

double unit_real(Rng& rng) { return static_cast<double>(rng.next() >> 11) * 0x1.0p-53; }

struct SumSetup {
  Eigen::VectorXd center;  // in k-space
  double envelope_log = 0; // log of exp(s pi y Y^{-1} y)
  double rho = 0;
};

SumSetup setup_sum(const ThetaContext& ctx, const CVector& z, double scale, int order, double dir_norm) {
  Eigen::VectorXd y = z.imag();
  SumSetup s;
  s.center = -(ctx.im_inv * y);
  s.envelope_log = scale * kPi * y.dot(ctx.im_inv * y);
  double cn = s.center.norm();
  double budget = std::log(ctx.epsilon) - s.envelope_log - std::log(std::max(1.0, dir_norm));
  double rho = 0.5;
  while (std::log(theta_tail_bound(ctx, scale, rho, order, cn)) > budget) {
    rho += 0.125;
    if (rho > 60) throw ThetaError("summation radius diverged");
  }
  s.rho = rho * ctx.radius_factor;
  return s;
}

// Visits n + nu for every integer n with ||T (n + nu - c)||^2 <= rho^2 / scale, in lexicographic order
// of (n_{g-1}, ..., n_0).
template <class F>
void enumerate_class(const ThetaContext& ctx, const std::vector<double>& nu, const Eigen::VectorXd& c, double scale,
                     double rho, F&& visit) {
  const int g = ctx.genus;
  const Eigen::MatrixXd& T = ctx.im_chol;
  double r2 = rho * rho / scale;
  Eigen::VectorXd k(g);
  Eigen::VectorXd shift(g);
  for (int i = 0; i < g; ++i) shift[i] = nu[static_cast<std::size_t>(i)] - c[i];
  std::vector<double> partial(static_cast<std::size_t>(g + 1), 0.0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i < 0) {
      visit(k);
      return;
    }
    double off = 0;
    for (int j = i + 1; j < g; ++j) off += T(i, j) * (k[j] - c[j]);
    double rem = r2 - partial[static_cast<std::size_t>(i + 1)];
    if (rem < 0) return;
    double centre = -(shift[i] + off / T(i, i));
    double hw = std::sqrt(rem) / T(i, i);
    long lo = static_cast<long>(std::ceil(centre - hw));
    long hi = static_cast<long>(std::floor(centre + hw));
    for (long n = lo; n <= hi; ++n) {
      k[i] = static_cast<double>(n) + nu[static_cast<std::size_t>(i)];
      double t = T(i, i) * (k[i] - c[i]) + off;
      partial[static_cast<std::size_t>(i)] = partial[static_cast<std::size_t>(i + 1)] + t * t;
      if (partial[static_cast<std::size_t>(i)] <= r2) self(self, i - 1);
    }
  };
  rec(rec, g - 1);
}

cplx term_value(const ThetaContext& ctx, const Eigen::VectorXd& k, const CVector& z, double scale) {
  CVector kc = k.cast<cplx>();
  cplx quad = kc.dot(ctx.omega * kc) * 0.5;
  cplx lin = kc.dot(z);
  return std::exp(scale * (2.0 * kPi * kI) * (quad + lin));
}

void check_omega(const CMatrix& omega) {
  if (omega.rows() != omega.cols() || omega.rows() == 0) throw ThetaError("period matrix must be square");
  double nrm = std::max(1.0, omega.cwiseAbs().maxCoeff());
  if ((omega - omega.transpose()).cwiseAbs().maxCoeff() > 1e-12 * nrm) throw ThetaError("period matrix not symmetric");
}

cplx parse_c(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw ThetaError("complex numbers must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

CVector parse_cvec(const nlohmann::json& j) {
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_c(j[i]);
  return v;
}

CMatrix parse_cmat(const nlohmann::json& j, std::size_t rows, std::size_t cols) {
  if (j.size() != rows) throw ThetaError("matrix has the wrong number of rows");
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw ThetaError("matrix has the wrong number of columns");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = parse_c(j[i][k]);
  }
  return m;
}

}  // namespace

ThetaContext make_theta_context(const CMatrix& omega, double epsilon) {
  check_omega(omega);
  if (!(epsilon > 0)) throw ThetaError("epsilon must be positive");
  ThetaContext ctx;
  ctx.genus = static_cast<int>(omega.rows());
  if (ctx.genus > 8) throw ThetaError("genus too large for dense second-order theta vectors");
  ctx.omega = (omega + omega.transpose()) * 0.5;
  ctx.epsilon = epsilon;
  Eigen::MatrixXd Y = ctx.omega.imag();
  Eigen::LLT<Eigen::MatrixXd> llt(Y);
  if (llt.info() != Eigen::Success) throw ThetaError("imaginary part of the period matrix is not positive definite");
  ctx.im_chol = llt.matrixU();
  ctx.im_inv = llt.solve(Eigen::MatrixXd::Identity(ctx.genus, ctx.genus));
  ctx.lattice_min = ctx.im_chol.diagonal().minCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Y);
  ctx.inv_norm = 1.0 / std::sqrt(es.eigenvalues().minCoeff());
  ctx.radius = setup_sum(ctx, CVector::Zero(ctx.genus), 2.0, 4, 1.0).rho;
  return ctx;
}

CMatrix random_period_matrix(int g, std::uint64_t seed) {
  if (g < 1) throw ThetaError("genus must be positive");
  Rng rng(derive_seed(seed, "period-matrix"));
  Eigen::MatrixXd re(g, g), a(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      re(i, j) = unit_real(rng) - 0.5;
      a(i, j) = unit_real(rng) - 0.5;
    }
  re = (re + re.transpose()).eval() * 0.5;
  Eigen::MatrixXd im = a * a.transpose() * 0.6 + Eigen::MatrixXd::Identity(g, g) * 0.9;
  CMatrix om(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) om(i, j) = cplx(re(i, j), im(i, j));
  return om;
}

CMatrix diagonal_period_matrix(int g, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "diagonal-period-matrix"));
  CMatrix om = CMatrix::Zero(g, g);
  for (int i = 0; i < g; ++i) om(i, i) = cplx(unit_real(rng) - 0.5, 0.9 + 0.5 * unit_real(rng));
  return om;
}

std::vector<double> theta_characteristic(int g, std::size_t index) {
  std::vector<double> nu(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i) nu[static_cast<std::size_t>(i)] = ((index >> (g - 1 - i)) & 1U) ? 0.5 : 0.0;
  return nu;
}

double theta_tail_bound(const ThetaContext& ctx, double scale, double rho, int order, double center_norm) {
  const double g = ctx.genus;
  const double r = std::sqrt(scale) * ctx.lattice_min;
  const double h = 0.05;
  double total = 0;
  for (int m = 0;; ++m) {
    double t = rho + m * h;                      // radius in units where the exponent is -pi t^2
    double count = std::pow((t + h + r / 2) / (r / 2), g);
    double k_norm = center_norm + ctx.inv_norm * (t + h) / std::sqrt(scale);
    double poly = std::pow(2.0 * scale * kPi * k_norm, order);
    double term = count * poly * std::exp(-kPi * t * t);
    total += term;
    if (m > 20 && term < 1e-30 * total) break;
    if (m > 100000) break;
  }
  return total;
}

cplx theta_char(const ThetaContext& ctx, const std::vector<double>& nu, const CVector& z) {
  if (static_cast<int>(nu.size()) != ctx.genus || z.size() != ctx.genus) throw ThetaError("dimension mismatch");
  SumSetup s = setup_sum(ctx, z, 1.0, 0, 1.0);
  cplx acc = 0;
  enumerate_class(ctx, nu, s.center, 1.0, s.rho, [&](const Eigen::VectorXd& k) { acc += term_value(ctx, k, z, 1.0); });
  return acc;
}

ThetaVector theta2(const ThetaContext& ctx, const CVector& w, int order) {
  if (order < 0 || order > 2) throw ThetaError("theta2 supports orders 0..2; use theta2_directional");
  if (w.size() != ctx.genus) throw ThetaError("dimension mismatch");
  const int g = ctx.genus;
  const std::size_t n = std::size_t{1} << g;
  ThetaVector out;
  out.w = w;
  out.values = CVector::Zero(static_cast<Eigen::Index>(n));
  if (order >= 1) out.gradient.assign(static_cast<std::size_t>(g), CVector::Zero(static_cast<Eigen::Index>(n)));
  if (order >= 2)
    out.hessian.assign(static_cast<std::size_t>(g * (g + 1) / 2), CVector::Zero(static_cast<Eigen::Index>(n)));
  SumSetup s = setup_sum(ctx, w, 2.0, order, 1.0);
  const cplx f = 4.0 * kPi * kI;
  for (std::size_t a = 0; a < n; ++a) {
    auto nu = theta_characteristic(g, a);
    const auto ai = static_cast<Eigen::Index>(a);
    enumerate_class(ctx, nu, s.center, 2.0, s.rho, [&](const Eigen::VectorXd& k) {
      cplx t = term_value(ctx, k, w, 2.0);
      out.values[ai] += t;
      ++out.terms;
      if (order >= 1)
        for (int i = 0; i < g; ++i) out.gradient[static_cast<std::size_t>(i)][ai] += t * f * k[i];
      if (order >= 2) {
        std::size_t idx = 0;
        for (int i = 0; i < g; ++i)
          for (int j = i; j < g; ++j) out.hessian[idx++][ai] += t * f * f * k[i] * k[j];
      }
    });
  }
  return out;
}

CVector theta2_directional(const ThetaContext& ctx, const CVector& w, const std::vector<CVector>& dirs) {
  if (dirs.size() > 4) throw ThetaError("at most four derivative directions");
  if (w.size() != ctx.genus) throw ThetaError("dimension mismatch");
  double dn = 1;
  for (const auto& d : dirs) {
    if (d.size() != ctx.genus) throw ThetaError("direction has the wrong dimension");
    dn *= std::max(1.0, d.norm());
  }
  const std::size_t n = std::size_t{1} << ctx.genus;
  CVector out = CVector::Zero(static_cast<Eigen::Index>(n));
  SumSetup s = setup_sum(ctx, w, 2.0, static_cast<int>(dirs.size()), dn);
  const cplx f = 4.0 * kPi * kI;
  for (std::size_t a = 0; a < n; ++a) {
    auto nu = theta_characteristic(ctx.genus, a);
    cplx acc = 0;
    enumerate_class(ctx, nu, s.center, 2.0, s.rho, [&](const Eigen::VectorXd& k) {
      cplx t = term_value(ctx, k, w, 2.0);
      for (const auto& d : dirs) t *= f * (d.transpose() * k.cast<cplx>())(0);
      acc += t;
    });
    out[static_cast<Eigen::Index>(a)] = acc;
  }
  return out;
}

cplx lattice_multiplier(const ThetaContext& ctx, const Eigen::VectorXd& m, const CVector& w) {
  CVector mc = m.cast<cplx>();
  cplx quad = (mc.transpose() * ctx.omega * mc)(0);
  cplx lin = (mc.transpose() * w)(0);
  return std::exp(-2.0 * kPi * kI * (quad + 2.0 * lin));
}

KummerReport kummer_tangent_report(const ThetaContext& ctx, double threshold) {
  const int g = ctx.genus;
  ThetaVector tv = theta2(ctx, CVector::Zero(g), 2);
  const auto n = tv.values.size();
  const auto cols = static_cast<Eigen::Index>(1 + tv.hessian.size());
  CMatrix M(n, cols);
  M.col(0) = tv.values;
  for (std::size_t i = 0; i < tv.hessian.size(); ++i) M.col(static_cast<Eigen::Index>(i + 1)) = tv.hessian[i];

  Eigen::JacobiSVD<CMatrix> svd(M, Eigen::ComputeFullU);
  const Eigen::VectorXd& sv = svd.singularValues();
  KummerReport r;
  r.genus = g;
  r.ambient = static_cast<std::size_t>(n);
  r.threshold = threshold;
  double top = sv.size() ? sv[0] : 0.0;
  if (!(top > 0)) throw ThetaError("second-order theta data vanish at the origin");
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    double rel = sv[i] / top;
    r.singular_values.push_back(rel);
    if (rel > threshold) ++rank;
    if (rel > threshold / 1e3 && rel < threshold * 1e3) r.indeterminate = true;
  }
  r.tangent_dim = rank;
  r.gamma00_dim = static_cast<std::size_t>(n) - rank;
  double floor = static_cast<double>(std::max(n, cols)) * std::numeric_limits<double>::epsilon();
  double below = rank < r.singular_values.size() ? std::max(r.singular_values[rank], floor) : floor;
  r.gap_ratio = rank ? r.singular_values[rank - 1] / below : 0.0;
  const CMatrix& U = svd.matrixU();
  r.tangent_basis = U.leftCols(static_cast<Eigen::Index>(rank));
  r.gamma00_basis = U.rightCols(static_cast<Eigen::Index>(r.gamma00_dim)).conjugate();
  return r;
}

CVector project_mod_tangent(const KummerReport& k, const CVector& v) {
  return v - k.tangent_basis * (k.tangent_basis.adjoint() * v);
}

AbelianFixture load_abelian_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ThetaError("cannot open fixture " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ThetaError(std::string("fixture is not valid JSON: ") + e.what());
  }
  try {
    AbelianFixture fx;
    fx.schema = j.at("schema").get<std::string>();
    if (fx.schema != "thetalab.abelian-fixture/1") throw ThetaError("unsupported fixture schema " + fx.schema);
    fx.genus = j.at("genus").get<int>();
    fx.description = j.value("curve", "");
    fx.normalization = j.value("normalization", "");
    const auto g = static_cast<std::size_t>(fx.genus);
    fx.omega = parse_cmat(j.at("omega"), g, g);
    for (const auto& p : j.at("points")) {
      FixturePoint fp;
      fp.x = p.contains("x") ? parse_c(p["x"]) : cplx{};
      fp.w = parse_cvec(p.at("w"));
      fp.w_prime = parse_cvec(p.at("w_prime"));
      if (fp.w.size() != fx.genus || fp.w_prime.size() != fx.genus) throw ThetaError("point data has the wrong dimension");
      fx.points.push_back(fp);
    }
    const std::size_t np = fx.points.size();
    fx.q = parse_cmat(j.at("q"), np, np);
    fx.dlog_q = parse_cmat(j.at("dlog_q"), np, np);
    fx.d2log_q = parse_cmat(j.at("d2log_q"), np, np);
    return fx;
  } catch (const nlohmann::json::exception& e) {
    throw ThetaError(std::string("missing pairwise data: ") + e.what());
  }
}

void validate_fixture(const AbelianFixture& fx, double tol) {
  check_omega(fx.omega);
  const std::size_t n = fx.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
      if (std::abs(fx.q(a, b) + fx.q(b, a)) > tol * std::max(1.0, std::abs(fx.q(a, b))))
        throw ThetaError("prime-form table is not antisymmetric");
      if (std::abs(fx.q(a, b)) < 1e-10 || (fx.points[i].w - fx.points[j].w).norm() < 1e-10)
        throw ThetaError("coincident fixture points");
    }
}

GunningSuite::GunningSuite(const ThetaContext& ctx, const AbelianFixture& fx, const KummerReport& kummer)
    : ctx_(ctx), fx_(fx), k_(kummer) {
  if (fx.genus != ctx.genus) throw ThetaError("fixture genus does not match the period matrix");
  validate_fixture(fx);
}

CVector GunningSuite::xi(std::size_t a1, std::size_t a2, std::size_t a3) {
  const auto& p = fx_.points;
  cplx q = fx_.q(static_cast<Eigen::Index>(a2), static_cast<Eigen::Index>(a3));
  return project_mod_tangent(k_, theta2_directional(ctx_, p[a2].w - p[a3].w, {p[a1].w_prime})) / (q * q);
}

CVector GunningSuite::sigma(std::size_t a1, std::size_t a2, std::size_t a3, std::size_t a4) {
  auto i = [](std::size_t v) { return static_cast<Eigen::Index>(v); };
  cplx coef = fx_.dlog_q(i(a1), i(a2)) - fx_.dlog_q(i(a1), i(a3));
  return coef * xi(a2, a3, a4);
}

CVector GunningSuite::tau(std::size_t a1, std::size_t a2, std::size_t a3, std::size_t a4) {
  const auto& p = fx_.points;
  cplx q = fx_.q(static_cast<Eigen::Index>(a3), static_cast<Eigen::Index>(a4));
  return project_mod_tangent(k_, theta2_directional(ctx_, p[a3].w - p[a4].w, {p[a1].w_prime, p[a2].w_prime})) /
         (q * q);
}

std::pair<double, double> GunningSuite::four_point(std::size_t i1, std::size_t i2, std::size_t i3, std::size_t i4) {
  const auto& p = fx_.points;
  auto q = [&](std::size_t a, std::size_t b) { return fx_.q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)); };
  CVector d4 = project_mod_tangent(
      k_, theta2_directional(ctx_, CVector::Zero(ctx_.genus), {p[i1].w_prime, p[i2].w_prime, p[i3].w_prime, p[i4].w_prime}));
  CVector lhs1 = 0.5 * d4;
  CVector rhs1 = tau(i1, i2, i3, i4) + tau(i1, i3, i2, i4) + tau(i2, i3, i1, i4) - 2.0 * sigma(i1, i2, i3, i4) -
                 2.0 * sigma(i2, i1, i3, i4) - 2.0 * sigma(i3, i1, i2, i4);
  CVector lhs2 = 0.5 * tau(i1, i3, i2, i4) + 0.5 * tau(i1, i4, i2, i3);
  cplx ratio = q(i1, i2) * q(i3, i4) / (q(i1, i3) * q(i1, i4) * q(i2, i3) * q(i2, i4));
  CVector th = project_mod_tangent(k_, theta2(ctx_, p[i1].w + p[i2].w - p[i3].w - p[i4].w).values);
  CVector rhs2 = ratio * ratio * th + sigma(i1, i3, i4, i2) - sigma(i3, i2, i4, i1) - sigma(i4, i2, i3, i1);
  return {(lhs1 - rhs1).cwiseAbs().maxCoeff(), (lhs2 - rhs2).cwiseAbs().maxCoeff()};
}

GunningReport GunningSuite::run() {
  const std::size_t n = fx_.size();
  if (n < 4) throw ThetaError("fixture lacks four points");
  GunningReport r;
  r.points = n;
  r.xi_bound = static_cast<std::size_t>(ctx_.genus * (ctx_.genus - 1) * (ctx_.genus - 2) / 6);
  const auto& p = fx_.points;

  std::vector<CVector> xis;
  double raw_scale = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (b == c) continue;
        CVector x = xi(a, b, c);
        cplx q = fx_.q(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(c));
        raw_scale = std::max(raw_scale, (theta2_directional(ctx_, p[b].w - p[c].w, {p[a].w_prime}) / (q * q)).cwiseAbs().maxCoeff());
        r.xi_magnitude = std::max(r.xi_magnitude, x.cwiseAbs().maxCoeff());
        if (a == b || a == c) {
          r.xi_skew = std::max(r.xi_skew, x.cwiseAbs().maxCoeff());
          continue;
        }
        r.xi_skew = std::max(r.xi_skew, (x + xi(b, a, c)).cwiseAbs().maxCoeff());
        r.xi_skew = std::max(r.xi_skew, (x + xi(a, c, b)).cwiseAbs().maxCoeff());
        if (a < b && b < c) xis.push_back(x);
      }
  if (!xis.empty()) {
    CMatrix X(xis.front().size(), static_cast<Eigen::Index>(xis.size()));
    for (std::size_t i = 0; i < xis.size(); ++i) X.col(static_cast<Eigen::Index>(i)) = xis[i];
    Eigen::JacobiSVD<CMatrix> svd(X);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > 1e-8 * std::max(raw_scale, 1e-300)) ++r.xi_span;
  }

  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = 0; i2 < n; ++i2)
      for (std::size_t i3 = 0; i3 < n; ++i3)
        for (std::size_t i4 = 0; i4 < n; ++i4) {
          if (i1 == i2 || i1 == i3 || i1 == i4 || i2 == i3 || i2 == i4 || i3 == i4) continue;
          ++r.tuples;
          auto [e1, e2] = four_point(i1, i2, i3, i4);
          r.quartic_jet = std::max(r.quartic_jet, e1);
          r.secant = std::max(r.secant, e2);
          CVector t = tau(i1, i2, i3, i4);
          r.identity_scale = std::max(r.identity_scale, t.cwiseAbs().maxCoeff());
          r.tau_symmetry = std::max(r.tau_symmetry, (t - tau(i2, i1, i3, i4)).cwiseAbs().maxCoeff());
          r.tau_symmetry = std::max(r.tau_symmetry, (t - tau(i1, i2, i4, i3)).cwiseAbs().maxCoeff());
          r.sigma_symmetry =
              std::max(r.sigma_symmetry, (sigma(i1, i2, i3, i4) - sigma(i1, i3, i2, i4)).cwiseAbs().maxCoeff());
        }

  double neg = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      CVector v = theta2(ctx_, p[a].w - p[b].w).values;
      for (Eigen::Index c = 0; c < k_.gamma00_basis.cols(); ++c)
        r.frobenius = std::max(r.frobenius, std::abs((k_.gamma00_basis.col(c).transpose() * v)(0)));
      neg = std::max(neg, std::abs(v[0]));
    }
  r.negative_control = neg;
  return r;
}

IdentityReport identity_checks(const ThetaContext& ctx, const AbelianFixture& fx, const CVector& f, double tol) {
  const int g = ctx.genus;
  if (f.size() != (Eigen::Index{1} << g)) throw ThetaError("coefficient vector has the wrong length");
  if (fx.genus != g) throw ThetaError("fixture genus does not match the period matrix");
  IdentityReport r;
  const CVector zero = CVector::Zero(g);
  const double fn = std::max(f.norm(), 1e-300);
  auto pair = [&](const CVector& v) { return std::abs((f.transpose() * v)(0)) / (fn * std::max(v.norm(), 1e-300)); };

  ThetaVector tv = theta2(ctx, zero, 2);
  r.vanishing_order = 0;
  if (pair(tv.values) < tol) {
    r.vanishing_order = 2;
    bool hess_zero = std::all_of(tv.hessian.begin(), tv.hessian.end(), [&](const CVector& v) { return pair(v) < tol; });
    if (hess_zero) {
      r.vanishing_order = 4;
      bool quartic_zero = true;
      for (int a = 0; a < g && quartic_zero; ++a)
        for (int b = a; b < g && quartic_zero; ++b)
          for (int c = b; c < g && quartic_zero; ++c)
            for (int d = c; d < g && quartic_zero; ++d) {
              std::vector<CVector> dirs{CVector::Unit(g, a), CVector::Unit(g, b), CVector::Unit(g, c), CVector::Unit(g, d)};
              if (pair(theta2_directional(ctx, zero, dirs)) >= tol) quartic_zero = false;
            }
      if (quartic_zero) r.vanishing_order = 6;
    }
  }
  auto fval = [&](const CVector& w) { return (f.transpose() * theta2(ctx, w).values)(0); };
  const auto& p = fx.points;
  const std::size_t n = fx.size();
  if (r.vanishing_order >= 4)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b) r.frobenius = std::max(r.frobenius, std::abs(fval(p[a].w - p[b].w)));
  if (r.vanishing_order >= 6) {
    if (n < 4) throw ThetaError("fixture lacks four points");
    r.three_term_checked = true;
    auto q = [&](std::size_t a, std::size_t b) { return fx.q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)); };
    for (std::size_t i1 = 0; i1 < n; ++i1)
      for (std::size_t i2 = 0; i2 < n; ++i2)
        for (std::size_t i3 = 0; i3 < n; ++i3)
          for (std::size_t i4 = 0; i4 < n; ++i4) {
            if (i1 == i2 || i1 == i3 || i1 == i4 || i2 == i3 || i2 == i4 || i3 == i4) continue;
            cplx s = std::pow(q(i1, i2) * q(i3, i4), 4) * fval(p[i1].w + p[i2].w - p[i3].w - p[i4].w) +
                     std::pow(q(i1, i4) * q(i2, i3), 4) * fval(p[i1].w + p[i4].w - p[i2].w - p[i3].w) +
                     std::pow(q(i1, i3) * q(i2, i4), 4) * fval(p[i1].w + p[i3].w - p[i2].w - p[i4].w);
            r.three_term_sum = std::max(r.three_term_sum, std::abs(s));
          }
  }
  return r;
}

}  // namespace thetalab
