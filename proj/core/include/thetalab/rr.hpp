#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "thetalab/curve.hpp"

namespace thetalab {

// Effective divisor supported on smooth points.
struct Divisor {
  std::vector<std::pair<CurvePoint, int>> terms;

  static Divisor point(const CurvePoint& p, int m = 1);
  static Divisor of(const std::vector<CurvePoint>& pts);
  Divisor operator+(const Divisor& o) const;
  int degree() const;
  int multiplicity(const CurvePoint& p) const;
  bool empty() const { return terms.empty(); }
  std::string to_string() const;
};

struct AuxLine {
  Poly form;
  CurvePoint base;
  int base_order = 1;
  PlanePoint direction;
  UPoly residual;
};

// Sections of K + plus - minus, each written as h / G with h an adjoint form of degree d - 3 + deg G.
struct LinearSeries {
  Divisor plus, minus;
  std::vector<AuxLine> lines;
  Poly denominator;
  int form_degree = 0;
  std::vector<Poly> basis;
  long riemann_roch = -1;

  std::size_t dim() const { return basis.size(); }
  Poly combine(const Vector& coeffs) const;
};

LinearSeries rr_space(const CurveModel& model, const Divisor& plus, const Divisor& minus, std::uint64_t seed = 0);
LinearSeries canonical_series(const CurveModel& model);

// Fiber jet at p: entry k holds the coefficient of t^(shift+k) of every basis element,
// where shift = minus(p) + ord_p(G) - plus(p).
std::vector<Vector> fiber_jet(const CurveModel& model, const LinearSeries& s, const CurvePoint& p, int terms);
Vector fiber_value(const CurveModel& model, const LinearSeries& s, const CurvePoint& p);

// Coordinates of the section h/g in the basis of s, if it lies in the span.
std::optional<Vector> section_coordinates(const CurveModel& model, const LinearSeries& s, const Poly& h,
                                          const Poly& g);
bool sections_equal(const CurveModel& model, const Poly& h1, const Poly& g1, const Poly& h2, const Poly& g2);

}  // namespace thetalab

namespace thetalab {

// Smooth affine points (z = 1) of the curve where the plane form h vanishes, scanning x over F_p.
std::vector<CurvePoint> common_zeros(const CurveModel& model, const Poly& h, std::size_t max_points);

}  // namespace thetalab
