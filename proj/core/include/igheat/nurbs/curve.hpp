#pragma once

#include <Eigen/Core>
#include <vector>

#include "igheat/nurbs/knot_vector.hpp"

namespace igheat::nurbs {

using Vec2 = Eigen::Vector2d;

/// Weighted control point. Coordinates are stored unweighted; homogeneous
/// form (w*x, w*y, w) is assembled where algorithms need it.
struct ControlPoint {
  double x = 0.0;
  double y = 0.0;
  double w = 1.0;

  Vec2 xy() const { return {x, y}; }
};

/// Rational B-spline curve in the plane.
class NurbsCurve {
public:
  NurbsCurve() = default;
  NurbsCurve(KnotVector kv, std::vector<ControlPoint> cps);

  const KnotVector& kv() const { return kv_; }
  const std::vector<ControlPoint>& control_points() const { return cps_; }

  Vec2 eval(double u) const;
  void eval_with_deriv(double u, Vec2& point, Vec2& tangent) const;

  /// Same curve on a knot vector enriched by `values` (geometry-preserving).
  NurbsCurve inserted(const std::vector<double>& values) const;

  /// Same geometric curve traversed in the opposite parameter direction.
  NurbsCurve reversed() const;

private:
  KnotVector kv_;
  std::vector<ControlPoint> cps_;
};

/// Straight segment a->b on the given knot vector, control points at the
/// Greville abscissae; exact for any clamped knot vector.
NurbsCurve make_line(const Vec2& a, const Vec2& b, const KnotVector& kv);

/// Piecewise-linear path through `points` with parameter breaks `breaks`
/// (breaks.front()==kv.front(), breaks.back()==kv.back()). Every interior
/// break must appear in kv with multiplicity == degree so the curve can
/// kink there.
NurbsCurve make_polyline(const std::vector<Vec2>& points, const std::vector<double>& breaks,
                         const KnotVector& kv);

/// Circular arc centred at c from angle th0 to th1 (|th1-th0| < pi), as a
/// single-span rational quadratic, then refined onto `kv` (degree 2).
NurbsCurve make_arc(const Vec2& c, double radius, double th0, double th1, const KnotVector& kv);

}  // namespace igheat::nurbs
