#include "igheat/nurbs/curve.hpp"

#include <algorithm>
#include <cmath>

namespace igheat::nurbs {
namespace {

using Vec3 = Eigen::Vector3d;

Vec3 homogeneous(const ControlPoint& p) { return {p.w * p.x, p.w * p.y, p.w}; }

ControlPoint from_homogeneous(const Vec3& h) {
  return ControlPoint{h.x() / h.z(), h.y() / h.z(), h.z()};
}

// Boehm single-knot insertion on homogeneous control points.
std::vector<Vec3> insert_one(const KnotVector& kv, const std::vector<Vec3>& pw, double u,
                             KnotVector& kv_out) {
  const int p = kv.degree();
  const auto& U = kv.knots();
  const int span = kv.find_span(u);
  std::vector<Vec3> out(pw.size() + 1);
  for (int i = 0; i <= span - p; ++i) out[i] = pw[i];
  for (std::size_t i = span; i < pw.size(); ++i) out[i + 1] = pw[i];
  for (int i = span - p + 1; i <= span; ++i) {
    const double denom = U[i + p] - U[i];
    const double alpha = denom > 0.0 ? (u - U[i]) / denom : 0.0;
    out[i] = alpha * pw[i] + (1.0 - alpha) * pw[i - 1];
  }
  std::vector<double> knots = U;
  knots.insert(std::upper_bound(knots.begin(), knots.end(), u), u);
  kv_out = KnotVector(p, std::move(knots));
  return out;
}

}  // namespace

NurbsCurve::NurbsCurve(KnotVector kv, std::vector<ControlPoint> cps)
    : kv_(std::move(kv)), cps_(std::move(cps)) {
  if (static_cast<int>(cps_.size()) != kv_.basis_count())
    throw std::invalid_argument("curve: control point count does not match knot vector");
  for (const auto& cp : cps_)
    if (!(cp.w > 0.0)) throw std::invalid_argument("curve: weights must be positive");
}

Vec2 NurbsCurve::eval(double u) const {
  const int p = kv_.degree();
  const int span = kv_.find_span(u);
  double N[16];
  kv_.basis_funs(span, u, {N, static_cast<std::size_t>(p + 1)});
  Vec3 acc = Vec3::Zero();
  for (int k = 0; k <= p; ++k) acc += N[k] * homogeneous(cps_[span - p + k]);
  return {acc.x() / acc.z(), acc.y() / acc.z()};
}

void NurbsCurve::eval_with_deriv(double u, Vec2& point, Vec2& tangent) const {
  const int p = kv_.degree();
  const int span = kv_.find_span(u);
  double N[16], dN[16];
  kv_.basis_funs_and_derivs(span, u, {N, static_cast<std::size_t>(p + 1)},
                            {dN, static_cast<std::size_t>(p + 1)});
  Vec3 a = Vec3::Zero(), da = Vec3::Zero();
  for (int k = 0; k <= p; ++k) {
    const Vec3 h = homogeneous(cps_[span - p + k]);
    a += N[k] * h;
    da += dN[k] * h;
  }
  const double w = a.z(), dw = da.z();
  point = {a.x() / w, a.y() / w};
  tangent = {(da.x() * w - a.x() * dw) / (w * w), (da.y() * w - a.y() * dw) / (w * w)};
}

NurbsCurve NurbsCurve::inserted(const std::vector<double>& values) const {
  std::vector<Vec3> pw(cps_.size());
  std::transform(cps_.begin(), cps_.end(), pw.begin(), homogeneous);
  KnotVector kv = kv_;
  for (double u : values) {
    if (kv.multiplicity(u) + 1 > kv.degree())
      throw std::invalid_argument("curve insertion: multiplicity would exceed degree");
    KnotVector next;
    pw = insert_one(kv, pw, u, next);
    kv = next;
  }
  std::vector<ControlPoint> cps(pw.size());
  std::transform(pw.begin(), pw.end(), cps.begin(), from_homogeneous);
  return NurbsCurve(kv, std::move(cps));
}

NurbsCurve NurbsCurve::reversed() const {
  const auto& U = kv_.knots();
  const double a = U.front(), b = U.back();
  std::vector<double> rk(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) rk[i] = a + b - U[U.size() - 1 - i];
  std::vector<ControlPoint> rc(cps_.rbegin(), cps_.rend());
  return NurbsCurve(KnotVector(kv_.degree(), std::move(rk)), std::move(rc));
}

NurbsCurve make_line(const Vec2& a, const Vec2& b, const KnotVector& kv) {
  const auto g = kv.greville();
  const double u0 = kv.front(), u1 = kv.back();
  std::vector<ControlPoint> cps(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = (g[i] - u0) / (u1 - u0);
    const Vec2 p = (1.0 - t) * a + t * b;
    cps[i] = ControlPoint{p.x(), p.y(), 1.0};
  }
  return NurbsCurve(kv, std::move(cps));
}

NurbsCurve make_polyline(const std::vector<Vec2>& points, const std::vector<double>& breaks,
                         const KnotVector& kv) {
  if (points.size() != breaks.size() || points.size() < 2)
    throw std::invalid_argument("polyline: points/breaks mismatch");
  for (std::size_t k = 1; k + 1 < breaks.size(); ++k) {
    if (kv.multiplicity(breaks[k]) < kv.degree())
      throw std::invalid_argument("polyline: interior break must be a degree-multiplicity knot");
  }
  auto at = [&](double t) -> Vec2 {
    auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
    std::size_t seg = std::min<std::size_t>(
        breaks.size() - 2, static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                               0, std::distance(breaks.begin(), it) - 1)));
    const double s = (t - breaks[seg]) / (breaks[seg + 1] - breaks[seg]);
    return (1.0 - s) * points[seg] + s * points[seg + 1];
  };
  const auto g = kv.greville();
  std::vector<ControlPoint> cps(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec2 p = at(g[i]);
    cps[i] = ControlPoint{p.x(), p.y(), 1.0};
  }
  return NurbsCurve(kv, std::move(cps));
}

NurbsCurve make_arc(const Vec2& c, double radius, double th0, double th1, const KnotVector& kv) {
  if (kv.degree() != 2) throw std::invalid_argument("arc: knot vector must be quadratic");
  const double sweep = th1 - th0;
  if (std::abs(sweep) >= M_PI)
    throw std::invalid_argument("arc: sweep must be below pi for a single rational segment");
  const double half = 0.5 * sweep;
  const double mid = 0.5 * (th0 + th1);
  const double wm = std::cos(half);
  // Middle control point at the tangent intersection.
  const Vec2 p0 = c + radius * Vec2{std::cos(th0), std::sin(th0)};
  const Vec2 p2 = c + radius * Vec2{std::cos(th1), std::sin(th1)};
  const Vec2 pm = c + (radius / wm) * Vec2{std::cos(mid), std::sin(mid)};
  const double u0 = kv.front(), u1 = kv.back();
  NurbsCurve bezier(KnotVector(2, {u0, u0, u0, u1, u1, u1}),
                    {ControlPoint{p0.x(), p0.y(), 1.0}, ControlPoint{pm.x(), pm.y(), wm},
                     ControlPoint{p2.x(), p2.y(), 1.0}});
  // Refine onto the requested knot vector.
  std::vector<double> extra;
  const auto& target = kv.knots();
  KnotVector have = bezier.kv();
  std::vector<double> working = have.knots();
  for (double t : target) {
    auto in_working = std::find(working.begin(), working.end(), t);
    if (in_working != working.end())
      working.erase(in_working);
    else
      extra.push_back(t);
  }
  return extra.empty() ? bezier : bezier.inserted(extra);
}

}  // namespace igheat::nurbs
