#include "igheat/nurbs/patch.hpp"

#include <algorithm>
#include <cmath>

#include "igheat/nurbs/quadrature.hpp"

namespace igheat::nurbs {

NurbsPatch::NurbsPatch(KnotVector kv_u, KnotVector kv_v, std::vector<ControlPoint> net)
    : kv_u_(std::move(kv_u)), kv_v_(std::move(kv_v)), net_(std::move(net)) {
  if (static_cast<int>(net_.size()) != nu() * nv())
    throw std::invalid_argument("patch: control net does not match knot vectors");
  for (const auto& cp : net_)
    if (!(cp.w > 0.0)) throw std::invalid_argument("patch: weights must be positive");
}

Basis2D NurbsPatch::basis(double u, double v) const {
  const int p = kv_u_.degree(), q = kv_v_.degree();
  const int su = kv_u_.find_span(u), sv = kv_v_.find_span(v);
  double Nu[16], dNu[16], Nv[16], dNv[16];
  kv_u_.basis_funs_and_derivs(su, u, {Nu, static_cast<std::size_t>(p + 1)},
                              {dNu, static_cast<std::size_t>(p + 1)});
  kv_v_.basis_funs_and_derivs(sv, v, {Nv, static_cast<std::size_t>(q + 1)},
                              {dNv, static_cast<std::size_t>(q + 1)});

  const int count = (p + 1) * (q + 1);
  Basis2D out;
  out.value.resize(count);
  out.d_u.resize(count);
  out.d_v.resize(count);
  out.index.resize(count);

  // Weighted sums W, dW/du, dW/dv over the active net entries.
  double W = 0.0, Wu = 0.0, Wv = 0.0;
  int k = 0;
  for (int jj = 0; jj <= q; ++jj) {
    for (int ii = 0; ii <= p; ++ii, ++k) {
      const int i = su - p + ii, j = sv - q + jj;
      const double w = at(i, j).w;
      const double b = Nu[ii] * Nv[jj] * w;
      out.value[k] = b;
      out.d_u[k] = dNu[ii] * Nv[jj] * w;
      out.d_v[k] = Nu[ii] * dNv[jj] * w;
      out.index[k] = j * nu() + i;
      W += b;
      Wu += out.d_u[k];
      Wv += out.d_v[k];
    }
  }
  const double invW = 1.0 / W;
  for (k = 0; k < count; ++k) {
    const double R = out.value[k] * invW;
    out.d_u[k] = (out.d_u[k] - R * Wu) * invW;
    out.d_v[k] = (out.d_v[k] - R * Wv) * invW;
    out.value[k] = R;
  }
  return out;
}

GeometryEval NurbsPatch::geometry(double u, double v) const {
  const Basis2D b = basis(u, v);
  GeometryEval g;
  g.point.setZero();
  g.jacobian.setZero();
  for (std::size_t k = 0; k < b.value.size(); ++k) {
    const Vec2 P = net_[b.index[k]].xy();
    g.point += b.value[k] * P;
    g.jacobian.col(0) += b.d_u[k] * P;
    g.jacobian.col(1) += b.d_v[k] * P;
  }
  g.det = g.jacobian(0, 0) * g.jacobian(1, 1) - g.jacobian(0, 1) * g.jacobian(1, 0);
  return g;
}

NurbsPatch NurbsPatch::inserted(const std::vector<double>& new_u,
                                const std::vector<double>& new_v) const {
  // u-direction: insert into every row curve, then transpose logic for v.
  NurbsPatch result = *this;
  if (!new_u.empty()) {
    const int rows = result.nv();
    std::vector<ControlPoint> net_out;
    KnotVector kv_out;
    for (int j = 0; j < rows; ++j) {
      std::vector<ControlPoint> row(result.net_.begin() + j * result.nu(),
                                    result.net_.begin() + (j + 1) * result.nu());
      NurbsCurve c(result.kv_u_, std::move(row));
      NurbsCurve r = c.inserted(new_u);
      kv_out = r.kv();
      net_out.insert(net_out.end(), r.control_points().begin(), r.control_points().end());
    }
    result = NurbsPatch(kv_out, result.kv_v_, std::move(net_out));
  }
  if (!new_v.empty()) {
    const int cols = result.nu();
    const int old_nv = result.nv();
    std::vector<ControlPoint> net_out;
    KnotVector kv_out;
    std::vector<std::vector<ControlPoint>> new_cols(cols);
    for (int i = 0; i < cols; ++i) {
      std::vector<ControlPoint> col(old_nv);
      for (int j = 0; j < old_nv; ++j) col[j] = result.at(i, j);
      NurbsCurve c(result.kv_v_, std::move(col));
      NurbsCurve r = c.inserted(new_v);
      kv_out = r.kv();
      new_cols[i] = r.control_points();
    }
    const int new_nv = kv_out.basis_count();
    net_out.resize(static_cast<std::size_t>(cols) * new_nv);
    for (int j = 0; j < new_nv; ++j)
      for (int i = 0; i < cols; ++i) net_out[j * cols + i] = new_cols[i][j];
    result = NurbsPatch(result.kv_u_, kv_out, std::move(net_out));
  }
  return result;
}

NurbsPatch NurbsPatch::subdivided(int factor) const {
  return inserted(kv_u_.subdivision_knots(factor), kv_v_.subdivision_knots(factor));
}

double NurbsPatch::area(int order) const {
  const auto& rule = gauss_rule(order);
  double total = 0.0;
  for (auto [ua, ub] : kv_u_.nonempty_spans()) {
    for (auto [va, vb] : kv_v_.nonempty_spans()) {
      for (int a = 0; a < order; ++a) {
        const double u = 0.5 * (ua + ub) + 0.5 * (ub - ua) * rule.node[a];
        for (int b = 0; b < order; ++b) {
          const double v = 0.5 * (va + vb) + 0.5 * (vb - va) * rule.node[b];
          const double detj = geometry(u, v).det;
          total += 0.25 * (ub - ua) * (vb - va) * rule.weight[a] * rule.weight[b] *
                   std::abs(detj);
        }
      }
    }
  }
  return total;
}

double NurbsPatch::min_detj_sample(int grid_n) const {
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](double u, double v) { best = std::min(best, geometry(u, v).det); };
  for (auto [ua, ub] : kv_u_.nonempty_spans()) {
    for (auto [va, vb] : kv_v_.nonempty_spans()) {
      for (int a = 0; a < grid_n; ++a) {
        const double u = ua + (ub - ua) * a / (grid_n - 1);
        for (int b = 0; b < grid_n; ++b) consider(u, va + (vb - va) * b / (grid_n - 1));
      }
    }
  }
  for (double gu : kv_u_.greville())
    for (double gv : kv_v_.greville()) consider(gu, gv);
  return best;
}

NurbsCurve NurbsPatch::edge_curve(Edge e) const {
  std::vector<ControlPoint> cps;
  switch (e) {
    case Edge::UMin:
      for (int j = 0; j < nv(); ++j) cps.push_back(at(0, j));
      return NurbsCurve(kv_v_, std::move(cps));
    case Edge::UMax:
      for (int j = 0; j < nv(); ++j) cps.push_back(at(nu() - 1, j));
      return NurbsCurve(kv_v_, std::move(cps));
    case Edge::VMin:
      for (int i = 0; i < nu(); ++i) cps.push_back(at(i, 0));
      return NurbsCurve(kv_u_, std::move(cps));
    case Edge::VMax:
      for (int i = 0; i < nu(); ++i) cps.push_back(at(i, nv() - 1));
      return NurbsCurve(kv_u_, std::move(cps));
  }
  throw std::logic_error("edge_curve: bad edge");
}

std::pair<double, double> NurbsPatch::edge_param(Edge e, double t) const {
  switch (e) {
    case Edge::UMin: return {kv_u_.front(), t};
    case Edge::UMax: return {kv_u_.back(), t};
    case Edge::VMin: return {t, kv_v_.front()};
    case Edge::VMax: return {t, kv_v_.back()};
  }
  throw std::logic_error("edge_param: bad edge");
}

Vec2 NurbsPatch::reference_normal(Edge e) {
  switch (e) {
    case Edge::UMin: return {-1.0, 0.0};
    case Edge::UMax: return {1.0, 0.0};
    case Edge::VMin: return {0.0, -1.0};
    case Edge::VMax: return {0.0, 1.0};
  }
  throw std::logic_error("reference_normal: bad edge");
}

}  // namespace igheat::nurbs
