#pragma once

#include <Eigen/Core>
#include <vector>

#include "igheat/nurbs/curve.hpp"
#include "igheat/nurbs/knot_vector.hpp"

namespace igheat::nurbs {

using Mat2 = Eigen::Matrix2d;

enum class Edge { UMin, UMax, VMin, VMax };

/// Result of evaluating the rational tensor-product basis at one point:
/// the (p+1)(q+1) active functions, their parametric derivatives, and the
/// flat control-net indices they belong to.
struct Basis2D {
  std::vector<double> value;
  std::vector<double> d_u;
  std::vector<double> d_v;
  std::vector<int> index;  // j * nu + i
};

struct GeometryEval {
  Vec2 point;
  Mat2 jacobian;  // d(x,y)/d(u,v)
  double det = 0.0;
};

/// Tensor-product NURBS surface patch in the plane. Control net is stored
/// flat, u-fastest: net[j * nu + i].
class NurbsPatch {
public:
  NurbsPatch() = default;
  NurbsPatch(KnotVector kv_u, KnotVector kv_v, std::vector<ControlPoint> net);

  const KnotVector& kv_u() const { return kv_u_; }
  const KnotVector& kv_v() const { return kv_v_; }
  int nu() const { return kv_u_.basis_count(); }
  int nv() const { return kv_v_.basis_count(); }
  int control_count() const { return nu() * nv(); }
  const std::vector<ControlPoint>& net() const { return net_; }
  const ControlPoint& at(int i, int j) const { return net_[j * nu() + i]; }

  Basis2D basis(double u, double v) const;
  GeometryEval geometry(double u, double v) const;
  Vec2 point(double u, double v) const { return geometry(u, v).point; }

  /// Geometry-preserving h-refinement.
  NurbsPatch inserted(const std::vector<double>& new_u, const std::vector<double>& new_v) const;
  NurbsPatch subdivided(int factor) const;

  /// Gauss-quadrature approximation of the patch area (integral of |detJ|),
  /// `order` points per direction per knot span.
  double area(int order = 4) const;

  /// Minimum signed Jacobian determinant over a grid_n x grid_n sample per
  /// knot span plus the Greville tensor points.
  double min_detj_sample(int grid_n = 5) const;

  /// Boundary curve along one edge; parameterized by the free direction's
  /// knot vector.
  NurbsCurve edge_curve(Edge e) const;

  /// Map an edge parameter to the (u,v) pair on this patch.
  std::pair<double, double> edge_param(Edge e, double t) const;

  /// Outward unit normal in parameter space for an edge.
  static Vec2 reference_normal(Edge e);

private:
  KnotVector kv_u_, kv_v_;
  std::vector<ControlPoint> net_;
};

}  // namespace igheat::nurbs
