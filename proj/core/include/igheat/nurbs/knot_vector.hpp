#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace igheat::nurbs {

/// Open (clamped) knot vector of a given polynomial degree.
///
/// End knots repeat degree+1 times; interior knots may repeat up to
/// degree times to lower continuity. Interior intervals are treated as
/// right-open, with the last parameter value clamped into the final
/// non-degenerate span.
class KnotVector {
public:
  KnotVector() = default;
  KnotVector(int degree, std::vector<double> knots);

  int degree() const { return degree_; }
  const std::vector<double>& knots() const { return knots_; }
  double front() const { return knots_.front(); }
  double back() const { return knots_.back(); }

  /// Number of basis functions n = #knots - degree - 1.
  int basis_count() const { return static_cast<int>(knots_.size()) - degree_ - 1; }

  /// Index i with U[i] <= u < U[i+1]; u == back() maps to the last
  /// non-degenerate span. Throws std::domain_error outside the range.
  int find_span(double u) const;

  /// The degree+1 B-spline values that are nonzero on the span of u.
  void basis_funs(int span, double u, std::span<double> out) const;

  /// Values and first derivatives of the nonzero B-splines at u.
  void basis_funs_and_derivs(int span, double u, std::span<double> values,
                             std::span<double> derivs) const;

  /// Greville abscissae (one per basis function).
  std::vector<double> greville() const;

  /// Bounds [a,b) of each non-degenerate knot span.
  std::vector<std::pair<double, double>> nonempty_spans() const;

  /// Current multiplicity of a knot value (0 if absent).
  int multiplicity(double u, double tol = 0.0) const;

  /// Knot vector with `values` inserted (each must lie strictly inside
  /// the range; resulting multiplicity must stay <= degree).
  KnotVector inserted(const std::vector<double>& values) const;

  /// New interior knots that split every non-degenerate span into
  /// `factor` equal pieces.
  std::vector<double> subdivision_knots(int factor) const;

  bool operator==(const KnotVector& other) const = default;

private:
  int degree_ = 0;
  std::vector<double> knots_;
};

}  // namespace igheat::nurbs
