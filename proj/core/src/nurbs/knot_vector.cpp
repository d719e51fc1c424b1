#include "igheat/nurbs/knot_vector.hpp"

#include <algorithm>
#include <cmath>

namespace igheat::nurbs {

KnotVector::KnotVector(int degree, std::vector<double> knots)
    : degree_(degree), knots_(std::move(knots)) {
  if (degree_ < 0) throw std::invalid_argument("knot vector: negative degree");
  const int n = basis_count();
  if (n < degree_ + 1) throw std::invalid_argument("knot vector: too few knots");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (knots_[i] < knots_[i - 1])
      throw std::invalid_argument("knot vector: knots must be non-decreasing");
  }
  for (int i = 0; i <= degree_; ++i) {
    if (knots_[i] != knots_.front() || knots_[knots_.size() - 1 - i] != knots_.back())
      throw std::invalid_argument("knot vector: not clamped");
  }
}

int KnotVector::find_span(double u) const {
  const int n = basis_count();
  if (u < front() || u > back()) throw std::domain_error("find_span: u outside knot range");
  if (u >= knots_[n]) return n - 1;  // clamp into last non-degenerate span
  // binary search for U[i] <= u < U[i+1]
  int low = degree_;
  int high = n;
  int mid = (low + high) / 2;
  while (u < knots_[mid] || u >= knots_[mid + 1]) {
    if (u < knots_[mid])
      high = mid;
    else
      low = mid;
    mid = (low + high) / 2;
  }
  return mid;
}

void KnotVector::basis_funs(int span, double u, std::span<double> out) const {
  const int p = degree_;
  double left[16], right[16];
  out[0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = u - knots_[span + 1 - j];
    right[j] = knots_[span + j] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = out[r] / (right[r + 1] + left[j - r]);
      out[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    out[j] = saved;
  }
}

void KnotVector::basis_funs_and_derivs(int span, double u, std::span<double> values,
                                       std::span<double> derivs) const {
  const int p = degree_;
  // ndu[j][r]: basis functions of degree j and knot differences, as in
  // the classic two-table recurrence.
  double ndu[16][16], left[16], right[16];
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = u - knots_[span + 1 - j];
    right[j] = knots_[span + j] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }
  for (int i = 0; i <= p; ++i) values[i] = ndu[i][p];
  // first derivatives from degree p-1 functions
  for (int r = 0; r <= p; ++r) {
    double d = 0.0;
    if (r > 0) d += ndu[r - 1][p - 1] / ndu[p][r - 1];
    if (r < p) d -= ndu[r][p - 1] / ndu[p][r];
    derivs[r] = static_cast<double>(p) * d;
  }
}

std::vector<double> KnotVector::greville() const {
  const int n = basis_count();
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 1; j <= degree_; ++j) s += knots_[i + j];
    g[i] = degree_ > 0 ? s / degree_ : knots_[i];
  }
  return g;
}

std::vector<std::pair<double, double>> KnotVector::nonempty_spans() const {
  std::vector<std::pair<double, double>> spans;
  const int n = basis_count();
  for (int i = degree_; i < n; ++i) {
    if (knots_[i + 1] > knots_[i]) spans.emplace_back(knots_[i], knots_[i + 1]);
  }
  return spans;
}

int KnotVector::multiplicity(double u, double tol) const {
  int m = 0;
  for (double k : knots_)
    if (std::abs(k - u) <= tol) ++m;
  return m;
}

KnotVector KnotVector::inserted(const std::vector<double>& values) const {
  std::vector<double> merged = knots_;
  for (double v : values) {
    if (v <= front() || v >= back())
      throw std::invalid_argument("knot insertion: value outside open range");
    merged.insert(std::upper_bound(merged.begin(), merged.end(), v), v);
  }
  KnotVector out(degree_, std::move(merged));
  for (double v : values) {
    if (out.multiplicity(v) > degree_)
      throw std::invalid_argument("knot insertion: multiplicity exceeds degree");
  }
  return out;
}

std::vector<double> KnotVector::subdivision_knots(int factor) const {
  std::vector<double> extra;
  if (factor < 2) return extra;
  for (auto [a, b] : nonempty_spans()) {
    for (int k = 1; k < factor; ++k) extra.push_back(a + (b - a) * k / factor);
  }
  return extra;
}

}  // namespace igheat::nurbs
