#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "igheat/nurbs/curve.hpp"
#include "igheat/nurbs/patch.hpp"
#include "igheat/nurbs/quadrature.hpp"

using namespace igheat::nurbs;

namespace {

// Independent oracle: rational de Casteljau for a single quadratic Bezier
// segment in homogeneous coordinates. Used to cross-check the basis-function
// evaluation path.
Vec2 rational_bezier_point(const ControlPoint& a, const ControlPoint& b, const ControlPoint& c,
                           double t) {
  auto h = [](const ControlPoint& p) {
    return Eigen::Vector3d{p.w * p.x, p.w * p.y, p.w};
  };
  Eigen::Vector3d q0 = (1 - t) * h(a) + t * h(b);
  Eigen::Vector3d q1 = (1 - t) * h(b) + t * h(c);
  Eigen::Vector3d q = (1 - t) * q0 + t * q1;
  return {q.x() / q.z(), q.y() / q.z()};
}

NurbsPatch quarter_annulus(double r0, double r1) {
  // u: radial outward (linear), v: angular 0..pi/2 counterclockwise
  // (rational quadratic); this ordering keeps detJ positive.
  const double w = std::cos(M_PI / 4.0);
  KnotVector kur(1, {0, 0, 1, 1});
  KnotVector kva(2, {0, 0, 0, 1, 1, 1});
  std::vector<ControlPoint> net = {
      {r0, 0, 1}, {r1, 0, 1},
      {r0, r0, w}, {r1, r1, w},
      {0, r0, 1}, {0, r1, 1},
  };
  return NurbsPatch(kur, kva, net);
}

NurbsPatch unit_square() {
  KnotVector k(1, {0, 0, 1, 1});
  std::vector<ControlPoint> net = {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  return NurbsPatch(k, k, net);
}

NurbsPatch random_rational_patch(std::mt19937& rng) {
  std::uniform_real_distribution<double> jitter(-0.15, 0.15);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  KnotVector ku(2, {0, 0, 0, 0.4, 1, 1, 1});
  KnotVector kv(2, {0, 0, 0, 0.5, 0.75, 1, 1, 1});
  std::vector<ControlPoint> net;
  for (int j = 0; j < kv.basis_count(); ++j)
    for (int i = 0; i < ku.basis_count(); ++i)
      net.push_back({i + jitter(rng), j + jitter(rng), weight(rng)});
  return NurbsPatch(ku, kv, net);
}

}  // namespace

TEST_CASE("find_span conventions") {
  KnotVector bezier(2, {0, 0, 0, 1, 1, 1});
  CHECK(bezier.find_span(0.5) == 2);
  KnotVector two_span(2, {0, 0, 0, 0.5, 1, 1, 1});
  CHECK(two_span.find_span(0.5) == 3);  // interior knot goes to the right span
  KnotVector linear(1, {0, 0, 1, 1});
  CHECK(linear.find_span(1.0) == 1);  // endpoint clamps to last span
  CHECK_THROWS_AS(linear.find_span(1.5), std::domain_error);
  CHECK_THROWS_AS(linear.find_span(-0.1), std::domain_error);
}

TEST_CASE("quadratic Bernstein values and derivatives at midpoint") {
  KnotVector kv(2, {0, 0, 0, 1, 1, 1});
  double N[3], dN[3];
  kv.basis_funs_and_derivs(kv.find_span(0.5), 0.5, N, dN);
  CHECK(N[0] == doctest::Approx(0.25));
  CHECK(N[1] == doctest::Approx(0.5));
  CHECK(N[2] == doctest::Approx(0.25));
  CHECK(dN[0] == doctest::Approx(-1.0));
  CHECK(dN[1] == doctest::Approx(0.0));
  CHECK(dN[2] == doctest::Approx(1.0));
}

TEST_CASE("basis partition of unity on random knot vectors") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uu(0.0, 1.0);
  KnotVector kv(2, {0, 0, 0, 0.3, 0.3, 0.7, 1, 1, 1});
  for (int trial = 0; trial < 200; ++trial) {
    const double u = uu(rng);
    double N[3];
    kv.basis_funs(kv.find_span(u), u, N);
    CHECK(N[0] + N[1] + N[2] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("rational 2D basis: partition of unity and polynomial reduction") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    NurbsPatch patch = random_rational_patch(rng);
    std::uniform_real_distribution<double> uu(0.0, 1.0);
    for (int k = 0; k < 25; ++k) {
      const Basis2D b = patch.basis(uu(rng), uu(rng));
      double sum = 0.0, sdu = 0.0, sdv = 0.0;
      for (std::size_t i = 0; i < b.value.size(); ++i) {
        sum += b.value[i];
        sdu += b.d_u[i];
        sdv += b.d_v[i];
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
      CHECK(std::abs(sdu) < 1e-10);
      CHECK(std::abs(sdv) < 1e-10);
    }
  }
}

TEST_CASE("equal weights reduce the rational basis to tensor B-splines") {
  KnotVector ku(2, {0, 0, 0, 1, 1, 1});
  KnotVector kv(1, {0, 0, 1, 1});
  std::vector<ControlPoint> net;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) net.push_back({double(i), double(j), 3.7});
  NurbsPatch patch(ku, kv, net);
  const Basis2D b = patch.basis(0.5, 0.25);
  // Bernstein(0.5) x linear(0.25)
  const double expected[] = {0.25 * 0.75, 0.5 * 0.75, 0.25 * 0.75,
                             0.25 * 0.25, 0.5 * 0.25, 0.25 * 0.25};
  for (int k = 0; k < 6; ++k) CHECK(b.value[k] == doctest::Approx(expected[k]).epsilon(1e-13));
}

TEST_CASE("rational derivative matches central finite differences") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uu(0.05, 0.95);
  for (int trial = 0; trial < 10; ++trial) {
    NurbsPatch patch = random_rational_patch(rng);
    for (int k = 0; k < 10; ++k) {
      const double u = uu(rng), v = uu(rng);
      const double h = 1e-6;
      const GeometryEval g = patch.geometry(u, v);
      const Vec2 dxu = (patch.point(u + h, v) - patch.point(u - h, v)) / (2 * h);
      const Vec2 dxv = (patch.point(u, v + h) - patch.point(u, v - h)) / (2 * h);
      CHECK((g.jacobian.col(0) - dxu).norm() < 1e-6 * (1.0 + dxu.norm()));
      CHECK((g.jacobian.col(1) - dxv).norm() < 1e-6 * (1.0 + dxv.norm()));
    }
  }
}

TEST_CASE("circle exactness of the rational quadratic arc") {
  NurbsPatch annulus = quarter_annulus(1.0, 2.0);
  for (double u : {0.0, 0.3, 0.5, 0.77, 1.0}) {
    const double r_expected = 1.0 + u;  // linear radial direction
    for (double v : {0.0, 0.1, 0.25, 0.5, 0.9, 1.0}) {
      const Vec2 p = annulus.point(u, v);
      CHECK(std::abs(p.norm() - r_expected) < 1e-12);
    }
  }
  // Cross-check one arc point against the independent de Casteljau oracle.
  const double w = std::cos(M_PI / 4.0);
  const Vec2 oracle =
      rational_bezier_point({1, 0, 1}, {1, 1, w}, {0, 1, 1}, 0.5);
  const Vec2 p = annulus.point(0.0, 0.5);
  CHECK((p - oracle).norm() < 1e-14);
  CHECK(std::abs(oracle.norm() - 1.0) < 1e-14);
}

TEST_CASE("identity patch geometry") {
  NurbsPatch sq = unit_square();
  const GeometryEval g = sq.geometry(0.3, 0.7);
  CHECK(g.point.x() == doctest::Approx(0.3));
  CHECK(g.point.y() == doctest::Approx(0.7));
  CHECK(g.det == doctest::Approx(1.0));
}

TEST_CASE("affine scaling scales detJ") {
  KnotVector k(1, {0, 0, 1, 1});
  std::vector<ControlPoint> net = {{0, 0, 1}, {2, 0, 1}, {0, 2, 1}, {2, 2, 1}};
  NurbsPatch scaled(k, k, net);
  CHECK(scaled.geometry(0.21, 0.86).det == doctest::Approx(4.0));
}

TEST_CASE("quarter annulus: positive detJ and exact area") {
  NurbsPatch annulus = quarter_annulus(1.0, 2.0);
  const auto& rule = gauss_rule(4);
  for (double gu : rule.node)
    for (double gv : rule.node) {
      const double u = 0.5 + 0.5 * gu, v = 0.5 + 0.5 * gv;
      CHECK(annulus.geometry(u, v).det > 0.0);
    }
  CHECK(annulus.area(16) == doctest::Approx(3.0 * M_PI / 4.0).epsilon(1e-6));
}

TEST_CASE("knot insertion preserves geometry and derivatives") {
  NurbsPatch annulus = quarter_annulus(1.0, 2.0);
  NurbsPatch refined = annulus.inserted({0.25, 0.5}, {0.5});
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uu(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double u = uu(rng), v = uu(rng);
    const GeometryEval a = annulus.geometry(u, v);
    const GeometryEval b = refined.geometry(u, v);
    CHECK((a.point - b.point).norm() < 1e-12);
    CHECK((a.jacobian - b.jacobian).norm() < 1e-10);
  }
  // Empty insertion leaves the patch unchanged.
  NurbsPatch same = annulus.inserted({}, {});
  CHECK(same.net().size() == annulus.net().size());
  // Uniform x3 refinement keeps the quadrature area.
  NurbsPatch fine = annulus.subdivided(3);
  CHECK(std::abs(fine.area(6) - annulus.area(16)) < 1e-10);
}

TEST_CASE("knot insertion rejects multiplicity overflow") {
  NurbsPatch annulus = quarter_annulus(1.0, 2.0);
  CHECK_THROWS(annulus.inserted({}, {0.5, 0.5, 0.5}));
}

TEST_CASE("min detJ sampling flags orientation flips") {
  CHECK(unit_square().min_detj_sample(5) == doctest::Approx(1.0));
  KnotVector k(1, {0, 0, 1, 1});
  // Swapped corner columns: self-overlapping map.
  std::vector<ControlPoint> net = {{1, 0, 1}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  NurbsPatch bad(k, k, net);
  CHECK(bad.min_detj_sample(5) < 0.0);
}

TEST_CASE("degenerate patch has vanishing area") {
  KnotVector k(1, {0, 0, 1, 1});
  std::vector<ControlPoint> net = {{0, 0, 1}, {0, 0, 1}, {0, 1, 1}, {0, 1, 1}};
  NurbsPatch thin(k, k, net);
  CHECK(thin.area(4) < 1e-12);
}

TEST_CASE("line and polyline constructions are exact") {
  KnotVector kv(2, {0, 0, 0, 0.25, 0.25, 0.8, 1, 1, 1});
  NurbsCurve line = make_line({1, 2}, {5, -2}, kv);
  for (double t : {0.0, 0.2, 0.25, 0.5, 0.99}) {
    const Vec2 expect = (1 - t) * Vec2{1, 2} + t * Vec2{5, -2};
    CHECK((line.eval(t) - expect).norm() < 1e-13);
  }
  NurbsCurve poly = make_polyline({{0, 0}, {1, 0}, {1, 1}}, {0.0, 0.25, 1.0}, kv);
  CHECK((poly.eval(0.125) - Vec2{0.5, 0}).norm() < 1e-13);
  CHECK((poly.eval(0.25) - Vec2{1, 0}).norm() < 1e-13);
  CHECK((poly.eval(0.625) - Vec2{1, 0.5}).norm() < 1e-13);
}

TEST_CASE("arc refined onto an enriched knot vector stays on the circle") {
  KnotVector kv(2, {0, 0, 0, 0.3, 0.3, 0.6, 1, 1, 1});
  NurbsCurve arc = make_arc({0, 0}, 2.0, 0.2, 1.2, kv);
  for (double t : {0.0, 0.15, 0.3, 0.5, 0.8, 1.0}) {
    CHECK(std::abs(arc.eval(t).norm() - 2.0) < 1e-13);
  }
  CHECK((arc.eval(0.0) - Vec2{2 * std::cos(0.2), 2 * std::sin(0.2)}).norm() < 1e-13);
  CHECK((arc.eval(1.0) - Vec2{2 * std::cos(1.2), 2 * std::sin(1.2)}).norm() < 1e-13);
}

TEST_CASE("curve reversal flips parameterization only") {
  KnotVector kv(2, {0, 0, 0, 0.4, 1, 1, 1});
  NurbsCurve arc = make_arc({1, 1}, 1.5, -0.3, 0.9, kv);
  NurbsCurve rev = arc.reversed();
  for (double t : {0.0, 0.33, 0.71, 1.0}) {
    CHECK((arc.eval(t) - rev.eval(1.0 - t)).norm() < 1e-12);
  }
}

TEST_CASE("gauss rules integrate polynomials exactly") {
  for (int n = 1; n <= 8; ++n) {
    const GaussRule& r = gauss_rule(n);
    // integrate x^(2n-1) (odd, zero) and x^(2n-2) over [-1,1]
    double even = 0.0, odd = 0.0;
    for (int i = 0; i < n; ++i) {
      even += r.weight[i] * std::pow(r.node[i], 2 * n - 2);
      odd += r.weight[i] * std::pow(r.node[i], 2 * n - 1);
    }
    CHECK(std::abs(odd) < 1e-14);
    CHECK(even == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
  }
}
