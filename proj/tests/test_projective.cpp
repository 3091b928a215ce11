#include <doctest.h>

#include <random>

#include "orbiproj/projective.hpp"

using namespace orbiproj;

namespace {

std::mt19937 rng(20240615);

double uniform(double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

Collineation random_collineation() {
  while (true) {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.data()[i] = uniform(-1.0, 1.0);
    if (std::abs(m.determinant()) > 0.05) return Collineation(m);
  }
}

HomPoint on_line(const HomPoint& y, const HomPoint& z, double a, double b) {
  return HomPoint(Vec3(a * y.v + b * z.v));
}

}  // namespace

TEST_CASE("cross-ratio of the affine frame points") {
  // [inf, 0; 1, z] = z under the lambda2 mu1 / (lambda1 mu2) definition;
  // the same four points in the order [0, inf; 1, z] give 1/z
  HomPoint zero(0, 1, 0), inf(1, 0, 0), one(1, 1, 0), three(3, 1, 0);
  CHECK(cross_ratio_points(inf, zero, one, three) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(cross_ratio_points(zero, inf, one, three) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("cross-ratio matches the (1-u)/u * v/(1-v) normal form") {
  HomPoint y(1, 0, 1), z(0, 0, 1), u(0.5, 0, 1), v(0.25, 0, 1);
  double expect = (1 - 0.5) / 0.5 * 0.25 / (1 - 0.25);
  CHECK(cross_ratio_points(y, z, u, v) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("cross-ratio with identical third and fourth points is 1") {
  HomPoint y(1, 2, 1), z(0, 4, 1);
  HomPoint u = on_line(y, z, 1.0, 2.0);
  CHECK(cross_ratio_points(y, z, u, u) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cross-ratio error paths") {
  HomPoint y(1, 0, 1), z(0, 0, 1), off(0, 1, 1);
  CHECK_THROWS_AS(cross_ratio_points(y, z, off, z), Error);
  CHECK_THROWS_AS(cross_ratio_points(y, z, y, z), Error);                    // u = y
  CHECK_THROWS_AS(cross_ratio_points(y, z, HomPoint(0.5, 0, 1), z), Error);  // v = z
}

TEST_CASE("cross-ratio is a projective invariant") {
  for (int trial = 0; trial < 200; ++trial) {
    HomPoint y(uniform(-1, 1), uniform(-1, 1), 1.0);
    HomPoint z(uniform(-1, 1), uniform(-1, 1), 1.0);
    if (y.equals(z)) continue;
    HomPoint u = on_line(y, z, 1.0, uniform(0.2, 2.0));
    HomPoint v = on_line(y, z, uniform(0.2, 2.0), 1.0);
    double cr = cross_ratio_points(y, z, u, v);
    Collineation g = random_collineation();
    double cr2 = cross_ratio_points(g.apply(y), g.apply(z), g.apply(u), g.apply(v));
    CHECK(cr2 == doctest::Approx(cr).epsilon(1e-9));
  }
}

TEST_CASE("line cross-ratio agrees with the dual and with transversal sections") {
  HomLine a(1, 0, 0), b(0, 1, 0), c(1, 1, 0), d(3, 1, 0);
  CHECK(cross_ratio_lines(a, b, c, d) == doctest::Approx(3.0).epsilon(1e-12));

  for (double zslope : {0.7, 2.5, -1.2}) {
    HomLine linf(1, 0, 0);      // x = 0: "slope infinity"
    HomLine l0(0, 1, 0);        // y = 0
    HomLine l1(1, -1, 0);       // y = x
    HomLine lz(zslope, -1, 0);  // y = z x
    double via_lines = cross_ratio_lines(linf, l0, l1, lz);
    HomLine t(1, 0, -1);  // transversal x = 1
    double via_points = cross_ratio_points(meet(linf, t), meet(l0, t), meet(l1, t), meet(lz, t));
    CHECK(via_lines == doctest::Approx(via_points).epsilon(1e-10));
    CHECK(via_lines == doctest::Approx(zslope).epsilon(1e-10));
  }

  HomLine e1(1, 0, 0), e2(0, 1, 0), skew(1, 1, -5);
  CHECK_THROWS_AS(cross_ratio_lines(e1, e2, HomLine(1, 1, 0), skew), Error);
}

TEST_CASE("classification of diagonal hyperbolic elements") {
  Mat3 d = Eigen::Vector3d(4.0, 1.0, 0.25).asDiagonal();
  CollineationClass c = classify(Collineation(d));
  CHECK(c.kind == CollineationKind::Hyperbolic);
  CHECK(c.lambda == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(c.tau == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(c.purely_hyperbolic);
  CHECK(c.positive_proximal);
  CHECK(in_invariant_region(c.lambda, c.tau));
  CHECK(2.0 / std::sqrt(0.25) < 5.0);
  CHECK(5.0 < 0.25 + 16.0);
}

TEST_CASE("classification of rotations and reflections") {
  CHECK(classify(rotation_of_order(5)).kind == CollineationKind::Elliptic);
  CHECK(classify(rotation_of_order(5)).elliptic_order == 5);
  CHECK(classify(rotation_of_order(7)).elliptic_order == 7);
  // a rotation of order two is a reflection
  CHECK(classify(rotation_of_order(2)).kind == CollineationKind::Reflection);
  Mat3 r2 = rotation_of_order(2).m;
  Mat3 want = Eigen::Vector3d(-1, -1, 1).asDiagonal();
  CHECK((r2 - want).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("classification of the quasi-hyperbolic Jordan forms") {
  // the lambda1 = lambda2 = 1 degeneration (single 2-Jordan block)
  Mat3 m;
  m << 1, 1, 0, 0, 1, 0, 0, 0, 1;
  CHECK(classify(Collineation(m)).kind == CollineationKind::QuasiHyperbolic);
  double l1 = 1.3;
  Mat3 m2;
  m2 << l1, 1, 0, 0, l1, 0, 0, 0, 1.0 / (l1 * l1);
  CHECK(classify(Collineation(m2)).kind == CollineationKind::QuasiHyperbolic);
  // a full 3-Jordan block is parabolic-like, not quasi-hyperbolic
  Mat3 m3;
  m3 << 1, 1, 0, 0, 1, 1, 0, 0, 1;
  CHECK(classify(Collineation(m3)).kind == CollineationKind::ParabolicLike);
  // a diagonalizable repeated positive pair is neither
  Mat3 m4 = Eigen::Vector3d(2.0, 2.0, 0.25).asDiagonal();
  CHECK(classify(Collineation(m4)).kind == CollineationKind::Other);
}

TEST_CASE("classification is conjugation invariant") {
  Mat3 d = Eigen::Vector3d(3.0, 0.8, 1.0 / 2.4).asDiagonal();
  CollineationClass base = classify(Collineation(d));
  REQUIRE(base.kind == CollineationKind::Hyperbolic);
  for (int trial = 0; trial < 100; ++trial) {
    Collineation g = random_collineation();
    CollineationClass c = classify(Collineation(Mat3(g.m * d * g.m.inverse())));
    CHECK(c.kind == base.kind);
    CHECK(c.lambda == doctest::Approx(base.lambda).epsilon(1e-9));
    CHECK(c.tau == doctest::Approx(base.tau).epsilon(1e-9));
  }
}

TEST_CASE("hyperbolic invariants always land inside the region") {
  for (int trial = 0; trial < 300; ++trial) {
    double a = uniform(0.1, 4.0), b = uniform(0.1, 4.0);
    Mat3 d = Eigen::Vector3d(a, b, 1.0 / (a * b)).asDiagonal();
    CollineationClass c = classify(Collineation(d));
    if (c.kind == CollineationKind::Hyperbolic) {
      CHECK(c.lambda > 0.0);
      CHECK(c.lambda < 1.0);
      CHECK(c.tau > 2.0 / std::sqrt(c.lambda));
      CHECK(c.tau < c.lambda + 1.0 / (c.lambda * c.lambda));
    }
  }
}

TEST_CASE("reflection through an axis and center") {
  Collineation r = reflection_through(HomLine(0, 0, 1), HomPoint(0, 0, 1));
  Mat3 want = Eigen::Vector3d(1, 1, -1).asDiagonal();
  CHECK((r.m - want).cwiseAbs().maxCoeff() < 1e-14);
  for (int trial = 0; trial < 50; ++trial) {
    HomLine axis(uniform(-1, 1), uniform(-1, 1), 1.0);
    HomPoint center(uniform(-1, 1), uniform(-1, 1), 1.0);
    if (std::abs(axis(center)) < 0.05) continue;
    Collineation r2 = reflection_through(axis, center);
    CHECK((r2 * r2).identity_residual() < 1e-12);
    CHECK(reflection_center(r2).equals(center));
    CHECK(reflection_axis(r2).equals(axis));
  }
  CHECK_THROWS_AS(reflection_through(HomLine(0, 0, 1), HomPoint(1, 1, 0)), Error);
}

TEST_CASE("rotations have exact order and no smaller one") {
  for (int n = 2; n <= 24; ++n) {
    Collineation r = rotation_of_order(n);
    Collineation acc = r;
    for (int k = 1; k < n; ++k) {
      CHECK(acc.identity_residual() > 1e-3);
      acc = acc * r;
    }
    CHECK(acc.identity_residual() < 1e-10);
  }
  CHECK_THROWS_AS(rotation_of_order(1), Error);
}

TEST_CASE("rotation conjugated to a given center and invariant line") {
  HomPoint center(1, 1, 1);
  HomLine at_inf(0, 0, 1);
  Collineation r = rotation_at(3, center, at_inf);
  CHECK(r.apply(center).equals(center));
  CHECK((r * r * r).identity_residual() < 1e-10);
  CHECK(r.apply(at_inf).equals(at_inf));
  CHECK_THROWS_AS(rotation_at(3, HomPoint(1, 0, 0), at_inf), Error);
}

TEST_CASE("join and meet") {
  CHECK(join(HomPoint(1, 0, 0), HomPoint(0, 1, 0)).equals(HomLine(0, 0, 1)));
  CHECK(meet(HomLine(0, 0, 1), HomLine(0, 1, 0)).equals(HomPoint(1, 0, 0)));
  HomPoint p(0.3, -0.8, 1);
  CHECK_THROWS_AS(join(p, p), Error);
}

TEST_CASE("steiner conic from a generic pencil projectivity") {
  HomPoint p1(1, 1, 1), p2(2, -1, 1);
  Mat3 g;
  g << 1.2, 0.3, -0.1, -0.2, 0.9, 0.4, 0.1, 0.0, 1.1;
  // compose with a frame map so that g sends p1 to p2
  Vec3 img = g * p1.v;
  Mat3 b1, b2;
  b1.col(0) = img;
  b1.col(1) = Vec3(1, 0, 0);
  b1.col(2) = Vec3(0, 1, 0);
  b2.col(0) = p2.v;
  b2.col(1) = Vec3(1, 0, 0);
  b2.col(2) = Vec3(0, 1, 0);
  Collineation phi(Mat3(b2 * b1.inverse() * g));
  REQUIRE(phi.apply(p1).equals(p2));
  Conic q = steiner_conic(p1, p2, phi);
  CHECK(std::abs(q.residual(p1)) < 1e-9);
  CHECK(std::abs(q.residual(p2)) < 1e-9);
  // fresh locus samples, none reused from the fit
  Eigen::JacobiSVD<Eigen::Matrix<double, 1, 3>> svd(p1.v.transpose(), Eigen::ComputeFullV);
  Vec3 la = svd.matrixV().col(1), lb = svd.matrixV().col(2);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    double th = (i + 0.37) * M_PI / 100.0;
    Vec3 l = std::cos(th) * la + std::sin(th) * lb;
    Vec3 L = phi.m.inverse().transpose() * l;
    Vec3 x = l.cross(L);
    if (x.cwiseAbs().maxCoeff() < 1e-10) continue;
    CHECK(std::abs(q.residual(HomPoint(x))) < 1e-9);
    ++checked;
  }
  CHECK(checked >= 95);
  Eigen::SelfAdjointEigenSolver<Mat3> es(q.q);
  int pos = 0, neg = 0;
  for (int i = 0; i < 3; ++i) (es.eigenvalues()[i] > 0 ? pos : neg)++;
  CHECK(((pos == 2 && neg == 1) || (pos == 1 && neg == 2)));
}

TEST_CASE("steiner conic rejects the identity pencil") {
  HomPoint p(1, 1, 1);
  CHECK_THROWS_AS(steiner_conic(p, p, Collineation(Mat3(Mat3::Identity()))), Error);
}

TEST_CASE("corner cross-ratio values") {
  CHECK(std::isinf(corner_cross_ratio(2)));
  CHECK(corner_cross_ratio(4) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(corner_cross_ratio(3) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_AS(corner_cross_ratio(1), Error);
}
