#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "orbiproj/error.hpp"
#include "orbiproj/tolerances.hpp"

namespace orbiproj {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Point of RP^2 in homogeneous coordinates, normalized so max |coord| = 1.
struct HomPoint {
  Vec3 v;

  HomPoint() : v(Vec3::Zero()) {}
  explicit HomPoint(const Vec3& raw);
  HomPoint(double x, double y, double z) : HomPoint(Vec3(x, y, z)) {}

  bool equals(const HomPoint& other, const Tolerances& tol = default_tolerances()) const;
};

// Line covector; incidence l(p) = 0.  Same normalization rules as HomPoint.
struct HomLine {
  Vec3 l;

  HomLine() : l(Vec3::Zero()) {}
  explicit HomLine(const Vec3& raw);
  HomLine(double a, double b, double c) : HomLine(Vec3(a, b, c)) {}

  double operator()(const HomPoint& p) const { return l.dot(p.v); }
  bool equals(const HomLine& other, const Tolerances& tol = default_tolerances()) const;
};

// Element of PGL(3,R), stored as the |det| = 1 representative with the
// original determinant sign kept separately.  Equality is up to global sign.
struct Collineation {
  Mat3 m;
  int det_sign = 1;

  Collineation() : m(Mat3::Identity()) {}
  explicit Collineation(const Mat3& raw);

  HomPoint apply(const HomPoint& p) const { return HomPoint(Vec3(m * p.v)); }
  HomLine apply(const HomLine& line) const;
  Collineation inverse() const;
  Collineation operator*(const Collineation& other) const { return Collineation(m * other.m); }

  bool equals(const Collineation& other, const Tolerances& tol = default_tolerances()) const;
  // max-entry distance to +-identity of the |det|=1 representative
  double identity_residual() const;
};

enum class CollineationKind {
  Hyperbolic,
  QuasiHyperbolic,
  Elliptic,
  Reflection,
  ParabolicLike,
  Other,
};

struct CollineationClass {
  CollineationKind kind = CollineationKind::Other;
  double lambda = 0.0;  // smallest eigenvalue when Hyperbolic
  double tau = 0.0;     // sum of the two other eigenvalues when Hyperbolic
  int elliptic_order = 0;  // 0 = irrational / not elliptic
  bool purely_hyperbolic = false;
  bool positive_proximal = false;
};

const char* kind_name(CollineationKind k);

// Symmetric matrix Q of a conic x^T Q x = 0, largest entry normalized to 1.
struct Conic {
  Mat3 q;

  Conic() : q(Mat3::Zero()) {}
  explicit Conic(const Mat3& raw);

  double residual(const HomPoint& p) const { return p.v.dot(q * p.v); }
};

// ---- operations ----------------------------------------------------------

bool collinear(const HomPoint& y, const HomPoint& z, const HomPoint& u,
               const Tolerances& tol = default_tolerances());

// [y,z;u,v] = l2 m1 / (l1 m2) for u = l1 y + l2 z, v = m1 y + m2 z.
double cross_ratio_points(const HomPoint& y, const HomPoint& z, const HomPoint& u,
                          const HomPoint& v, const Tolerances& tol = default_tolerances());

double cross_ratio_lines(const HomLine& a, const HomLine& b, const HomLine& c,
                         const HomLine& d, const Tolerances& tol = default_tolerances());

CollineationClass classify(const Collineation& g, const Tolerances& tol = default_tolerances());

// (lambda, tau) region of hyperbolic boundary invariants.
bool in_invariant_region(double lambda, double tau, double margin = 0.0);

Collineation reflection_through(const HomLine& axis, const HomPoint& center,
                                const Tolerances& tol = default_tolerances());

Collineation rotation_of_order(int n);
Collineation rotation_at(int n, const HomPoint& center, const HomLine& invariant_line,
                         const Tolerances& tol = default_tolerances());

HomLine join(const HomPoint& p, const HomPoint& q,
             const Tolerances& tol = default_tolerances());
HomPoint meet(const HomLine& a, const HomLine& b,
              const Tolerances& tol = default_tolerances());

// Conic as the locus of l cap phi(l) over the pencil of lines through p1,
// fitted from 8 sampled pencil lines by a singular-value null space.
Conic steiner_conic(const HomPoint& p1, const HomPoint& p2, const Collineation& phi,
                    const Tolerances& tol = default_tolerances());

// 2 / (cos(2 pi / n) + 1); +infinity for n = 2.
double corner_cross_ratio(int n);

// ---- small helpers used across modules -----------------------------------

// isolated fixed point and fixed line of a reflection matrix
HomPoint reflection_center(const Collineation& r, const Tolerances& tol = default_tolerances());
HomLine reflection_axis(const Collineation& r, const Tolerances& tol = default_tolerances());

// Eigen frame of a hyperbolic element: eigenvalues sorted by decreasing
// absolute value with sign-normalized eigenvector columns.
struct HypFrame {
  double ev[3];   // ev[0] attracting, ev[1] saddle, ev[2] repelling
  Vec3 fix[3];    // matching fixed points
};
HypFrame hyperbolic_frame(const Collineation& g, const Tolerances& tol = default_tolerances());

// Real eigenvalues of a 3x3 matrix via the characteristic cubic (Cardano)
// with one Newton polish per root; QR fallback near repeated roots.
// Returns all eigenvalues (possibly complex) as pairs (re, im).
std::vector<std::pair<double, double>> eigenvalues3(const Mat3& m,
                                                    const Tolerances& tol = default_tolerances());

}  // namespace orbiproj
