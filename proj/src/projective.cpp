#include "orbiproj/projective.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

namespace orbiproj {

namespace {

Vec3 normalize_maxabs(const Vec3& v) {
  double m = v.cwiseAbs().maxCoeff();
  if (m <= 0.0) fail(ErrorCode::BadInput, "zero homogeneous vector");
  return v / m;
}

double scale(const Vec3& a, const Vec3& b) {
  return std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
}

}  // namespace

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonCollinear: return "NonCollinear";
    case ErrorCode::NonConcurrent: return "NonConcurrent";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::IncidentCenter: return "IncidentCenter";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::CoincidentArguments: return "CoincidentArguments";
    case ErrorCode::DegenerateLocus: return "DegenerateLocus";
    case ErrorCode::NonSpacelike: return "NonSpacelike";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::NonNegativeEuler: return "NonNegativeEuler";
    case ErrorCode::WrongBoundaryKind: return "WrongBoundaryKind";
    case ErrorCode::MissingComponent: return "MissingComponent";
    case ErrorCode::InvariantOutOfRegion: return "InvariantOutOfRegion";
    case ErrorCode::TwoOrderTwoCones: return "TwoOrderTwoCones";
    case ErrorCode::FiberArityMismatch: return "FiberArityMismatch";
    case ErrorCode::ConvexityFailure: return "ConvexityFailure";
    case ErrorCode::BadCrossRatio: return "BadCrossRatio";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::BothOrdersTwo: return "BothOrdersTwo";
    case ErrorCode::MalformedStructure: return "MalformedStructure";
    case ErrorCode::InvariantMismatch: return "InvariantMismatch";
    case ErrorCode::OrientationClash: return "OrientationClash";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::NegativeEigenvalues: return "NegativeEigenvalues";
    case ErrorCode::NotPurelyHyperbolic: return "NotPurelyHyperbolic";
    case ErrorCode::ChartFailure: return "ChartFailure";
    case ErrorCode::ExplosionLimit: return "ExplosionLimit";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

const char* kind_name(CollineationKind k) {
  switch (k) {
    case CollineationKind::Hyperbolic: return "Hyperbolic";
    case CollineationKind::QuasiHyperbolic: return "QuasiHyperbolic";
    case CollineationKind::Elliptic: return "Elliptic";
    case CollineationKind::Reflection: return "Reflection";
    case CollineationKind::ParabolicLike: return "ParabolicLike";
    case CollineationKind::Other: return "Other";
  }
  return "Other";
}

HomPoint::HomPoint(const Vec3& raw) : v(normalize_maxabs(raw)) {}

bool HomPoint::equals(const HomPoint& other, const Tolerances& tol) const {
  return v.cross(other.v).norm() < tol.projective_eq * scale(v, other.v) * 3.0;
}

HomLine::HomLine(const Vec3& raw) : l(normalize_maxabs(raw)) {}

bool HomLine::equals(const HomLine& other, const Tolerances& tol) const {
  return l.cross(other.l).norm() < tol.projective_eq * scale(l, other.l) * 3.0;
}

Collineation::Collineation(const Mat3& raw) {
  double d = raw.determinant();
  if (std::abs(d) < 1e-300) fail(ErrorCode::BadInput, "singular matrix is not a collineation");
  det_sign = d > 0 ? 1 : -1;
  m = raw / std::cbrt(std::abs(d));
}

HomLine Collineation::apply(const HomLine& line) const {
  // image line: l o g^{-1}
  Vec3 out = m.inverse().transpose() * line.l;
  return HomLine(out);
}

Collineation Collineation::inverse() const { return Collineation(Mat3(m.inverse())); }

bool Collineation::equals(const Collineation& other, const Tolerances& tol) const {
  double dplus = (m - other.m).cwiseAbs().maxCoeff();
  double dminus = (m + other.m).cwiseAbs().maxCoeff();
  return std::min(dplus, dminus) < tol.projective_eq;
}

double Collineation::identity_residual() const {
  double dplus = (m - Mat3::Identity()).cwiseAbs().maxCoeff();
  double dminus = (m + Mat3::Identity()).cwiseAbs().maxCoeff();
  return std::min(dplus, dminus);
}

Conic::Conic(const Mat3& raw) {
  Mat3 s = 0.5 * (raw + raw.transpose());
  double m = s.cwiseAbs().maxCoeff();
  if (m <= 0.0) fail(ErrorCode::BadInput, "zero conic matrix");
  q = s / m;
}

bool collinear(const HomPoint& y, const HomPoint& z, const HomPoint& u, const Tolerances& tol) {
  Vec3 line = y.v.cross(z.v);
  double n = line.norm();
  if (n < tol.projective_eq) return true;  // y = z: everything is "collinear" with the pencil
  return std::abs(line.dot(u.v)) < tol.projective_eq * n * u.v.cwiseAbs().maxCoeff() * 3.0;
}

namespace {

// coefficients (l1, l2) with u = l1 y + l2 z, using the best-conditioned 2x2 block
Eigen::Vector2d decompose_on(const Vec3& y, const Vec3& z, const Vec3& u) {
  int bi = 0, bj = 1;
  double best = -1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      double d = std::abs(y[i] * z[j] - y[j] * z[i]);
      if (d > best) { best = d; bi = i; bj = j; }
    }
  Eigen::Matrix2d A;
  A << y[bi], z[bi], y[bj], z[bj];
  Eigen::Vector2d b(u[bi], u[bj]);
  return A.colPivHouseholderQr().solve(b);
}

}  // namespace

double cross_ratio_points(const HomPoint& y, const HomPoint& z, const HomPoint& u,
                          const HomPoint& v, const Tolerances& tol) {
  if (y.equals(z, tol)) fail(ErrorCode::Degenerate, "cross-ratio basis points coincide");
  if (!collinear(y, z, u, tol) || !collinear(y, z, v, tol))
    fail(ErrorCode::NonCollinear, "cross-ratio arguments are not collinear");
  Eigen::Vector2d lu = decompose_on(y.v, z.v, u.v);
  Eigen::Vector2d mv = decompose_on(y.v, z.v, v.v);
  double un = std::max(std::abs(lu[0]), std::abs(lu[1]));
  double vn = std::max(std::abs(mv[0]), std::abs(mv[1]));
  if (std::abs(lu[1]) < tol.projective_eq * un)
    fail(ErrorCode::Degenerate, "third point coincides with the first basis point");
  if (std::abs(mv[0]) < tol.projective_eq * vn)
    fail(ErrorCode::Degenerate, "fourth point coincides with the second basis point");
  return (lu[1] * mv[0]) / (lu[0] * mv[1]);
}

double cross_ratio_lines(const HomLine& a, const HomLine& b, const HomLine& c,
                         const HomLine& d, const Tolerances& tol) {
  // concurrency: common point of a,b must lie on c and d
  Vec3 p = a.l.cross(b.l);
  double n = p.norm();
  if (n < tol.projective_eq) fail(ErrorCode::Degenerate, "line pencil basis coincides");
  if (std::abs(c.l.dot(p)) > tol.projective_eq * n * 3.0 ||
      std::abs(d.l.dot(p)) > tol.projective_eq * n * 3.0)
    fail(ErrorCode::NonConcurrent, "cross-ratio lines are not concurrent");
  return cross_ratio_points(HomPoint(a.l), HomPoint(b.l), HomPoint(c.l), HomPoint(d.l), tol);
}

std::vector<std::pair<double, double>> eigenvalues3(const Mat3& m, const Tolerances& tol) {
  // char poly: x^3 - c2 x^2 + c1 x - c0
  double c2 = m.trace();
  double c1 = 0.5 * (c2 * c2 - (m * m).trace());
  double c0 = m.determinant();
  // depressed cubic t^3 + p t + q = 0 with x = t + c2/3
  double sh = c2 / 3.0;
  double p = c1 - c2 * c2 / 3.0;
  double q = -2.0 * c2 * c2 * c2 / 27.0 + c1 * c2 / 3.0 - c0;
  // scale for the discriminant test
  double sc = std::max({std::abs(c2), std::sqrt(std::abs(c1)), std::cbrt(std::abs(c0)), 1.0});
  double disc = -4.0 * p * p * p - 27.0 * q * q;
  auto polish = [&](double x) {
    for (int it = 0; it < 2; ++it) {
      double f = ((x - c2) * x + c1) * x - c0;
      double df = (3.0 * x - 2.0 * c2) * x + c1;
      if (std::abs(df) > 1e-30) x -= f / df;
    }
    return x;
  };
  std::vector<std::pair<double, double>> out;
  double near = tol.repeated_eigenvalue * sc * sc * sc;
  if (disc > near * near * 27.0) {
    // three distinct real roots (trigonometric form)
    double mp = std::sqrt(-p / 3.0);
    double arg = std::clamp(3.0 * q / (2.0 * p) / mp, -1.0, 1.0);
    double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      double t = 2.0 * mp * std::cos(phi - 2.0 * M_PI * k / 3.0);
      out.emplace_back(polish(t + sh), 0.0);
    }
    return out;
  }
  if (disc < -near * near * 27.0) {
    // one real root, complex pair (Cardano)
    double half_q = q / 2.0;
    double rad = std::sqrt(half_q * half_q + p * p * p / 27.0);
    double u = std::cbrt(-half_q + rad);
    double v = std::cbrt(-half_q - rad);
    double t0 = u + v;
    double re = -t0 / 2.0 + sh;
    double im = std::sqrt(3.0) * (u - v) / 2.0;
    out.emplace_back(polish(t0 + sh), 0.0);
    out.emplace_back(re, im);
    out.emplace_back(re, -im);
    return out;
  }
  // near-degenerate: iterative QR fallback
  Eigen::EigenSolver<Mat3> es(m);
  for (int i = 0; i < 3; ++i)
    out.emplace_back(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
  return out;
}

bool in_invariant_region(double lambda, double tau, double margin) {
  if (!(lambda > 0.0 && lambda < 1.0)) return false;
  double lo = 2.0 / std::sqrt(lambda);
  double hi = lambda + 1.0 / (lambda * lambda);
  return tau > lo + margin * (hi - lo) && tau < hi - margin * (hi - lo);
}

namespace {

// eigenvector for a (real, simple) eigenvalue
Vec3 eigvec_for(const Mat3& m, double ev) {
  Mat3 a = m - ev * Mat3::Identity();
  Eigen::JacobiSVD<Mat3> svd(a, Eigen::ComputeFullV);
  Vec3 v = svd.matrixV().col(2);
  int idx = 0;
  v.cwiseAbs().maxCoeff(&idx);
  return v / v[idx];
}

int detect_elliptic_order(double angle, int max_order) {
  // angle of the complex pair; order n if angle ~ 2 pi k / n
  for (int n = 1; n <= max_order; ++n) {
    double kk = angle * n / (2.0 * M_PI);
    if (std::abs(kk - std::round(kk)) < 1e-7 * n) return n;
  }
  return 0;
}

}  // namespace

CollineationClass classify(const Collineation& g, const Tolerances& tol) {
  Mat3 m = g.det_sign > 0 ? g.m : Mat3(-g.m);  // det +1 representative
  CollineationClass out;
  auto ev = eigenvalues3(m, tol);
  std::sort(ev.begin(), ev.end(), [](auto& a, auto& b) {
    return std::hypot(a.first, a.second) > std::hypot(b.first, b.second);
  });
  double mag[3];
  for (int i = 0; i < 3; ++i) mag[i] = std::hypot(ev[i].first, ev[i].second);
  bool all_real = true;
  for (auto& e : ev)
    if (std::abs(e.second) > tol.repeated_eigenvalue * mag[0]) all_real = false;
  double rel = tol.repeated_eigenvalue;

  if (!all_real) {
    // complex pair + real eigenvalue: elliptic when moduli agree (rotation class)
    double r = 0.0;
    double angle = 0.0;
    double realev = 0.0;
    for (auto& e : ev) {
      if (std::abs(e.second) > rel * mag[0]) {
        r = std::hypot(e.first, e.second);
        angle = std::abs(std::atan2(e.second, e.first));
      } else {
        realev = e.first;
      }
    }
    if (std::abs(r - std::abs(realev)) < rel * mag[0] && realev > 0.0) {
      out.kind = CollineationKind::Elliptic;
      out.elliptic_order = detect_elliptic_order(angle, tol.elliptic_max_order);
    } else {
      out.kind = CollineationKind::Other;
    }
    return out;
  }

  // group the real eigenvalues by value, not modulus
  double e0 = ev[0].first, e1 = ev[1].first, e2 = ev[2].first;
  double same01 = std::abs(e0 - e1) <= rel * mag[0];
  double same12 = std::abs(e1 - e2) <= rel * mag[0];
  double same02 = std::abs(e0 - e2) <= rel * mag[0];
  out.positive_proximal = std::abs(mag[0] - mag[1]) > rel * mag[0] && e0 > 0.0;

  auto rank_at = [&](double lambda_val) {
    Mat3 shifted = m - lambda_val * Mat3::Identity();
    Eigen::JacobiSVD<Mat3> svd(shifted);
    int rank = 0;
    for (int i = 0; i < 3; ++i)
      if (svd.singularValues()[i] > rel * std::max(1.0, svd.singularValues()[0])) ++rank;
    return rank;
  };

  if (same01 && same12) {
    // triple eigenvalue (necessarily 1 for the det-one representative)
    int rank = rank_at(e0);
    if (rank == 0) {
      out.kind = CollineationKind::Elliptic;
      out.elliptic_order = 1;
    } else if (rank == 1 && e0 > 0.0) {
      // the single 2-Jordan-block degeneration of a quasi-hyperbolic family
      out.kind = CollineationKind::QuasiHyperbolic;
    } else {
      out.kind = CollineationKind::ParabolicLike;
    }
    return out;
  }
  if (!same01 && !same12 && !same02) {
    if (e0 > 0.0 && e1 > 0.0 && e2 > 0.0 && std::abs(mag[0] - mag[1]) > rel * mag[0] &&
        std::abs(mag[1] - mag[2]) > rel * mag[0]) {
      out.kind = CollineationKind::Hyperbolic;
      out.lambda = e2;
      out.tau = e0 + e1;
      out.purely_hyperbolic = std::abs(out.tau - (1.0 + 1.0 / out.lambda)) <
                              tol.projective_eq * (1.0 + 1.0 / out.lambda);
      if (!in_invariant_region(out.lambda, out.tau)) out.kind = CollineationKind::Other;
      return out;
    }
    out.kind = CollineationKind::Other;  // mixed-sign / slide-reflection spectra
    return out;
  }
  // one repeated pair plus a distinct eigenvalue
  double rep_val, other;
  if (same01) {
    rep_val = 0.5 * (e0 + e1);
    other = e2;
  } else if (same12) {
    rep_val = 0.5 * (e1 + e2);
    other = e0;
  } else {
    rep_val = 0.5 * (e0 + e2);
    other = e1;
  }
  bool diagonalizable = rank_at(rep_val) <= 1;
  if (diagonalizable) {
    if (rep_val < 0.0 && other > 0.0) {
      out.kind = CollineationKind::Reflection;  // {-1,-1,1} for the det-one lift
      return out;
    }
    out.kind = CollineationKind::Other;
    return out;
  }
  if (rep_val > 0.0 && other > 0.0) {
    out.kind = CollineationKind::QuasiHyperbolic;
    return out;
  }
  out.kind = CollineationKind::Other;
  return out;
}

Collineation reflection_through(const HomLine& axis, const HomPoint& center,
                                const Tolerances& tol) {
  double d = axis(center);
  if (std::abs(d) < tol.projective_eq)
    fail(ErrorCode::IncidentCenter, "reflection center lies on the axis");
  Mat3 m = Mat3::Identity() - 2.0 / d * center.v * axis.l.transpose();
  return Collineation(m);
}

Collineation rotation_of_order(int n) {
  if (n < 2) fail(ErrorCode::BadOrder, "rotation order must be >= 2");
  double c = std::cos(2.0 * M_PI / n), s = std::sin(2.0 * M_PI / n);
  Mat3 m;
  m << c, -s, 0, s, c, 0, 0, 0, 1;
  return Collineation(m);
}

Collineation rotation_at(int n, const HomPoint& center, const HomLine& invariant_line,
                         const Tolerances& tol) {
  if (n < 2) fail(ErrorCode::BadOrder, "rotation order must be >= 2");
  if (std::abs(invariant_line(center)) < tol.projective_eq)
    fail(ErrorCode::IncidentCenter, "rotation center lies on the invariant line");
  // basis: two points spanning the line, plus the center
  Eigen::JacobiSVD<Eigen::Matrix<double, 1, 3>> svd(invariant_line.l.transpose(),
                                                    Eigen::ComputeFullV);
  Vec3 p1 = svd.matrixV().col(1);
  Vec3 p2 = svd.matrixV().col(2);
  Mat3 t;
  t.col(0) = p1;
  t.col(1) = p2;
  t.col(2) = center.v;
  return Collineation(t * rotation_of_order(n).m * t.inverse());
}

HomLine join(const HomPoint& p, const HomPoint& q, const Tolerances& tol) {
  Vec3 l = p.v.cross(q.v);
  if (l.norm() < tol.projective_eq * scale(p.v, q.v) * 3.0)
    fail(ErrorCode::CoincidentArguments, "join of coincident points");
  return HomLine(l);
}

HomPoint meet(const HomLine& a, const HomLine& b, const Tolerances& tol) {
  Vec3 p = a.l.cross(b.l);
  if (p.norm() < tol.projective_eq * scale(a.l, b.l) * 3.0)
    fail(ErrorCode::CoincidentArguments, "meet of coincident lines");
  return HomPoint(p);
}

Conic steiner_conic(const HomPoint& p1, const HomPoint& /*p2*/, const Collineation& phi,
                    const Tolerances& tol) {
  // pencil basis at p1
  Eigen::JacobiSVD<Eigen::Matrix<double, 1, 3>> svd(p1.v.transpose(), Eigen::ComputeFullV);
  Vec3 a = svd.matrixV().col(1);
  Vec3 b = svd.matrixV().col(2);
  const int kSamples = 8;
  std::vector<Vec3> pts;
  for (int i = 0; i < kSamples + 4 && (int)pts.size() < kSamples; ++i) {
    double th = (i + 0.5) * M_PI / (kSamples + 4);
    Vec3 l = std::cos(th) * a + std::sin(th) * b;
    Vec3 L = phi.m.inverse().transpose() * l;
    Vec3 x = l.cross(L);
    if (x.cwiseAbs().maxCoeff() < tol.projective_eq) continue;  // fixed line of the pencil map
    pts.push_back(x / x.cwiseAbs().maxCoeff());
  }
  if ((int)pts.size() < 5) fail(ErrorCode::DegenerateLocus, "pencil projectivity has a degenerate locus");
  Eigen::MatrixXd rows(pts.size(), 6);
  for (size_t i = 0; i < pts.size(); ++i) {
    const Vec3& x = pts[i];
    rows.row(i) << x[0] * x[0], x[1] * x[1], x[2] * x[2], 2 * x[0] * x[1], 2 * x[0] * x[2],
        2 * x[1] * x[2];
    rows.row(i) /= rows.row(i).norm();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> fit(rows, Eigen::ComputeFullV);
  auto sv = fit.singularValues();
  if (sv[sv.size() - 2] < tol.conic_residual * std::max(1.0, sv[0]))
    fail(ErrorCode::DegenerateLocus, "conic fit is rank-deficient (line pair or worse)");
  Eigen::VectorXd qv = fit.matrixV().col(5);
  Mat3 q;
  q << qv[0], qv[3], qv[4], qv[3], qv[1], qv[5], qv[4], qv[5], qv[2];
  Conic conic(q);
  // degenerate (rank <= 2) loci are rejected
  Eigen::JacobiSVD<Mat3> qsvd(conic.q);
  if (qsvd.singularValues()[2] < 1e3 * tol.conic_residual * qsvd.singularValues()[0])
    fail(ErrorCode::DegenerateLocus, "fitted conic is degenerate");
  return conic;
}

double corner_cross_ratio(int n) {
  if (n < 2) fail(ErrorCode::BadOrder, "corner-reflector order must be >= 2");
  if (n == 2) return std::numeric_limits<double>::infinity();
  return 2.0 / (std::cos(2.0 * M_PI / n) + 1.0);
}

HomPoint reflection_center(const Collineation& r, const Tolerances& tol) {
  // reflection spectrum {1,1,-1} up to sign; center = simple eigenvalue's vector
  Mat3 m = r.det_sign > 0 ? Mat3(-r.m) : r.m;  // representative diag(1,1,-1)-like
  auto ev = eigenvalues3(m, tol);
  // simple eigenvalue is the negative one for diag(1,1,-1)
  double target = 0.0;
  for (auto& e : ev) {
    if (e.first < 0.0 && std::abs(e.second) < 1e-9) target = e.first;
  }
  if (target == 0.0) fail(ErrorCode::MalformedStructure, "not a reflection (no simple negative eigenvalue)");
  return HomPoint(eigvec_for(m, target));
}

HomLine reflection_axis(const Collineation& r, const Tolerances& tol) {
  (void)tol;
  Mat3 m = r.det_sign > 0 ? Mat3(-r.m) : r.m;
  // m - I = -2 c l^T / l(c) is rank one; any nonzero row spans the axis covector
  Mat3 a = m - Mat3::Identity();
  int ri = 0, ci = 0;
  a.cwiseAbs().maxCoeff(&ri, &ci);
  Vec3 row = a.row(ri);
  if (row.cwiseAbs().maxCoeff() < 1e-12) fail(ErrorCode::MalformedStructure, "not a reflection");
  return HomLine(row);
}

HypFrame hyperbolic_frame(const Collineation& g, const Tolerances& tol) {
  Mat3 m = g.det_sign > 0 ? g.m : Mat3(-g.m);
  auto ev = eigenvalues3(m, tol);
  std::sort(ev.begin(), ev.end(), [](auto& a, auto& b) {
    return std::hypot(a.first, a.second) > std::hypot(b.first, b.second);
  });
  for (auto& e : ev)
    if (std::abs(e.second) > tol.repeated_eigenvalue)
      fail(ErrorCode::NotHyperbolic, "complex spectrum");
  HypFrame f;
  for (int i = 0; i < 3; ++i) {
    f.ev[i] = ev[i].first;
    f.fix[i] = eigvec_for(m, ev[i].first);
  }
  return f;
}

}  // namespace orbiproj
