#include "orbiproj/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace orbiproj {

namespace {

struct SlotData {
  double lam_hat;  // lambda (Hyp) or 1 (Cone)
  double tau_hat;  // tau (Hyp) or 2 cos(2 pi / n)
  bool cone;
  int order;
};

SlotData slot_of(const EndSpec& e, const Tolerances& tol) {
  if (e.kind == EndSpec::Kind::Hyp) {
    if (!in_invariant_region(e.lambda, e.tau, tol.region_margin))
      fail(ErrorCode::InvariantOutOfRegion,
           "(lambda, tau) = (" + std::to_string(e.lambda) + ", " + std::to_string(e.tau) +
               ") outside the hyperbolic invariant region");
    return {e.lambda, e.tau, false, 0};
  }
  if (e.kind == EndSpec::Kind::Cone) {
    if (e.order < 2) fail(ErrorCode::BadOrder, "cone order must be >= 2");
    return {1.0, 2.0 * std::cos(2.0 * M_PI / e.order), true, e.order};
  }
  fail(ErrorCode::BadInput, "pants ends must be Hyp or Cone");
}

Word power_word(const std::string& g1, const std::string& g2, int k) {
  Word w;
  for (int i = 0; i < k; ++i) {
    w.push_back(GenRef{g1, false});
    w.push_back(GenRef{g2, false});
  }
  return w;
}

Word repeat_word(const std::string& g, int k) {
  Word w;
  for (int i = 0; i < k; ++i) w.push_back(GenRef{g, false});
  return w;
}

OrbifoldSignature pants_signature(const std::vector<EndSpec>& ends) {
  OrbifoldSignature sig;
  for (const auto& e : ends) {
    if (e.kind == EndSpec::Kind::Hyp)
      sig.boundary.push_back(BoundaryPattern{});
    else
      sig.cone_orders.push_back(e.order);
  }
  return sig;
}

std::string pants_type(const std::vector<EndSpec>& ends) {
  int cones = 0;
  for (const auto& e : ends)
    if (e.kind == EndSpec::Kind::Cone) ++cones;
  switch (cones) {
    case 0: return "P1";
    case 1: return "P2";
    case 2: return "P3";
    default: return "P4";
  }
}

struct PantsRaw {
  PantsSolution sol;
  Mat3 A, B, C;
  std::array<Vec3, 3> extra;  // u_a, u_b, u_c free-triangle vertices
  int rotation;               // input slot i went to solver slot (i + rotation) mod 3
  bool order2;
};

PantsRaw solve_pants_raw(const std::vector<EndSpec>& ends_in, std::optional<Fiber2> fiber,
                         const Tolerances& tol) {
  if (ends_in.size() != 3) fail(ErrorCode::BadInput, "pants family needs exactly three ends");
  int order2_count = 0, order2_pos = -1;
  for (int i = 0; i < 3; ++i)
    if (ends_in[i].kind == EndSpec::Kind::Cone && ends_in[i].order == 2) {
      ++order2_count;
      order2_pos = i;
    }
  if (order2_count > 1) fail(ErrorCode::TwoOrderTwoCones, "at most one order-two cone end");
  bool order2 = order2_count == 1;
  if (order2 && fiber.has_value())
    fail(ErrorCode::FiberArityMismatch, "an order-two cone end admits no fiber parameters");
  if (!order2 && !fiber.has_value())
    fail(ErrorCode::FiberArityMismatch, "fiber (s, t) required without an order-two cone end");

  // cyclic rotation placing any order-two cone at slot C
  int rot = order2 ? (2 - order2_pos + 3) % 3 : 0;
  std::vector<EndSpec> ends(3);
  for (int i = 0; i < 3; ++i) ends[(i + rot) % 3] = ends_in[i];

  SlotData sd[3] = {slot_of(ends[0], tol), slot_of(ends[1], tol), slot_of(ends[2], tol)};
  // chi < 0 check at signature level
  Rational chi = euler_characteristic(pants_signature(ends));
  if (!(chi < Rational(0)))
    fail(ErrorCode::ConstraintViolated, "pants signature must have chi < 0");

  PantsRaw out;
  out.rotation = rot;
  out.order2 = order2;
  PantsSolution& ps = out.sol;
  double a1 = sd[0].lam_hat, b2 = sd[1].lam_hat, g3 = sd[2].lam_hat;

  if (order2) {
    ps.alpha[0] = a1;
    ps.beta[1] = b2;
    ps.gamma[2] = 1.0;
    ps.alpha[2] = ps.beta[2] = 1.0;
    ps.alpha[1] = 1.0 / a1;
    ps.beta[0] = 1.0 / b2;
    ps.gamma[0] = b2 / a1;
    ps.gamma[1] = a1 / b2;
    ps.rho1 = (sd[0].tau_hat + ps.beta[0]) / ps.gamma[0] + 1.0;
    ps.rho2 = (sd[1].tau_hat + ps.gamma[1]) / ps.alpha[1] + 1.0;
    ps.rho3 = 0.0;
    ps.a2 = 0.0;
    ps.b1 = 0.0;
    ps.a3 = ps.rho2;
    ps.b3 = ps.rho1;
    ps.c1 = 1.0;
    ps.c2 = 1.0;
  } else {
    double s = fiber->s, t = fiber->t;
    if (!(s > 0.0) || !(t > 0.0)) fail(ErrorCode::BadParameter, "fiber (s, t) must be positive");
    // rank-5 log-linear system; particular solution gamma1 = 1 scaled by s
    // along the kernel direction (+1,-1,-1,+1,+1,-1) in (a2,a3,b1,b3,g1,g2)
    ps.alpha[0] = a1;
    ps.beta[1] = b2;
    ps.gamma[2] = g3;
    ps.gamma[0] = s;
    ps.gamma[1] = 1.0 / (s * g3);
    ps.beta[0] = 1.0 / (a1 * s);
    ps.beta[2] = s * a1 / b2;
    ps.alpha[1] = g3 * s / b2;
    ps.alpha[2] = b2 / (a1 * g3 * s);
    ps.rho1 = (sd[0].tau_hat + ps.beta[0]) / ps.gamma[0] + 1.0;
    ps.rho2 = (sd[1].tau_hat + ps.gamma[1]) / ps.alpha[1] + 1.0;
    ps.rho3 = (sd[2].tau_hat + ps.alpha[2]) / ps.beta[2] + 1.0;
    ps.a2 = t;
    ps.a3 = 2.0;
    ps.b1 = ps.rho3 / t;
    ps.b3 = 2.0;
    ps.c1 = ps.rho2 / 2.0;
    ps.c2 = ps.rho1 / 2.0;
  }
  ps.sigma1 = ps.a2 * ps.b3 * ps.c1;
  ps.sigma2 = ps.a3 * ps.b1 * ps.c2;

  // convexity ranges: rho > 1 for Hyp or order >= 4 slots, rho > 0 for order 3
  double rhos[3] = {ps.rho1, ps.rho2, ps.rho3};
  for (int i = 0; i < 3; ++i) {
    if (sd[i].cone && sd[i].order == 2) continue;
    double lo = (sd[i].cone && sd[i].order == 3) ? 0.0 : 1.0;
    if (!(rhos[i] > lo))
      fail(ErrorCode::ConvexityFailure,
           "configuration invariant rho" + std::to_string(i + 1) + " out of range");
  }

  Vec3 e1(1, 0, 0), e2(0, 1, 0), e3(0, 0, 1);
  Vec3 ua(-1, ps.b1, ps.c1), ub(ps.a2, -1, ps.c2), uc(ps.a3, ps.b3, -1);
  out.extra = {ua, ub, uc};
  // rank-one sums assembling the triangle-shuffling collineations
  out.A = ps.alpha[0] * e1 * Eigen::RowVector3d(1, ps.a2, 0) +
          ps.beta[0] * e2 * Eigen::RowVector3d(0, -1, 0) +
          ps.gamma[0] * uc * Eigen::RowVector3d(0, ps.c2, 1);
  out.B = ps.alpha[1] * ua * Eigen::RowVector3d(1, 0, ps.a3) +
          ps.beta[1] * e2 * Eigen::RowVector3d(0, 1, ps.b3) +
          ps.gamma[1] * e3 * Eigen::RowVector3d(0, 0, -1);
  out.C = ps.alpha[2] * e1 * Eigen::RowVector3d(-1, 0, 0) +
          ps.beta[2] * ub * Eigen::RowVector3d(ps.b1, 1, 0) +
          ps.gamma[2] * e3 * Eigen::RowVector3d(ps.c1, 0, 1);
  return out;
}

}  // namespace

PantsSolution solve_pants_details(const std::vector<EndSpec>& ends, std::optional<Fiber2> fiber,
                                  const Tolerances& tol) {
  return solve_pants_raw(ends, fiber, tol).sol;
}

Structure solve_pants_family(const std::vector<EndSpec>& ends, std::optional<Fiber2> fiber,
                             const Tolerances& tol) {
  PantsRaw raw = solve_pants_raw(ends, fiber, tol);
  Structure s;
  s.type = pants_type(ends);
  for (const auto& e : ends)
    if (e.kind == EndSpec::Kind::Cone) s.orders.push_back(e.order);
  s.generators.emplace("A", Collineation(raw.A));
  s.generators.emplace("B", Collineation(raw.B));
  s.generators.emplace("C", Collineation(raw.C));
  if (fiber) s.fiber_params = {fiber->s, fiber->t};
  // C B A = id (composition order of the pants relation)
  s.relations.push_back({GenRef{"C", false}, GenRef{"B", false}, GenRef{"A", false}});
  const char* slot_names[3] = {"A", "B", "C"};
  for (int i = 0; i < 3; ++i) {
    int slot = (i + raw.rotation) % 3;
    End e;
    e.spec = ends[i];
    e.gens = {slot_names[slot]};
    s.ends.push_back(e);
    if (ends[i].kind == EndSpec::Kind::Cone)
      s.relations.push_back(repeat_word(slot_names[slot], ends[i].order));
  }
  // fundamental tiles: the standard triangle and its neighbor across (e1,e2)
  Vec3 e1(1, 0, 0), e2(0, 1, 0), e3(0, 0, 1);
  s.tiles.push_back({HomPoint(e1), HomPoint(e2), HomPoint(e3)});
  s.tiles.push_back({HomPoint(e1), HomPoint(e2), HomPoint(raw.extra[2])});
  s.signature = pants_signature(ends);
  s.side_pairings = compute_side_pairings(s, tol);
  s.check_relations(tol);
  return s;
}

// ---- shared A-family helpers ------------------------------------------------

namespace {

// diagonal boundary holonomy: saddle at e1, attracting e2, repelling e3
Mat3 crown_theta(double lambda, double tau) {
  double disc = tau * tau - 4.0 / lambda;
  double mu1 = 0.5 * (tau + std::sqrt(disc));
  double mu2 = 0.5 * (tau - std::sqrt(disc));
  return Eigen::Vector3d(mu2, mu1, lambda).asDiagonal();
}

Mat3 theta_from_spectrum(const std::array<double, 3>& ev_in) {
  std::array<double, 3> ev = ev_in;
  std::sort(ev.begin(), ev.end());
  if (!(ev[0] > 0.0)) fail(ErrorCode::NegativeEigenvalues, "eigenvalues must be positive");
  double prod = ev[0] * ev[1] * ev[2];
  double scale = std::cbrt(prod);
  for (auto& x : ev) x /= scale;
  if (ev[1] - ev[0] < 1e-12 || ev[2] - ev[1] < 1e-12)
    fail(ErrorCode::NotHyperbolic, "eigenvalues must be distinct");
  return Eigen::Vector3d(ev[1], ev[2], ev[0]).asDiagonal();
}

// p, q positioned on the (f1, f2) segment with [f1,f2;p,q] = c; the fiber
// slides p by a logistic chart
void place_pair(const Vec3& f1, const Vec3& f2, double c, double fiber, Vec3& p, Vec3& q) {
  if (!(c > 0.0 && c < 1.0))
    fail(ErrorCode::BadCrossRatio, "full 1-orbifold invariant must lie in (0, 1)");
  double wp = 1.0 / (1.0 + std::exp(-fiber));
  double wq = wp / (c + (1.0 - c) * wp);
  p = (1.0 - wp) * f1 + wp * f2;
  q = (1.0 - wq) * f1 + wq * f2;
}

OrbifoldSignature crown_signature(bool a1) {
  OrbifoldSignature sig;
  sig.boundary.push_back(BoundaryPattern{});
  BoundaryPattern bp;
  if (a1) {
    bp.kind = BoundaryPattern::Kind::Mixed;
    bp.segments = {BoundaryPattern::Segment::Mirror, BoundaryPattern::Segment::FullOrbifold};
  } else {
    bp.kind = BoundaryPattern::Kind::Mirror;
  }
  sig.boundary.push_back(bp);
  return sig;
}

Structure crown_a1_impl(const Mat3& th, double full_inv, double fiber, const Tolerances& tol) {
  Collineation T(th);
  Vec3 v(1, 1, 1);
  Vec3 tv = th * v;
  Vec3 p, q;
  place_pair(v, tv, full_inv, fiber, p, q);
  Vec3 tiq = th.inverse() * q;
  Collineation r = reflection_through(join(HomPoint(p), HomPoint(tiq), tol), HomPoint(v), tol);
  Structure s;
  s.type = "A1";
  s.generators.emplace("T", T);
  s.generators.emplace("r", r);
  s.relations.push_back({GenRef{"r", false}, GenRef{"r", false}});
  s.fiber_params = {fiber};
  End be;
  be.spec = EndSpec::hyp(classify(T, tol).lambda, classify(T, tol).tau);
  be.gens = {"T"};
  End fe;
  fe.spec = EndSpec::full(full_inv);
  fe.gens = {"r", "T r T~"};  // mirrors at the p and q ends
  s.ends = {be, fe};
  // fundamental tile: principal-side chord points m0, T m0 and arc points
  Vec3 m0(0, 1, 1);
  Vec3 m1 = th * m0;
  s.tiles.push_back({HomPoint(m0), HomPoint(m1), HomPoint(Vec3(th * p)), HomPoint(q), HomPoint(p)});
  s.signature = crown_signature(true);
  s.side_pairings = compute_side_pairings(s, tol);
  s.check_relations(tol);
  return s;
}

// pencil solve: with basis (a, b) and [y, z; a, b] = k, z = (k y1, y2)
Vec3 cr_partner_line(const Vec3& y_line, const Vec3& a, const Vec3& b, double k) {
  // coordinates of y in the (a, b) pencil basis via least squares
  Eigen::Matrix<double, 3, 2> M;
  M.col(0) = a;
  M.col(1) = b;
  Eigen::Vector2d y = M.colPivHouseholderQr().solve(y_line);
  return (k * y[0]) * a + y[1] * b;
}

// corner-order point on the Steiner locus through p and th(p); the fiber
// parameterizes the admissible arc.  `inside` is a witness interior point of
// the domain; x must land strictly on the other side of join(p, th p).
Vec3 steiner_corner_point(const Mat3& th, const Vec3& p, int order, double fiber,
                          const Vec3& inside, const Tolerances& tol) {
  Vec3 tp = th * p;
  Vec3 tip = th.inverse() * p;
  Vec3 a = p.cross(tp);        // l(s)
  Vec3 b = tip.cross(p);       // theta^{-1}(l(s))
  double k = corner_cross_ratio(order);
  Mat3 th_inv_T = th.inverse().transpose();
  auto x_of = [&](double u) -> Vec3 {
    Vec3 l = a + u * b;
    Vec3 L = th_inv_T * cr_partner_line(l, a, b, k);
    return l.cross(L);
  };
  double side_dom = a.dot(inside) > 0 ? 1.0 : -1.0;
  // choose the pencil half mapping to the outside arc
  double probe = 0.0;
  for (double cand : {1.0, -1.0, 0.5, -0.5, 2.0, -2.0}) {
    Vec3 x = x_of(cand);
    if (x.cwiseAbs().maxCoeff() < 1e-12) continue;
    if ((a.dot(x) / x.cwiseAbs().maxCoeff()) * side_dom < -tol.projective_eq) {
      probe = cand;
      break;
    }
  }
  if (probe == 0.0)
    fail(ErrorCode::DegenerateLocus, "no corner-locus arc outside the domain");
  double u = (probe > 0 ? 1.0 : -1.0) * std::exp(fiber);
  Vec3 x = x_of(u);
  if (x.cwiseAbs().maxCoeff() < 1e-12 ||
      (a.dot(x) / x.cwiseAbs().maxCoeff()) * side_dom > -tol.projective_eq)
    fail(ErrorCode::DegenerateLocus, "fiber parameter leaves the admissible arc");
  return x;
}

Structure crown_a2_impl(const Mat3& th, int corner_order, std::optional<double> fiber,
                        const Tolerances& tol) {
  if (corner_order < 2) fail(ErrorCode::BadOrder, "corner order must be >= 2");
  if (corner_order == 2 && fiber.has_value())
    fail(ErrorCode::FiberArityMismatch, "order-two corner admits no fiber parameter");
  if (corner_order >= 3 && !fiber.has_value())
    fail(ErrorCode::FiberArityMismatch, "fiber parameter required for corner order >= 3");
  Vec3 p(1, 1, 1);
  Vec3 tp = th * p;
  Vec3 x;
  if (corner_order == 2) {
    // unique commuting position: x on theta^{-1}(l(s)) and theta(l(s))
    Vec3 tip = th.inverse() * p;
    Vec3 t2p = th * tp;
    x = (tip.cross(p)).cross(tp.cross(t2p));
  } else {
    x = steiner_corner_point(th, p, corner_order, *fiber, Vec3(0, 1, 1), tol);
  }
  Collineation T(th);
  Collineation r = reflection_through(join(HomPoint(p), HomPoint(tp), tol), HomPoint(x), tol);
  Structure s;
  s.type = "A2";
  s.orders = {corner_order};
  s.generators.emplace("T", T);
  s.generators.emplace("r", r);
  s.relations.push_back({GenRef{"r", false}, GenRef{"r", false}});
  {
    // (r . T r T~)^order = id
    Word w;
    for (int i = 0; i < corner_order; ++i) {
      w.push_back(GenRef{"r", false});
      w.push_back(GenRef{"T", false});
      w.push_back(GenRef{"r", false});
      w.push_back(GenRef{"T", true});
    }
    s.relations.push_back(w);
  }
  if (fiber) s.fiber_params = {*fiber};
  End be;
  be.spec = EndSpec::hyp(classify(T, tol).lambda, classify(T, tol).tau);
  be.gens = {"T"};
  End ce;
  ce.spec = EndSpec::corner(corner_order);
  ce.gens = {"T~ r T", "r"};  // mirrors meeting at p
  s.ends = {be, ce};
  Vec3 m0(0, 1, 1);
  s.tiles.push_back({HomPoint(m0), HomPoint(Vec3(th * m0)), HomPoint(tp), HomPoint(p)});
  s.signature = crown_signature(false);
  s.signature.boundary[1].corners = {corner_order};
  s.side_pairings = compute_side_pairings(s, tol);
  s.check_relations(tol);
  return s;
}

}  // namespace

Structure solve_crown_a1(const EndSpec& theta, double full_inv, double fiber,
                         const Tolerances& tol) {
  SlotData sd = slot_of(theta, tol);
  if (sd.cone) fail(ErrorCode::BadInput, "A1 boundary end must be hyperbolic");
  return crown_a1_impl(crown_theta(sd.lam_hat, sd.tau_hat), full_inv, fiber, tol);
}

Structure solve_crown_a1_spectrum(const std::array<double, 3>& ev, double full_inv, double fiber,
                                  const Tolerances& tol) {
  return crown_a1_impl(theta_from_spectrum(ev), full_inv, fiber, tol);
}

Structure solve_crown_a2(const EndSpec& theta, int corner_order, std::optional<double> fiber,
                         const Tolerances& tol) {
  SlotData sd = slot_of(theta, tol);
  if (sd.cone) fail(ErrorCode::BadInput, "A2 boundary end must be hyperbolic");
  return crown_a2_impl(crown_theta(sd.lam_hat, sd.tau_hat), corner_order, fiber, tol);
}

Structure solve_crown_a2_spectrum(const std::array<double, 3>& ev, int corner_order,
                                  std::optional<double> fiber, const Tolerances& tol) {
  return crown_a2_impl(theta_from_spectrum(ev), corner_order, fiber, tol);
}

Structure solve_disk_a3(int cone_order, double full_inv, double fiber, const Tolerances& tol) {
  if (cone_order < 3) fail(ErrorCode::BadOrder, "A3 cone order must be >= 3");
  Mat3 th = rotation_of_order(cone_order).m;
  Vec3 x(1, 1, 1);
  Vec3 f1 = th.inverse() * x;
  Vec3 p, q;
  place_pair(f1, x, full_inv, fiber, p, q);
  Collineation T = rotation_of_order(cone_order);
  Collineation r =
      reflection_through(join(HomPoint(q), HomPoint(Vec3(th * p)), tol), HomPoint(x), tol);
  Structure s;
  s.type = "A3";
  s.orders = {cone_order};
  s.generators.emplace("T", T);
  s.generators.emplace("r", r);
  s.relations.push_back(repeat_word("T", cone_order));
  s.relations.push_back({GenRef{"r", false}, GenRef{"r", false}});
  s.fiber_params = {fiber};
  End cone;
  cone.spec = EndSpec::cone(cone_order);
  cone.gens = {"T"};
  End fe;
  fe.spec = EndSpec::full(full_inv);
  fe.gens = {"T~ r T", "r"};  // mirrors at the p and q endpoints
  s.ends = {cone, fe};
  s.tiles.push_back(
      {HomPoint(0, 0, 1), HomPoint(p), HomPoint(q), HomPoint(Vec3(th * p))});
  OrbifoldSignature sig;
  sig.cone_orders = {cone_order};
  BoundaryPattern bp;
  bp.kind = BoundaryPattern::Kind::Mixed;
  bp.segments = {BoundaryPattern::Segment::Mirror, BoundaryPattern::Segment::FullOrbifold};
  sig.boundary.push_back(bp);
  s.signature = sig;
  s.side_pairings = compute_side_pairings(s, tol);
  s.check_relations(tol);
  return s;
}

Structure solve_disk_a4(int corner_order_m, int cone_order_n, std::optional<double> fiber,
                        const Tolerances& tol) {
  if (corner_order_m < 2) fail(ErrorCode::BadOrder, "corner order must be >= 2");
  if (cone_order_n < 3) fail(ErrorCode::BadOrder, "A4 cone order must be >= 3");
  if (!(Rational(1, 2 * corner_order_m) + Rational(1, cone_order_n) < Rational(1, 2)))
    fail(ErrorCode::ConstraintViolated, "A4 requires 1/(2m) + 1/n < 1/2");
  if (corner_order_m == 2 && fiber.has_value())
    fail(ErrorCode::FiberArityMismatch, "order-two corner admits no fiber parameter");
  if (corner_order_m >= 3 && !fiber.has_value())
    fail(ErrorCode::FiberArityMismatch, "fiber parameter required for corner order >= 3");
  Mat3 th = rotation_of_order(cone_order_n).m;
  Vec3 p(1, 1, 1);
  Vec3 tp = th * p;
  Vec3 x;
  if (corner_order_m == 2) {
    Vec3 tip = th.inverse() * p;
    Vec3 t2p = th * tp;
    x = (tip.cross(p)).cross(tp.cross(t2p));
  } else {
    x = steiner_corner_point(th, p, corner_order_m, *fiber, Vec3(0, 0, 1), tol);
  }
  Collineation T = rotation_of_order(cone_order_n);
  Collineation r = reflection_through(join(HomPoint(p), HomPoint(tp), tol), HomPoint(x), tol);
  Structure s;
  s.type = "A4";
  s.orders = {corner_order_m, cone_order_n};
  s.generators.emplace("T", T);
  s.generators.emplace("r", r);
  s.relations.push_back(repeat_word("T", cone_order_n));
  s.relations.push_back({GenRef{"r", false}, GenRef{"r", false}});
  {
    Word w;
    for (int i = 0; i < corner_order_m; ++i) {
      w.push_back(GenRef{"r", false});
      w.push_back(GenRef{"T", false});
      w.push_back(GenRef{"r", false});
      w.push_back(GenRef{"T", true});
    }
    s.relations.push_back(w);
  }
  if (fiber) s.fiber_params = {*fiber};
  End cone;
  cone.spec = EndSpec::cone(cone_order_n);
  cone.gens = {"T"};
  End ce;
  ce.spec = EndSpec::corner(corner_order_m);
  ce.gens = {"T~ r T", "r"};
  s.ends = {cone, ce};
  s.tiles.push_back({HomPoint(0, 0, 1), HomPoint(p), HomPoint(tp)});
  OrbifoldSignature sig;
  sig.cone_orders = {cone_order_n};
  BoundaryPattern bp;
  bp.kind = BoundaryPattern::Kind::Mirror;
  bp.corners = {corner_order_m};
  sig.boundary.push_back(bp);
  s.signature = sig;
  s.side_pairings = compute_side_pairings(s, tol);
  s.check_relations(tol);
  return s;
}

Structure solve_hexagon_d1(double inv_e2, double inv_e4, double inv_e6, double fiber,
                           const Tolerances& tol) {
  for (double c : {inv_e2, inv_e4, inv_e6})
    if (!(c > 0.0 && c < 1.0))
      fail(ErrorCode::BadCrossRatio, "hexagon invariants must lie in (0, 1)");
  double t3 = 1.0 / (1.0 - inv_e2);
  double t5 = 1.0 / (1.0 - inv_e6);
  Vec3 v1(0, 0, 1), v2(1, 0, 1), v3(1, 1, 1), v6(0, 1, 1);
  Vec3 x1(0, 1, 0), x3(1, t3, 1), x5(0, t5, 1);
  Vec3 v4, v5;
  place_pair(x3, x5, inv_e4, fiber, v4, v5);
  Collineation r1 = reflection_through(join(HomPoint(v1), HomPoint(v2), tol), HomPoint(x1), tol);
  Collineation r3 = reflection_through(join(HomPoint(v3), HomPoint(v4), tol), HomPoint(x3), tol);
  Collineation r5 = reflection_through(join(HomPoint(v5), HomPoint(v6), tol), HomPoint(x5), tol);
  Structure s;
  s.type = "D1";
  s.generators.emplace("r1", r1);
  s.generators.emplace("r3", r3);
  s.generators.emplace("r5", r5);
  for (const char* g : {"r1", "r3", "r5"}) s.relations.push_back(repeat_word(g, 2));
  s.fiber_params = {fiber};
  auto full_end = [&](double inv, const char* ga, const char* gb) {
    End e;
    e.spec = EndSpec::full(inv);
    e.gens = {ga, gb};
    return e;
  };
  s.ends = {full_end(inv_e2, "r1", "r3"), full_end(inv_e4, "r3", "r5"),
            full_end(inv_e6, "r5", "r1")};
  s.tiles.push_back({HomPoint(v1), HomPoint(v2), HomPoint(v3), HomPoint(v4), HomPoint(v5),
                     HomPoint(v6)});
  OrbifoldSignature sig;
  BoundaryPattern bp;
  bp.kind = BoundaryPattern::Kind::Mixed;
  for (int i = 0; i < 3; ++i) {
    bp.segments.push_back(BoundaryPattern::Segment::Mirror);
    bp.segments.push_back(BoundaryPattern::Segment::FullOrbifold);
  }
  sig.boundary.push_back(bp);
  s.signature = sig;
  s.side_pairings = compute_side_pairings(s, tol);
  s.check_relations(tol);
  return s;
}

namespace {

// conic through four points with prescribed tangent at the first
Mat3 conic_4pts_tangent(const std::array<Vec3, 4>& pts, const Vec3& tangent_at_first) {
  Eigen::Matrix<double, 7, 6> rows = Eigen::Matrix<double, 7, 6>::Zero();
  auto point_row = [](const Vec3& xin) {
    Vec3 x = xin / xin.cwiseAbs().maxCoeff();
    Eigen::Matrix<double, 1, 6> r;
    r << x[0] * x[0], x[1] * x[1], x[2] * x[2], 2 * x[0] * x[1], 2 * x[0] * x[2],
        2 * x[1] * x[2];
    return r;
  };
  for (int i = 0; i < 4; ++i) rows.row(i) = point_row(pts[i]);
  // tangency: Q x parallel to t  =>  (Qx) x t = 0 (three rows of rank two)
  const Vec3& x = pts[0];
  auto qx_row = [&](int j) {
    // (Qx)_j as a linear functional of q = (q00,q11,q22,q01,q02,q12)
    Eigen::Matrix<double, 1, 6> r = Eigen::Matrix<double, 1, 6>::Zero();
    static const int idx[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
    for (int c = 0; c < 3; ++c) r[idx[j][c]] += x[c];
    return r;
  };
  const Vec3& t = tangent_at_first;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    rows.row(4 + i) = qx_row(j) * t[k] - qx_row(k) * t[j];
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 7, 6>> svd(rows, Eigen::ComputeFullV);
  Eigen::Matrix<double, 6, 1> q = svd.matrixV().col(5);
  Mat3 Q;
  Q << q[0], q[3], q[4], q[3], q[1], q[5], q[4], q[5], q[2];
  return Q / Q.cwiseAbs().maxCoeff();
}

// second intersection of the line through `anchor` (on the conic) and dir
Vec3 conic_second_point(const Mat3& Q, const Vec3& anchor, const Vec3& through) {
  Vec3 d = through;
  double qa = d.dot(Q * d);
  double qb = d.dot(Q * anchor);
  if (std::abs(qa) < 1e-16) return Vec3::Zero();
  double t = -2.0 * qb / qa;
  return anchor + t * d;
}

bool polygon_convex_chart(const std::vector<Vec3>& pts) {
  int n = (int)pts.size();
  double sign = 0;
  for (int i = 0; i < n; ++i) {
    const Vec3 &a = pts[i], &b = pts[(i + 1) % n], &c = pts[(i + 2) % n];
    if (std::abs(a[2]) < 1e-12 || std::abs(b[2]) < 1e-12 || std::abs(c[2]) < 1e-12) return false;
    double ax = a[0] / a[2], ay = a[1] / a[2];
    double bx = b[0] / b[2], by = b[1] / b[2];
    double cx = c[0] / c[2], cy = c[1] / c[2];
    double cr = (bx - ax) * (cy - by) - (by - ay) * (cx - bx);
    if (std::abs(cr) < 1e-13) return false;
    if (sign == 0) sign = cr > 0 ? 1 : -1;
    else if (cr * sign < 0) return false;
  }
  return true;
}

double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return a.cross(b).dot(c); }

// projective membership in the region cut out by the polygon's edge lines that
// contains the witness points (one per edge); sign pattern up to a global flip
bool same_region(const Vec3& x, const std::vector<std::pair<std::pair<Vec3, Vec3>, Vec3>>& edges) {
  int sign = 0;
  for (const auto& [pq, w] : edges) {
    double s = det3(pq.first, pq.second, x) * det3(pq.first, pq.second, w);
    if (std::abs(s) < 1e-16) return false;
    int si = s > 0 ? 1 : -1;
    if (sign == 0) sign = si;
    else if (si != sign) return false;
  }
  return true;
}

}  // namespace

Structure solve_pentagon_d2(int corner_order_n, double inv_e1, double inv_e4,
                            std::optional<double> fiber, const Tolerances& tol) {
  if (corner_order_n < 2) fail(ErrorCode::BadOrder, "corner order must be >= 2");
  for (double c : {inv_e1, inv_e4})
    if (!(c > 0.0 && c < 1.0))
      fail(ErrorCode::BadCrossRatio, "pentagon invariants must lie in (0, 1)");
  if (corner_order_n == 2 && fiber.has_value())
    fail(ErrorCode::FiberArityMismatch, "order-two corner admits no fiber parameter");
  if (corner_order_n >= 3 && !fiber.has_value())
    fail(ErrorCode::FiberArityMismatch, "fiber parameter required for corner order >= 3");
  Vec3 v1(0, 0, 1), v2(1, 0, 1), v4(1, 1, 1), v5(0, 1, 1);
  double t2 = 1.0 / (1.0 - inv_e1);
  double t3 = 1.0 / (1.0 - inv_e4);
  Vec3 x5(1, 0, 0), x2(t2, 0, 1), x3(t3, 1, 1);
  Vec3 v3;
  if (corner_order_n == 2) {
    v3 = (x2.cross(v4)).cross(x3.cross(v2));
  } else {
    double k = corner_cross_ratio(corner_order_n);
    // tangent at x2 from the Chasles invariant, then a linear conic fit
    Vec3 u = x2.cross(v2), vv = x2.cross(v4);
    Vec3 z = x2.cross(x3);
    Eigen::Matrix<double, 3, 2> M;
    M.col(0) = u;
    M.col(1) = vv;
    Eigen::Vector2d zc = M.colPivHouseholderQr().solve(z);
    Vec3 tan2 = zc[0] * u + (k * zc[1]) * vv;
    Mat3 Q = conic_4pts_tangent({x2, x3, v2, v4}, tan2);
    // admissible arc: inside the triangle (x2, x3, x5), outside the
    // quadrilateral (v1, v2, v4, v5), and the pentagon stays convex
    Vec3 pen_a = x2.cross(x3), pen_b = x2.cross(Vec3(0, 1, 0));
    auto candidate = [&](double thp) {
      Vec3 l = std::cos(thp) * pen_a + std::sin(thp) * pen_b;
      return conic_second_point(Q, x2, l.cross(Vec3(0.618, 0.414, 0.997)));
    };
    Vec3 quad_w(0.5, 0.5, 1.0);
    auto admissible = [&](const Vec3& X) {
      if (X.cwiseAbs().maxCoeff() < 1e-12 || std::abs(X[2]) < 1e-10 * X.cwiseAbs().maxCoeff())
        return false;
      bool in_tri = same_region(X, {{{x2, x3}, x5}, {{x3, x5}, x2}, {{x5, x2}, x3}});
      bool in_quad = same_region(
          X, {{{v1, v2}, quad_w}, {{v2, v4}, quad_w}, {{v4, v5}, quad_w}, {{v5, v1}, quad_w}});
      return in_tri && !in_quad && polygon_convex_chart({v1, v2, X / X[2], v4, v5});
    };
    const int N = 720;
    std::vector<std::pair<double, double>> runs;  // contiguous valid theta runs
    double run_start = -1.0;
    for (int i = 1; i <= N; ++i) {
      double thp = i * M_PI / N;
      bool ok = i < N && admissible(candidate(thp));
      if (ok && run_start < 0) run_start = thp;
      if (!ok && run_start >= 0) {
        runs.push_back({run_start, (i - 1) * M_PI / N});
        run_start = -1.0;
      }
    }
    if (runs.empty()) fail(ErrorCode::DegenerateLocus, "no admissible pentagon arc");
    auto longest = *std::max_element(runs.begin(), runs.end(), [](auto& a, auto& b) {
      return a.second - a.first < b.second - b.first;
    });
    double w = 1.0 / (1.0 + std::exp(-*fiber));
    v3 = candidate(longest.first + (longest.second - longest.first) * w);
  }
  HomPoint V3(v3);
  Collineation r2 = reflection_through(join(HomPoint(v2), V3, tol), HomPoint(x2), tol);
  Collineation r3 = reflection_through(join(V3, HomPoint(v4), tol), HomPoint(x3), tol);
  Collineation r5 = reflection_through(join(HomPoint(v5), HomPoint(v1), tol), HomPoint(x5), tol);
  Structure s;
  s.type = "D2";
  s.orders = {corner_order_n};
  s.generators.emplace("r2", r2);
  s.generators.emplace("r3", r3);
  s.generators.emplace("r5", r5);
  for (const char* g : {"r2", "r3", "r5"}) s.relations.push_back(repeat_word(g, 2));
  s.relations.push_back(power_word("r2", "r3", corner_order_n));
  if (fiber) s.fiber_params = {*fiber};
  End e1;
  e1.spec = EndSpec::full(inv_e1);
  e1.gens = {"r5", "r2"};
  End e4;
  e4.spec = EndSpec::full(inv_e4);
  e4.gens = {"r3", "r5"};
  End ce;
  ce.spec = EndSpec::corner(corner_order_n);
  ce.gens = {"r2", "r3"};
  s.ends = {e1, e4, ce};
  s.tiles.push_back({HomPoint(v1), HomPoint(v2), V3, HomPoint(v4), HomPoint(v5)});
  OrbifoldSignature sig;
  BoundaryPattern bp;
  bp.kind = BoundaryPattern::Kind::Mixed;
  using Seg = BoundaryPattern::Segment;
  bp.segments = {Seg::Mirror, Seg::Mirror, Seg::FullOrbifold, Seg::Mirror, Seg::FullOrbifold};
  bp.corners = {corner_order_n};
  sig.boundary.push_back(bp);
  s.signature = sig;
  s.side_pairings = compute_side_pairings(s, tol);
  s.check_relations(tol);
  return s;
}

Structure solve_quad_d3(int order_m, int order_n, double inv_e1, std::optional<double> fiber,
                        const Tolerances& tol) {
  if (order_m < 2 || order_n < 2) fail(ErrorCode::BadOrder, "corner orders must be >= 2");
  if (order_m == 2 && order_n == 2)
    fail(ErrorCode::BothOrdersTwo, "both corners of order two gives chi = 0");
  if (!(inv_e1 > 0.0 && inv_e1 < 1.0))
    fail(ErrorCode::BadCrossRatio, "quadrilateral invariant must lie in (0, 1)");
  bool need_fiber = order_m >= 3 && order_n >= 3;
  if (need_fiber && !fiber.has_value())
    fail(ErrorCode::FiberArityMismatch, "fiber parameter required when both orders >= 3");
  if (!need_fiber && fiber.has_value())
    fail(ErrorCode::FiberArityMismatch, "an order-two corner admits no fiber parameter");
  Vec3 v1(0, 0, 1), v2(1, 0, 1), v3(1, 1, 1), v4(0, 1, 1);
  double c = inv_e1;
  Vec3 x2, x4;
  if (order_n == 2) {
    x2 = Vec3(1, 0, 0);  // forced onto l3 by the commuting corner at v3
    x4 = Vec3(-c / (1.0 - c), 0, 1);
  } else if (order_m == 2) {
    x4 = Vec3(1, 0, 0);  // forced onto l3 by the commuting corner at v4
    x2 = Vec3(1.0 / (1.0 - c), 0, 1);
  } else {
    double u2 = 1.0 / (1.0 - c) + std::exp(*fiber);
    double u4 = c * u2 / (1.0 - u2 * (1.0 - c));
    x2 = Vec3(u2, 0, 1);
    x4 = Vec3(u4, 0, 1);
  }
  // x3 = meet of the corner-condition lines through v4 (order m) and v3 (order n)
  Vec3 line_a, line_b;
  if (order_m > 2) {
    Vec3 u = v4.cross(v3), vv = v4.cross(v1);
    Eigen::Matrix<double, 3, 2> M;
    M.col(0) = u;
    M.col(1) = vv;
    Eigen::Vector2d z = M.colPivHouseholderQr().solve(Vec3(v4.cross(x4)));
    double km = corner_cross_ratio(order_m);
    line_a = (z[0]) * u + (km * z[1]) * vv;
  } else {
    line_a = v4.cross(v1);  // l4: x3 lies on it when m = 2
  }
  if (order_n > 2) {
    Vec3 u = v3.cross(v2), vv = v3.cross(v4);
    Eigen::Matrix<double, 3, 2> M;
    M.col(0) = u;
    M.col(1) = vv;
    Eigen::Vector2d y = M.colPivHouseholderQr().solve(Vec3(v3.cross(x2)));
    double kn = corner_cross_ratio(order_n);
    line_b = (kn * y[0]) * u + y[1] * vv;
  } else {
    line_b = v3.cross(v2);  // l2: x3 lies on it when n = 2
  }
  Vec3 x3 = line_a.cross(line_b);
  Collineation r2 = reflection_through(join(HomPoint(v2), HomPoint(v3), tol), HomPoint(x2), tol);
  Collineation r3 = reflection_through(join(HomPoint(v3), HomPoint(v4), tol), HomPoint(x3), tol);
  Collineation r4 = reflection_through(join(HomPoint(v4), HomPoint(v1), tol), HomPoint(x4), tol);
  Structure s;
  s.type = "D3";
  s.orders = {order_m, order_n};
  s.generators.emplace("r2", r2);
  s.generators.emplace("r3", r3);
  s.generators.emplace("r4", r4);
  for (const char* g : {"r2", "r3", "r4"}) s.relations.push_back(repeat_word(g, 2));
  s.relations.push_back(power_word("r2", "r3", order_n));
  s.relations.push_back(power_word("r3", "r4", order_m));
  if (fiber) s.fiber_params = {*fiber};
  End e1;
  e1.spec = EndSpec::full(inv_e1);
  e1.gens = {"r4", "r2"};
  End cm;
  cm.spec = EndSpec::corner(order_m);
  cm.gens = {"r3", "r4"};
  End cn;
  cn.spec = EndSpec::corner(order_n);
  cn.gens = {"r2", "r3"};
  s.ends = {e1, cm, cn};
  s.tiles.push_back({HomPoint(v1), HomPoint(v2), HomPoint(v3), HomPoint(v4)});
  OrbifoldSignature sig;
  BoundaryPattern bp;
  bp.kind = BoundaryPattern::Kind::Mixed;
  using Seg = BoundaryPattern::Segment;
  bp.segments = {Seg::Mirror, Seg::Mirror, Seg::Mirror, Seg::FullOrbifold};
  bp.corners = {order_n, order_m};
  sig.boundary.push_back(bp);
  s.signature = sig;
  s.side_pairings = compute_side_pairings(s, tol);
  s.check_relations(tol);
  return s;
}

Structure solve_triangle_d4(int p, int q, int r, std::optional<double> mu,
                            const Tolerances& tol) {
  for (int o : {p, q, r})
    if (o < 2) fail(ErrorCode::BadOrder, "corner orders must be >= 2");
  if (!(Rational(1, p) + Rational(1, q) + Rational(1, r) < Rational(1)))
    fail(ErrorCode::ConstraintViolated, "triangle group requires 1/p + 1/q + 1/r < 1");
  bool rigid = std::min({p, q, r}) == 2;
  if (rigid && mu.has_value())
    fail(ErrorCode::FiberArityMismatch, "an order-two corner fixes the structure; omit mu");
  if (!rigid && !mu.has_value())
    fail(ErrorCode::FiberArityMismatch, "mu parameter required when all orders >= 3");
  double m = rigid ? 1.0 : *mu;
  if (!(m > 0.0)) fail(ErrorCode::BadParameter, "mu must be positive");
  double s6 = std::pow(m, 1.0 / 6.0);
  double cp = std::cos(M_PI / p), cq = std::cos(M_PI / q), cr = std::cos(M_PI / r);
  Mat3 cart;
  cart << 2.0, -2.0 * cp * s6, -2.0 * cr / s6,
      -2.0 * cp / s6, 2.0, -2.0 * cq * s6,
      -2.0 * cr * s6, -2.0 * cq / s6, 2.0;
  std::array<Collineation, 3> refl = {
      Collineation(Mat3(Mat3::Identity() - Vec3::Unit(0) * cart.row(0))),
      Collineation(Mat3(Mat3::Identity() - Vec3::Unit(1) * cart.row(1))),
      Collineation(Mat3(Mat3::Identity() - Vec3::Unit(2) * cart.row(2)))};
  Structure s;
  s.type = "D4";
  s.orders = {p, q, r};
  s.generators.emplace("r1", refl[0]);
  s.generators.emplace("r2", refl[1]);
  s.generators.emplace("r3", refl[2]);
  for (const char* g : {"r1", "r2", "r3"}) s.relations.push_back(repeat_word(g, 2));
  s.relations.push_back(power_word("r1", "r2", p));
  s.relations.push_back(power_word("r2", "r3", q));
  s.relations.push_back(power_word("r3", "r1", r));
  if (!rigid) s.fiber_params = {m};
  End e1;
  e1.spec = EndSpec::corner(p);
  e1.gens = {"r1", "r2"};
  End e2;
  e2.spec = EndSpec::corner(q);
  e2.gens = {"r2", "r3"};
  End e3;
  e3.spec = EndSpec::corner(r);
  e3.gens = {"r3", "r1"};
  s.ends = {e1, e2, e3};
  // chamber: vertices are pairwise meets of the mirror planes, signed into the
  // positive side of the remaining wall
  Vec3 b1 = cart.row(0), b2 = cart.row(1), b3 = cart.row(2);
  Vec3 w12 = b1.cross(b2), w23 = b2.cross(b3), w31 = b3.cross(b1);
  if (b3.dot(w12) < 0) w12 = -w12;
  if (b1.dot(w23) < 0) w23 = -w23;
  if (b2.dot(w31) < 0) w31 = -w31;
  s.tiles.push_back({HomPoint(w12), HomPoint(w23), HomPoint(w31)});
  OrbifoldSignature sig;
  BoundaryPattern bp;
  bp.kind = BoundaryPattern::Kind::Mirror;
  bp.corners = {p, q, r};
  sig.boundary.push_back(bp);
  s.signature = sig;
  s.side_pairings = compute_side_pairings(s, tol);
  s.check_relations(tol);
  return s;
}

// ---- invariant extraction ---------------------------------------------------

double full_orbifold_invariant(const Collineation& ra, const Collineation& rb,
                               const Tolerances& tol) {
  HomPoint fa = reflection_center(ra, tol);
  HomPoint fb = reflection_center(rb, tol);
  HomLine l = join(fa, fb, tol);
  HomPoint pa = meet(reflection_axis(ra, tol), l, tol);
  HomPoint pb = meet(reflection_axis(rb, tol), l, tol);
  return cross_ratio_points(fa, fb, pa, pb, tol);
}

std::vector<EndSpec> extract_invariants(const Structure& s, const Tolerances& tol) {
  s.check_relations(tol);
  std::vector<EndSpec> out;
  auto word_of = [&](const std::string& expr) {
    Word w;
    size_t pos = 0;
    while (pos < expr.size()) {
      size_t sp = expr.find(' ', pos);
      std::string tok = expr.substr(pos, sp == std::string::npos ? sp : sp - pos);
      if (!tok.empty()) w.push_back(GenRef::parse(tok));
      if (sp == std::string::npos) break;
      pos = sp + 1;
    }
    return w;
  };
  for (const End& e : s.ends) {
    switch (e.spec.kind) {
      case EndSpec::Kind::Hyp: {
        Collineation g = s.evaluate(word_of(e.gens.at(0)));
        CollineationClass cls = classify(g, tol);
        if (cls.kind != CollineationKind::Hyperbolic)
          fail(ErrorCode::MalformedStructure, "closed end holonomy is not hyperbolic");
        out.push_back(EndSpec::hyp(cls.lambda, cls.tau));
        break;
      }
      case EndSpec::Kind::Cone: {
        Collineation g = s.evaluate(word_of(e.gens.at(0)));
        Collineation pw = g;
        int n = e.spec.order;
        Collineation acc = g;
        for (int i = 1; i < n; ++i) acc = acc * g;
        (void)pw;
        if (acc.identity_residual() > tol.relation_residual)
          fail(ErrorCode::MalformedStructure, "cone relation fails at the stated order");
        out.push_back(EndSpec::cone(n));
        break;
      }
      case EndSpec::Kind::Corner: {
        Collineation ra = s.evaluate(word_of(e.gens.at(0)));
        Collineation rb = s.evaluate(word_of(e.gens.at(1)));
        Collineation prod = ra * rb;
        Collineation acc = prod;
        for (int i = 1; i < e.spec.order; ++i) acc = acc * prod;
        if (acc.identity_residual() > tol.relation_residual)
          fail(ErrorCode::MalformedStructure, "corner relation fails at the stated order");
        out.push_back(EndSpec::corner(e.spec.order));
        break;
      }
      case EndSpec::Kind::FullOrbifold: {
        Collineation ra = s.evaluate(word_of(e.gens.at(0)));
        Collineation rb = s.evaluate(word_of(e.gens.at(1)));
        out.push_back(EndSpec::full(full_orbifold_invariant(ra, rb, tol)));
        break;
      }
    }
  }
  return out;
}

}  // namespace orbiproj
