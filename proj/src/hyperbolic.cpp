#include "orbiproj/hyperbolic.hpp"

#include <cmath>

namespace orbiproj {

namespace {

const Mat3 kJ = (Mat3() << 1, 0, 0, 0, 1, 0, 0, 0, -1).finished();

double ip(const Vec3& a, const Vec3& b) { return a.dot(kJ * b); }

// Lorentz-orthogonal direction to the span of u, v
Vec3 lorentz_cross(const Vec3& u, const Vec3& v) { return kJ * u.cross(v); }

void require(bool cond, const std::string& violated) {
  if (!cond) fail(ErrorCode::DomainViolation, "violated: " + violated);
}

}  // namespace

TriangleQuantity generalized_triangle(const GeneralizedTriangleSpec& spec) {
  using K = GeneralizedTriangleSpec::Kind;
  double a = spec.alpha, b = spec.beta, g = spec.gamma;
  TriangleQuantity out;
  switch (spec.kind) {
    case K::Hexagon:
      require(a > 0 && b > 0 && g > 0, "alpha, beta, gamma > 0");
      out.value = (std::cosh(a) * std::cosh(b) + std::cosh(g)) / (std::sinh(a) * std::sinh(b));
      out.measure = std::acosh(out.value);
      return out;
    case K::Pentagon:
      require(a > 0 && b > 0, "alpha, beta > 0");
      require(g > 0 && g < M_PI, "0 < gamma < pi");
      out.value = (std::cosh(a) * std::cosh(b) + std::cos(g)) / (std::sinh(a) * std::sinh(b));
      require(out.value > 1.0, "cosh C > 1 (sides too short for the angle)");
      out.measure = std::acosh(out.value);
      return out;
    case K::Quadrilateral:
      // gamma is a side length; alpha, beta are the two non-right angles
      require(g > 0, "gamma > 0");
      require(a > 0 && a < M_PI && b > 0 && b < M_PI, "alpha, beta in (0, pi)");
      require(a + b < M_PI, "alpha + beta < pi");
      out.is_sinh = true;
      out.value = (std::cosh(g) * std::cos(b) + std::cos(a)) / (std::sin(b) * std::sinh(g));
      require(out.value > 0.0, "cosh(gamma) cos(beta) + cos(alpha) > 0");
      out.measure = std::asinh(out.value);
      return out;
    case K::Triangle:
      require(a > 0 && a < M_PI && b > 0 && b < M_PI && g > 0 && g < M_PI,
              "alpha, beta, gamma in (0, pi)");
      require(a + b + g < M_PI, "alpha + beta + gamma < pi");
      out.value = (std::cos(a) * std::cos(b) + std::cos(g)) / (std::sin(a) * std::sin(b));
      out.measure = std::acosh(out.value);
      return out;
  }
  fail(ErrorCode::BadInput, "unknown generalized triangle kind");
}

Collineation lorentz_reflection(const Vec3& normal, const Tolerances& tol) {
  double nn = ip(normal, normal);
  if (nn <= tol.projective_eq * normal.squaredNorm())
    fail(ErrorCode::NonSpacelike, "reflection normal must be spacelike");
  Mat3 m = Mat3::Identity() - (2.0 / nn) * normal * (kJ * normal).transpose();
  return Collineation(m);
}

double hilbert_distance(const HomPoint& a, const HomPoint& b) {
  // chord endpoints on the conic x^2 + y^2 = z^2, then half the log cross-ratio
  Vec3 u = a.v, v = b.v;
  double quu = ip(u, u), quv = ip(u, v), qvv = ip(v, v);
  // points u + t v on the conic: quu + 2 t quv + t^2 qvv = 0
  double disc = quv * quv - quu * qvv;
  if (disc <= 0) fail(ErrorCode::BadInput, "points do not span a secant chord");
  double t1 = (-quv + std::sqrt(disc)) / qvv;
  double t2 = (-quv - std::sqrt(disc)) / qvv;
  HomPoint x1(Vec3(u + t1 * v)), x2(Vec3(u + t2 * v));
  double cr = cross_ratio_points(x1, x2, a, b);
  return 0.5 * std::abs(std::log(std::abs(cr)));
}

namespace {

// Solve <n,u> = cu, <n,v> = cv, <n,n> = 1; the two solutions are p +- t d.
bool solve_normal(const Vec3& u, const Vec3& v, double cu, double cv, Vec3 out[2]) {
  Eigen::Matrix2d gram;
  gram << ip(u, u), ip(u, v), ip(v, u), ip(v, v);
  Eigen::Vector2d rhs(cu, cv);
  if (std::abs(gram.determinant()) < 1e-12) return false;
  Eigen::Vector2d ab = gram.inverse() * rhs;
  Vec3 p = ab[0] * u + ab[1] * v;
  Vec3 d = lorentz_cross(u, v);
  double dd = ip(d, d), pp = ip(p, p);
  if (std::abs(dd) < 1e-14) return false;
  double t2 = (1.0 - pp) / dd;
  if (t2 < 0) return false;
  double t = std::sqrt(t2);
  out[0] = p + t * d;
  out[1] = p - t * d;
  return true;
}

struct ChainSpec {
  // per side k >= 2: products against side k-1 and against an earlier side
  struct Step {
    double c_prev;   // <n_k, n_{k-1}>
    int other;       // index of the second constrained side
    double c_other;  // <n_k, n_other>
  };
  std::vector<Step> steps;                 // for sides 2..k-1
  std::vector<std::pair<std::pair<int, int>, double>> checks;  // residual checks
};

// timelike meet of two side normals, future-normalized
bool vertex_of(const Vec3& ni, const Vec3& nj, Vec3& out) {
  Vec3 w = lorentz_cross(ni, nj);
  double ww = ip(w, w);
  if (ww >= -1e-12) return false;
  w /= std::sqrt(-ww);
  if (w[2] < 0) w = -w;
  out = w;
  return true;
}

bool assemble(const std::vector<Vec3>& normals, KleinPolygon& poly) {
  int k = (int)normals.size();
  poly.vertices.clear();
  poly.side_normals = normals;
  poly.side_reflections.clear();
  std::vector<Vec3> verts(k);
  for (int i = 0; i < k; ++i) {
    // vertex i = meet of side i-1 and side i (so side i runs vertex i -> i+1)
    if (!vertex_of(normals[(i + k - 1) % k], normals[i], verts[i])) return false;
  }
  // convexity in the Klein chart with consistent turning
  double sign = 0.0;
  for (int i = 0; i < k; ++i) {
    Eigen::Vector2d a(verts[i][0] / verts[i][2], verts[i][1] / verts[i][2]);
    Eigen::Vector2d b(verts[(i + 1) % k][0] / verts[(i + 1) % k][2],
                      verts[(i + 1) % k][1] / verts[(i + 1) % k][2]);
    Eigen::Vector2d c(verts[(i + 2) % k][0] / verts[(i + 2) % k][2],
                      verts[(i + 2) % k][1] / verts[(i + 2) % k][2]);
    double cr = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
    if (std::abs(cr) < 1e-14) return false;
    if (sign == 0.0) sign = cr > 0 ? 1.0 : -1.0;
    else if (cr * sign < 0) return false;
  }
  for (int i = 0; i < k; ++i) poly.vertices.push_back(HomPoint(verts[i]));
  for (int i = 0; i < k; ++i) poly.side_reflections.push_back(lorentz_reflection(normals[i]));
  return true;
}

// Build a polygon from the first two normals plus chained constraints, trying
// both branch signs at every step; first assembly that closes convex wins.
KleinPolygon chain_build(const Vec3& n0, const Vec3& n1, const ChainSpec& spec,
                         double check_tol) {
  int extra = (int)spec.steps.size();
  int total = 2 + extra;
  for (int mask = 0; mask < (1 << extra); ++mask) {
    std::vector<Vec3> normals{n0, n1};
    bool ok = true;
    for (int s = 0; s < extra && ok; ++s) {
      const auto& st = spec.steps[s];
      Vec3 cand[2];
      if (!solve_normal(normals[s + 1], normals[st.other], st.c_prev, st.c_other, cand)) {
        ok = false;
        break;
      }
      normals.push_back(cand[(mask >> s) & 1]);
    }
    if (!ok) continue;
    bool checks_ok = true;
    for (const auto& [pair, target] : spec.checks) {
      double got = ip(normals[pair.first], normals[pair.second]);
      if (std::abs(got - target) > check_tol * std::max(1.0, std::abs(target))) {
        checks_ok = false;
        break;
      }
    }
    if (!checks_ok) continue;
    KleinPolygon poly;
    if ((int)normals.size() == total && assemble(normals, poly)) return poly;
  }
  fail(ErrorCode::DomainViolation, "no convex realization of the generalized triangle data");
}

}  // namespace

double klein_angle(const KleinPolygon& poly, int i, int j) {
  double c = -ip(poly.side_normals[i], poly.side_normals[j]);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double full_orbifold_invariant_from_length(double L) {
  double c = std::cosh(L);
  return 1.0 / (c * c);
}

KleinPolygon build_generalized_triangle(const GeneralizedTriangleSpec& spec,
                                        const Tolerances& tol) {
  using K = GeneralizedTriangleSpec::Kind;
  const double check_tol = 1e-7;
  generalized_triangle(spec);  // domain validation
  double a = spec.alpha, b = spec.beta, g = spec.gamma;
  switch (spec.kind) {
    case K::Triangle: {
      // vertices placed directly from the angle law of cosines
      auto side = [&](double opp, double adj1, double adj2) {
        return std::acosh((std::cos(opp) + std::cos(adj1) * std::cos(adj2)) /
                          (std::sin(adj1) * std::sin(adj2)));
      };
      double c_ab = side(g, a, b);  // side between the alpha and beta vertices
      double b_ac = side(b, a, g);  // side between alpha and gamma vertices
      Vec3 va(0, 0, 1);
      Vec3 vb(std::sinh(c_ab), 0, std::cosh(c_ab));
      Vec3 vc(std::sinh(b_ac) * std::cos(a), std::sinh(b_ac) * std::sin(a), std::cosh(b_ac));
      KleinPolygon poly;
      std::vector<Vec3> verts{va, vb, vc};
      Vec3 centroid = va + vb + vc;
      for (auto& v : verts) poly.vertices.push_back(HomPoint(v));
      for (int i = 0; i < 3; ++i) {
        Vec3 n = lorentz_cross(verts[i], verts[(i + 1) % 3]);
        n /= std::sqrt(ip(n, n));
        if (ip(n, centroid) > 0) n = -n;  // outward
        poly.side_normals.push_back(n);
        poly.side_reflections.push_back(lorentz_reflection(n, tol));
      }
      return poly;
    }
    case K::Quadrilateral: {
      // sides cyclic [A, gamma, B, C]: A perp gamma, gamma perp B,
      // B/C meet at angle alpha, C/A meet at angle beta
      Vec3 nA(0, -1, 0);   // line y = 0, interior above
      Vec3 ngam(-1, 0, 0); // line x = 0, interior to the right
      ChainSpec cs;
      cs.steps.push_back({0.0, 0, -std::cosh(g)});        // B: perp gamma, <B,A> = -cosh g
      cs.steps.push_back({-std::cos(a), 0, -std::cos(b)}); // C: <C,B> = -cos a, <C,A> = -cos b
      return chain_build(nA, ngam, cs, check_tol);
    }
    case K::Pentagon: {
      double C = generalized_triangle(spec).measure;
      // sides cyclic [alpha, C, beta, A, B]
      Vec3 nal(0, -1, 0);
      Vec3 nC(-1, 0, 0);
      ChainSpec cs;
      cs.steps.push_back({0.0, 0, -std::cosh(C)});          // beta: perp C, <beta,alpha> = -cosh C
      cs.steps.push_back({0.0, 1, -std::cosh(b)});          // A: perp beta, <A,C> = -cosh beta_len
      cs.steps.push_back({-std::cos(g), 0, 0.0});           // B: <B,A> = -cos gamma, perp alpha
      cs.checks.push_back({{4, 1}, -std::cosh(a)});         // <B,C> = -cosh alpha_len
      return chain_build(nal, nC, cs, check_tol);
    }
    case K::Hexagon: {
      GeneralizedTriangleSpec sC{K::Hexagon, a, b, g};
      double C = generalized_triangle(sC).measure;
      GeneralizedTriangleSpec sA{K::Hexagon, g, b, a};  // A flanked by gamma, beta
      double A = generalized_triangle(sA).measure;
      GeneralizedTriangleSpec sB{K::Hexagon, a, g, b};  // B flanked by alpha, gamma
      double B = generalized_triangle(sB).measure;
      // sides cyclic [A, beta, C, alpha, B, gamma], all right angles
      Vec3 nA(0, -1, 0);
      Vec3 nbe(-1, 0, 0);
      ChainSpec cs;
      cs.steps.push_back({0.0, 0, -std::cosh(b)});  // C: perp beta, <C,A> = -cosh beta
      cs.steps.push_back({0.0, 1, -std::cosh(C)});  // alpha: perp C, <alpha,beta> = -cosh C
      cs.steps.push_back({0.0, 2, -std::cosh(a)});  // B: perp alpha, <B,C> = -cosh alpha
      cs.steps.push_back({0.0, 0, 0.0});            // gamma: perp B, perp A
      cs.checks.push_back({{5, 1}, -std::cosh(A)}); // <gamma,beta> = -cosh A
      cs.checks.push_back({{3, 5}, -std::cosh(B)}); // <alpha,gamma> = -cosh B
      cs.checks.push_back({{4, 0}, -std::cosh(g)}); // <B,A> = -cosh gamma
      return chain_build(nA, nbe, cs, check_tol);
    }
  }
  fail(ErrorCode::BadInput, "unknown generalized triangle kind");
}

Structure build_hyperbolic_elementary(const std::string& tag, const std::vector<int>& orders,
                                      const std::vector<double>& lengths,
                                      const Tolerances& tol) {
  using K = GeneralizedTriangleSpec::Kind;
  Structure s;
  s.provenance = nullptr;
  auto check_orders = [&](size_t n) {
    if (orders.size() != n) fail(ErrorCode::BadInput, "wrong corner order count for " + tag);
    for (int o : orders)
      if (o < 2) fail(ErrorCode::BadOrder, "corner order must be >= 2");
  };
  auto check_lengths = [&](size_t n) {
    if (lengths.size() != n) fail(ErrorCode::BadInput, "wrong boundary length count for " + tag);
    for (double l : lengths)
      if (!(l > 0)) fail(ErrorCode::DomainViolation, "violated: boundary length > 0");
  };

  KleinPolygon poly;
  if (tag == "D1") {
    check_orders(0);
    check_lengths(3);
    poly = build_generalized_triangle({K::Hexagon, lengths[0], lengths[1], lengths[2]}, tol);
    // sides [A, beta, C, alpha, B, gamma]; silvered capitals at 0, 2, 4
    s.type = "hypD1";
    s.generators.emplace("rA", poly.side_reflections[0]);
    s.generators.emplace("rC", poly.side_reflections[2]);
    s.generators.emplace("rB", poly.side_reflections[4]);
    for (const char* n : {"rA", "rC", "rB"})
      s.relations.push_back({GenRef{n, false}, GenRef{n, false}});
    auto add_full = [&](double len, const char* g1, const char* g2) {
      End e;
      e.spec = EndSpec::full(full_orbifold_invariant_from_length(len));
      e.gens = {g1, g2};
      s.ends.push_back(e);
    };
    // alpha (index 3) flanked by C and B; beta (1) by A and C; gamma (5) by B and A
    add_full(lengths[0], "rC", "rB");
    add_full(lengths[1], "rA", "rC");
    add_full(lengths[2], "rB", "rA");
    OrbifoldSignature sig;
    BoundaryPattern bp;
    bp.kind = BoundaryPattern::Kind::Mixed;
    for (int i = 0; i < 3; ++i) {
      bp.segments.push_back(BoundaryPattern::Segment::Mirror);
      bp.segments.push_back(BoundaryPattern::Segment::FullOrbifold);
    }
    sig.boundary.push_back(bp);
    s.signature = sig;
  } else if (tag == "D2") {
    check_orders(1);
    check_lengths(2);
    int n = orders[0];
    poly = build_generalized_triangle({K::Pentagon, lengths[0], lengths[1], M_PI / n}, tol);
    // sides [alpha, C, beta, A, B]; silvered C (1), A (3), B (4)
    s.type = "hypD2";
    s.orders = {n};
    s.generators.emplace("rC", poly.side_reflections[1]);
    s.generators.emplace("rA", poly.side_reflections[3]);
    s.generators.emplace("rB", poly.side_reflections[4]);
    for (const char* g : {"rC", "rA", "rB"})
      s.relations.push_back({GenRef{g, false}, GenRef{g, false}});
    Word corner;
    for (int i = 0; i < n; ++i) {
      corner.push_back(GenRef{"rA", false});
      corner.push_back(GenRef{"rB", false});
    }
    s.relations.push_back(corner);
    End e1;  // alpha flanked by B and C
    e1.spec = EndSpec::full(full_orbifold_invariant_from_length(lengths[0]));
    e1.gens = {"rB", "rC"};
    End e2;  // beta flanked by C and A
    e2.spec = EndSpec::full(full_orbifold_invariant_from_length(lengths[1]));
    e2.gens = {"rC", "rA"};
    End e3;
    e3.spec = EndSpec::corner(n);
    e3.gens = {"rA", "rB"};
    s.ends = {e1, e2, e3};
    OrbifoldSignature sig;
    BoundaryPattern bp;
    bp.kind = BoundaryPattern::Kind::Mixed;
    using Seg = BoundaryPattern::Segment;
    bp.segments = {Seg::Mirror, Seg::Mirror, Seg::FullOrbifold, Seg::Mirror, Seg::FullOrbifold};
    bp.corners = {n};
    sig.boundary.push_back(bp);
    s.signature = sig;
  } else if (tag == "D3") {
    check_orders(2);
    check_lengths(1);
    int m = orders[0], n = orders[1];
    poly = build_generalized_triangle(
        {K::Quadrilateral, M_PI / n, M_PI / m, lengths[0]}, tol);
    // sides [A, gamma, B, C]; silvered A (0), B (2), C (3)
    s.type = "hypD3";
    s.orders = {m, n};
    s.generators.emplace("rA", poly.side_reflections[0]);
    s.generators.emplace("rB", poly.side_reflections[2]);
    s.generators.emplace("rC", poly.side_reflections[3]);
    for (const char* g : {"rA", "rB", "rC"})
      s.relations.push_back({GenRef{g, false}, GenRef{g, false}});
    auto power_word = [](const char* g1, const char* g2, int k) {
      Word w;
      for (int i = 0; i < k; ++i) {
        w.push_back(GenRef{g1, false});
        w.push_back(GenRef{g2, false});
      }
      return w;
    };
    s.relations.push_back(power_word("rA", "rC", m));  // angle beta = pi/m at A|C
    s.relations.push_back(power_word("rC", "rB", n));  // angle alpha = pi/n at C|B
    End e1;  // gamma flanked by A and B
    e1.spec = EndSpec::full(full_orbifold_invariant_from_length(lengths[0]));
    e1.gens = {"rA", "rB"};
    End e2;
    e2.spec = EndSpec::corner(m);
    e2.gens = {"rA", "rC"};
    End e3;
    e3.spec = EndSpec::corner(n);
    e3.gens = {"rC", "rB"};
    s.ends = {e1, e2, e3};
    OrbifoldSignature sig;
    BoundaryPattern bp;
    bp.kind = BoundaryPattern::Kind::Mixed;
    using Seg = BoundaryPattern::Segment;
    bp.segments = {Seg::Mirror, Seg::Mirror, Seg::Mirror, Seg::FullOrbifold};
    bp.corners = {m, n};
    sig.boundary.push_back(bp);
    s.signature = sig;
  } else if (tag == "D4") {
    check_orders(3);
    check_lengths(0);
    int p = orders[0], q = orders[1], r = orders[2];
    if (!(Rational(1, p) + Rational(1, q) + Rational(1, r) < Rational(1)))
      fail(ErrorCode::ConstraintViolated, "1/p + 1/q + 1/r < 1 required");
    // vertex angles: alpha at v0 (sides 2|0), beta at v1 (sides 0|1), gamma at v2 (1|2)
    poly = build_generalized_triangle({K::Triangle, M_PI / r, M_PI / p, M_PI / q}, tol);
    s.type = "hypD4";
    s.orders = {p, q, r};
    s.generators.emplace("r1", poly.side_reflections[0]);
    s.generators.emplace("r2", poly.side_reflections[1]);
    s.generators.emplace("r3", poly.side_reflections[2]);
    for (const char* g : {"r1", "r2", "r3"})
      s.relations.push_back({GenRef{g, false}, GenRef{g, false}});
    auto power_word = [](const char* g1, const char* g2, int k) {
      Word w;
      for (int i = 0; i < k; ++i) {
        w.push_back(GenRef{g1, false});
        w.push_back(GenRef{g2, false});
      }
      return w;
    };
    s.relations.push_back(power_word("r1", "r2", p));
    s.relations.push_back(power_word("r2", "r3", q));
    s.relations.push_back(power_word("r3", "r1", r));
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
    OrbifoldSignature sig;
    BoundaryPattern bp;
    bp.kind = BoundaryPattern::Kind::Mirror;
    bp.corners = {p, q, r};
    sig.boundary.push_back(bp);
    s.signature = sig;
  } else {
    fail(ErrorCode::BadInput, "hyperbolic seeds cover D1..D4 only");
  }
  Polygon tile;
  for (const auto& v : poly.vertices) tile.push_back(v);
  s.tiles.push_back(tile);
  s.check_relations(tol);
  return s;
}

}  // namespace orbiproj
