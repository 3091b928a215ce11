#pragma once

#include "orbiproj/structure.hpp"

namespace orbiproj {

// Hyperbolic trigonometry of generalized triangles and Klein-model seeds for
// the reflection-bounded elementary types.

struct GeneralizedTriangleSpec {
  enum class Kind { Hexagon, Pentagon, Quadrilateral, Triangle };
  Kind kind = Kind::Triangle;
  // Hexagon: alpha,beta,gamma side lengths.  Pentagon: alpha,beta lengths,
  // gamma angle.  Quadrilateral: gamma length, alpha,beta angles.
  // Triangle: three angles.
  double alpha = 0, beta = 0, gamma = 0;
};

struct TriangleQuantity {
  bool is_sinh = false;  // quadrilateral case returns sinh A, others cosh C
  double value = 0.0;    // cosh C or sinh A
  double measure = 0.0;  // C or A
};

// The four generalized-triangle formulas; throws DomainViolation with the
// violated inequality named.
TriangleQuantity generalized_triangle(const GeneralizedTriangleSpec& spec);

// Reflection of the Lorentz form J = diag(1,1,-1) in a spacelike normal.
Collineation lorentz_reflection(const Vec3& normal,
                                const Tolerances& tol = default_tolerances());

struct KleinPolygon {
  std::vector<HomPoint> vertices;          // inside x^2 + y^2 < z^2
  std::vector<Vec3> side_normals;          // spacelike unit normals, side i = (v_i, v_i+1)
  std::vector<Collineation> side_reflections;
};

// Realize the generalized triangle with the given data as a Klein polygon;
// vertices are consecutive normal meets, anchored at a canonical frame.
KleinPolygon build_generalized_triangle(const GeneralizedTriangleSpec& spec,
                                        const Tolerances& tol = default_tolerances());

// Hilbert (= hyperbolic, for the unit conic) distance between interior points.
double hilbert_distance(const HomPoint& a, const HomPoint& b);

// Angle between sides i and j of a Klein polygon at their common vertex.
double klein_angle(const KleinPolygon& poly, int i, int j);

// cross-ratio invariant of a boundary full 1-orbifold of hyperbolic length L
double full_orbifold_invariant_from_length(double L);

// Hyperbolic structures on the D-family elementary orbifolds.
//   D1: data = three boundary 1-orbifold lengths
//   D2: orders = {n}, data = two lengths
//   D3: orders = {m, n}, data = one length
//   D4: orders = {p, q, r}, no data
Structure build_hyperbolic_elementary(const std::string& tag, const std::vector<int>& orders,
                                      const std::vector<double>& lengths,
                                      const Tolerances& tol = default_tolerances());

}  // namespace orbiproj
