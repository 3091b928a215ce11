#pragma once

#include <optional>

#include "orbiproj/structure.hpp"

namespace orbiproj {

// Internal pants configuration data, exposed for the scaling/invariance tests.
struct PantsSolution {
  double alpha[3], beta[3], gamma[3];  // alpha1..3, beta1..3, gamma1..3
  double rho1, rho2, rho3;
  double a2, a3, b1, b3, c1, c2;       // free-triangle vertex coordinates
  double sigma1, sigma2;
};

struct Fiber2 {
  double s = 1.0, t = 1.0;
};

// P1..P4: three ends, each Hyp or Cone; fiber required iff no order-two cone.
Structure solve_pants_family(const std::vector<EndSpec>& ends, std::optional<Fiber2> fiber,
                             const Tolerances& tol = default_tolerances());
PantsSolution solve_pants_details(const std::vector<EndSpec>& ends, std::optional<Fiber2> fiber,
                                  const Tolerances& tol = default_tolerances());

// A1: two-pronged crown.
Structure solve_crown_a1(const EndSpec& theta, double full_inv, double fiber,
                         const Tolerances& tol = default_tolerances());

// A2: one-pronged crown; fiber required iff corner_order >= 3.
Structure solve_crown_a2(const EndSpec& theta, int corner_order, std::optional<double> fiber,
                         const Tolerances& tol = default_tolerances());

// A3: disk with a cone-point and one boundary 1-orbifold.
Structure solve_disk_a3(int cone_order, double full_inv, double fiber,
                        const Tolerances& tol = default_tolerances());

// A4: disk with a corner-reflector and a cone-point; fiber required iff m >= 3.
Structure solve_disk_a4(int corner_order_m, int cone_order_n, std::optional<double> fiber,
                        const Tolerances& tol = default_tolerances());

// D1 hexagon.
Structure solve_hexagon_d1(double inv_e2, double inv_e4, double inv_e6, double fiber,
                           const Tolerances& tol = default_tolerances());

// D2 pentagon; fiber required iff n >= 3.
Structure solve_pentagon_d2(int corner_order_n, double inv_e1, double inv_e4,
                            std::optional<double> fiber,
                            const Tolerances& tol = default_tolerances());

// D3 quadrilateral; order m at the v4 corner, n at the v3 corner; fiber
// required iff both orders >= 3.
Structure solve_quad_d3(int order_m, int order_n, double inv_e1, std::optional<double> fiber,
                        const Tolerances& tol = default_tolerances());

// D4 triangle; mu required iff all orders >= 3 (mu = 1 is the hyperbolic point).
Structure solve_triangle_d4(int p, int q, int r, std::optional<double> mu,
                            const Tolerances& tol = default_tolerances());

// Invariants recomputed from the matrices, in the structure's end order.
std::vector<EndSpec> extract_invariants(const Structure& s,
                                        const Tolerances& tol = default_tolerances());

// Low-level A-family entry points taking an explicit positive eigenvalue
// triple for the boundary holonomy (the region check applies to the canonical
// (lambda, tau) route; this one admits any positive distinct spectrum, which
// some published figure parameters require).
Structure solve_crown_a1_spectrum(const std::array<double, 3>& eigenvalues, double full_inv,
                                  double fiber, const Tolerances& tol = default_tolerances());
Structure solve_crown_a2_spectrum(const std::array<double, 3>& eigenvalues, int corner_order,
                                  std::optional<double> fiber,
                                  const Tolerances& tol = default_tolerances());

// cross-ratio of the mirror configuration of a full 1-orbifold end
double full_orbifold_invariant(const Collineation& r_first, const Collineation& r_second,
                               const Tolerances& tol = default_tolerances());

}  // namespace orbiproj
