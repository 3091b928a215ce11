#pragma once

namespace orbiproj {

// One record for all numeric slack; callers may pass a tweaked copy.
struct Tolerances {
  double projective_eq = 1e-9;     // cross-product / incidence comparisons
  double relation_residual = 1e-8; // group relation words vs +-identity
  double repeated_eigenvalue = 1e-7; // relative gap below which a spectrum counts as repeated
  double conic_residual = 1e-9;    // x^T Q x on normalized data
  double convexity = 1e-7;         // hull defect, in units of hull diameter
  double dedup = 1e-8;             // matrix proximity for group-element dedup
  double region_margin = 0.0;      // extra shrink of the (lambda,tau) region, usually 0
  int elliptic_max_order = 4096;   // largest order detected for elliptic elements
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace orbiproj
