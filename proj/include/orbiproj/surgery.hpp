#pragma once

#include "orbiproj/structure.hpp"

namespace orbiproj {

// Holonomy-level sewing of convex structures.  Ends are addressed by index
// into Structure::ends; closed operations need a Hyp end, full operations a
// FullOrbifold end.

struct PasteParams {
  double u = 0.0, v = 0.0;  // closed: R^2 centralizer; full: only u is used
  bool flip = false;        // post-compose the alignment with the axis reflection
};

// Paste end b1 of s1 to end b2 of s2.  Pass the same structure twice with
// distinct ends for the HNN-style self-pasting (a new stable generator "t#"
// appears instead of merging two groups).
Structure paste(const Structure& s1, int b1, const Structure& s2, int b2,
                const PasteParams& params, const Tolerances& tol = default_tolerances());

Structure crosscap(const Structure& s, int b, const Tolerances& tol = default_tolerances());

Structure silver(const Structure& s, int b, const Tolerances& tol = default_tolerances());

// closed fold takes the axis-position parameter c > 0; full fold is unique
Structure fold(const Structure& s, int b, std::optional<double> param,
               const Tolerances& tol = default_tolerances());

// Conjugation-invariant separation number of two non-commuting hyperbolic
// elements: the cross-ratio of the first element's fixed pair against the
// meets of its axis with two frame lines of the second.
double pair_configuration_invariant(const Collineation& g1, const Collineation& g2,
                                    const Tolerances& tol = default_tolerances());

}  // namespace orbiproj
