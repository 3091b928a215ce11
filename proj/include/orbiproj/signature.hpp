#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbiproj/rational.hpp"

namespace orbiproj {

// One boundary circle of the underlying surface.
//  - Plain: ordinary boundary circle.
//  - Mirror: fully silvered circle; `corners` lists corner-reflector orders on it.
//  - Mixed: cyclic sequence of segments, each Mirror or a boundary full
//    1-orbifold; corner orders sit at Mirror|Mirror junctions only.
struct BoundaryPattern {
  enum class Kind { Plain, Mirror, Mixed };
  enum class Segment { Mirror, FullOrbifold };

  Kind kind = Kind::Plain;
  std::vector<Segment> segments;  // Mixed only, cyclic order
  std::vector<int> corners;       // Mirror: orders around the circle; Mixed: one per
                                  // Mirror|Mirror junction, in cyclic order

  int full_orbifold_count() const;
  int mirror_mirror_junctions() const;  // Mixed only
  void validate() const;
};

struct OrbifoldSignature {
  int genus = 0;          // orientable: handles; non-orientable: crosscap count
  bool orientable = true;
  std::vector<int> cone_orders;
  std::vector<BoundaryPattern> boundary;

  void validate() const;
  int underlying_euler() const;      // chi of the underlying compact surface
  int boundary_circle_count() const { return (int)boundary.size(); }
  int full_orbifold_count() const;   // n_0
  std::vector<int> corner_orders() const;

  bool operator==(const OrbifoldSignature& o) const;
};

Rational euler_characteristic(const OrbifoldSignature& sig);

// Cell dimension of the deformation space of convex projective structures:
//   -8 chi(X) + (6 k_c - 2 b_c) + (3 k_r - b_r) + 4 n_0
int deformation_dimension(const OrbifoldSignature& sig);

// Teichmueller dimension: -3 chi(X) + 2 k + l (+ 2 n_0 with boundary 1-orbifolds)
int teichmuller_dimension(const OrbifoldSignature& sig);

enum class ElementaryType { P1, P2, P3, P4, A1, A2, A3, A4, D1, D2, D3, D4 };
const char* elementary_type_name(ElementaryType t);

struct ElementaryMatch {
  ElementaryType type;
  std::vector<int> orders;  // cone/corner orders in the type's canonical slots
};

std::optional<ElementaryMatch> classify_elementary(const OrbifoldSignature& sig);

enum class AnnularType {
  Annulus = 1,
  MobiusBand = 2,
  SilveredAnnulus = 3,
  ConeDisk22 = 4,      // (;2,2)-disk
  SilveredStrip = 5,
  ConeBigon = 6,       // bigon with an order-two cone-point
  HalfSquare = 7,
};

std::optional<AnnularType> classify_zero_euler(const OrbifoldSignature& sig);

// ---- signature-level surgery ----------------------------------------------

struct SewOp {
  enum class Kind {
    PasteClosed,   // b, b2 plain circles of this signature
    Crosscap,      // b plain circle
    SilverClosed,  // b plain circle
    FoldClosed,    // b plain circle
    PasteFull,     // b, b2 full 1-orbifold slots
    SilverFull,    // b full 1-orbifold slot
    FoldFull,      // b full 1-orbifold slot
  };
  Kind kind;
  int b = 0;        // boundary circle index; for *Full: index of the mixed circle
  int seg = 0;      // for *Full: segment index of the target full 1-orbifold
  int b2 = 0;       // PasteClosed / PasteFull partner circle
  int seg2 = 0;     // PasteFull partner segment
};

// Locus data a split needs to invert a sewing move.
struct SewUndo {
  SewOp op;
  bool was_orientable = true;
  int left_arc_corners = 0;   // SilverFull/FoldFull: corner count of the arc before the slot
  int a_arcs = 0;             // PasteFull: arc count contributed by the b-side circle
  std::vector<int> seam_split;  // PasteFull: corner counts of the two seam-arc A-side parts
};

OrbifoldSignature sew_signature(const OrbifoldSignature& sig, const SewOp& op);
OrbifoldSignature sew_signature_traced(const OrbifoldSignature& sig, const SewOp& op,
                                       SewUndo& undo);

// Cross-structure pasting of two signatures along plain circles (used by the
// holonomy-level surgery module).
OrbifoldSignature paste_signatures(const OrbifoldSignature& s1, int b1,
                                   const OrbifoldSignature& s2, int b2);

// The inverse split: cuts the sewn orbifold back along the recorded locus.
OrbifoldSignature unsew_signature(const OrbifoldSignature& sig, const SewUndo& undo);

}  // namespace orbiproj
