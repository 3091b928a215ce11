#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "orbiproj/projective.hpp"
#include "orbiproj/signature.hpp"

namespace orbiproj {

struct EndSpec {
  enum class Kind { Hyp, Cone, Corner, FullOrbifold };
  Kind kind = Kind::Hyp;
  double lambda = 0.0, tau = 0.0;  // Hyp
  int order = 0;                   // Cone / Corner
  double crossratio = 0.0;         // FullOrbifold

  static EndSpec hyp(double l, double t) { return {Kind::Hyp, l, t, 0, 0.0}; }
  static EndSpec cone(int n) { return {Kind::Cone, 0, 0, n, 0.0}; }
  static EndSpec corner(int n) { return {Kind::Corner, 0, 0, n, 0.0}; }
  static EndSpec full(double c) { return {Kind::FullOrbifold, 0, 0, 0, c}; }
};

// A generator token: name, possibly inverted ("A" / "A~").
struct GenRef {
  std::string name;
  bool inverse = false;

  std::string token() const { return inverse ? name + "~" : name; }
  static GenRef parse(const std::string& tok);
};

using Word = std::vector<GenRef>;

using Polygon = std::vector<HomPoint>;

struct SidePairing {
  int tile_a = 0, side_a = 0;
  int tile_b = 0, side_b = 0;
  Word word;  // carries side_a of tile_a onto side_b of tile_b
};

// One end of a structure: the invariant data plus the generators realizing it.
struct End {
  EndSpec spec;
  std::vector<std::string> gens;  // Hyp/Cone: {holonomy}; FullOrbifold/Corner: ordered pair
};

// A solved convex projective structure: elementary solver output or a surgery
// composite.  Generators are named collineations; every relation word must
// evaluate to +-identity.
struct Structure {
  std::string type;  // "P1".."D4", "hypD1".."hypD4", or "composite"
  std::vector<int> orders;
  std::map<std::string, Collineation> generators;
  std::vector<Word> relations;
  std::vector<Polygon> tiles;
  std::vector<SidePairing> side_pairings;
  std::vector<End> ends;
  std::vector<double> fiber_params;
  OrbifoldSignature signature;
  nlohmann::json provenance;  // surgery tree; null for elementary output

  const Collineation& gen(const std::string& name) const;
  Collineation evaluate(const Word& w) const;
  // largest relation residual (distance of each relation word to +-identity)
  double max_relation_residual() const;
  void check_relations(const Tolerances& tol = default_tolerances()) const;
};

// numeric side pairings: match generator images of tile sides
std::vector<SidePairing> compute_side_pairings(const Structure& s,
                                               const Tolerances& tol = default_tolerances());

nlohmann::json structure_to_json(const Structure& s);
Structure structure_from_json(const nlohmann::json& j);

nlohmann::json signature_to_json(const OrbifoldSignature& sig);
OrbifoldSignature signature_from_json(const nlohmann::json& j);

nlohmann::json endspec_to_json(const EndSpec& e);
EndSpec endspec_from_json(const nlohmann::json& j);

}  // namespace orbiproj
