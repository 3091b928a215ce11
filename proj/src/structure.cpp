#include "orbiproj/structure.hpp"

#include <algorithm>

namespace orbiproj {

using nlohmann::json;

GenRef GenRef::parse(const std::string& tok) {
  if (!tok.empty() && tok.back() == '~') return {tok.substr(0, tok.size() - 1), true};
  return {tok, false};
}

const Collineation& Structure::gen(const std::string& name) const {
  auto it = generators.find(name);
  if (it == generators.end())
    fail(ErrorCode::MalformedStructure, "unknown generator '" + name + "'");
  return it->second;
}

Collineation Structure::evaluate(const Word& w) const {
  Mat3 m = Mat3::Identity();
  for (const GenRef& g : w) {
    const Collineation& c = gen(g.name);
    m = m * (g.inverse ? Mat3(c.m.inverse()) : c.m);
  }
  return Collineation(m);
}

double Structure::max_relation_residual() const {
  double worst = 0.0;
  for (const Word& w : relations) worst = std::max(worst, evaluate(w).identity_residual());
  return worst;
}

void Structure::check_relations(const Tolerances& tol) const {
  double r = max_relation_residual();
  if (r > tol.relation_residual)
    fail(ErrorCode::MalformedStructure,
         "relation residual " + std::to_string(r) + " exceeds tolerance");
}

std::vector<SidePairing> compute_side_pairings(const Structure& s, const Tolerances& tol) {
  std::vector<SidePairing> out;
  struct Side {
    int tile, side;
    HomPoint a, b;
  };
  std::vector<Side> sides;
  for (int t = 0; t < (int)s.tiles.size(); ++t) {
    int n = (int)s.tiles[t].size();
    for (int i = 0; i < n; ++i)
      sides.push_back({t, i, s.tiles[t][i], s.tiles[t][(i + 1) % n]});
  }
  auto match = [&](const HomPoint& a, const HomPoint& b, const Side& sd) {
    return (a.equals(sd.a, tol) && b.equals(sd.b, tol)) ||
           (a.equals(sd.b, tol) && b.equals(sd.a, tol));
  };
  for (const Side& sd : sides) {
    for (const auto& [name, g] : s.generators) {
      for (int inv = 0; inv < 2; ++inv) {
        Collineation h = inv ? g.inverse() : g;
        HomPoint ia = h.apply(sd.a), ib = h.apply(sd.b);
        for (const Side& other : sides) {
          if (match(ia, ib, other)) {
            if (other.tile == sd.tile && other.side == sd.side && h.identity_residual() < tol.projective_eq)
              continue;  // identity match is not a pairing
            SidePairing p;
            p.tile_a = sd.tile;
            p.side_a = sd.side;
            p.tile_b = other.tile;
            p.side_b = other.side;
            p.word = {GenRef{name, inv == 1}};
            // keep only the first pairing per source side
            bool seen = false;
            for (auto& q : out)
              if (q.tile_a == p.tile_a && q.side_a == p.side_a) seen = true;
            if (!seen) out.push_back(p);
          }
        }
      }
    }
  }
  return out;
}

// ---- JSON ------------------------------------------------------------------

json signature_to_json(const OrbifoldSignature& sig) {
  json b = json::array();
  for (const auto& p : sig.boundary) {
    json e;
    switch (p.kind) {
      case BoundaryPattern::Kind::Plain: e["kind"] = "plain"; break;
      case BoundaryPattern::Kind::Mirror:
        e["kind"] = "mirror";
        e["corners"] = p.corners;
        break;
      case BoundaryPattern::Kind::Mixed: {
        e["kind"] = "mixed";
        json segs = json::array();
        for (auto s : p.segments)
          segs.push_back(s == BoundaryPattern::Segment::Mirror ? "mirror" : "orbifold");
        e["segments"] = segs;
        e["corners"] = p.corners;
        break;
      }
    }
    b.push_back(e);
  }
  return json{{"genus", sig.genus},
              {"orientable", sig.orientable},
              {"cones", sig.cone_orders},
              {"boundary", b}};
}

OrbifoldSignature signature_from_json(const json& j) {
  OrbifoldSignature sig;
  sig.genus = j.value("genus", 0);
  sig.orientable = j.value("orientable", true);
  if (j.contains("cones")) sig.cone_orders = j["cones"].get<std::vector<int>>();
  if (j.contains("boundary")) {
    for (const auto& e : j["boundary"]) {
      BoundaryPattern p;
      std::string kind = e.value("kind", "plain");
      if (kind == "plain") {
        p.kind = BoundaryPattern::Kind::Plain;
      } else if (kind == "mirror") {
        p.kind = BoundaryPattern::Kind::Mirror;
        if (e.contains("corners")) p.corners = e["corners"].get<std::vector<int>>();
      } else if (kind == "mixed") {
        p.kind = BoundaryPattern::Kind::Mixed;
        for (const auto& s : e["segments"]) {
          std::string t = s.get<std::string>();
          p.segments.push_back(t == "mirror" ? BoundaryPattern::Segment::Mirror
                                             : BoundaryPattern::Segment::FullOrbifold);
        }
        if (e.contains("corners")) p.corners = e["corners"].get<std::vector<int>>();
      } else {
        fail(ErrorCode::BadInput, "unknown boundary kind '" + kind + "'");
      }
      sig.boundary.push_back(p);
    }
  }
  sig.validate();
  return sig;
}

json endspec_to_json(const EndSpec& e) {
  switch (e.kind) {
    case EndSpec::Kind::Hyp: return json{{"hyp", {e.lambda, e.tau}}};
    case EndSpec::Kind::Cone: return json{{"cone", e.order}};
    case EndSpec::Kind::Corner: return json{{"corner", e.order}};
    case EndSpec::Kind::FullOrbifold: return json{{"full", e.crossratio}};
  }
  return json{};
}

EndSpec endspec_from_json(const json& j) {
  if (j.contains("hyp")) {
    auto v = j["hyp"];
    return EndSpec::hyp(v.at(0).get<double>(), v.at(1).get<double>());
  }
  if (j.contains("cone")) return EndSpec::cone(j["cone"].get<int>());
  if (j.contains("corner")) return EndSpec::corner(j["corner"].get<int>());
  if (j.contains("full")) return EndSpec::full(j["full"].get<double>());
  fail(ErrorCode::BadInput, "end spec needs one of hyp/cone/corner/full");
}

namespace {

json matrix_to_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
  return rows;
}

Mat3 matrix_from_json(const json& j) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) m(i, k) = j.at(i).at(k).get<double>();
  return m;
}

json word_to_json(const Word& w) {
  json out = json::array();
  for (const auto& g : w) out.push_back(g.token());
  return out;
}

Word word_from_json(const json& j) {
  Word w;
  for (const auto& t : j) w.push_back(GenRef::parse(t.get<std::string>()));
  return w;
}

}  // namespace

json structure_to_json(const Structure& s) {
  json gens = json::object();
  for (const auto& [name, g] : s.generators) {
    gens[name] = matrix_to_json(g.m * (g.det_sign < 0 ? 1.0 : 1.0));
  }
  json tiles = json::array();
  for (const auto& t : s.tiles) {
    json poly = json::array();
    for (const auto& p : t) poly.push_back({p.v[0], p.v[1], p.v[2]});
    tiles.push_back(poly);
  }
  json ends = json::array();
  for (const auto& e : s.ends) {
    json ej = endspec_to_json(e.spec);
    ej["gens"] = e.gens;
    ends.push_back(ej);
  }
  json rels = json::array();
  for (const auto& w : s.relations) rels.push_back(word_to_json(w));
  json pairings = json::array();
  for (const auto& p : s.side_pairings)
    pairings.push_back(json{{"from", {p.tile_a, p.side_a}},
                            {"to", {p.tile_b, p.side_b}},
                            {"word", word_to_json(p.word)}});
  json out{{"type", s.type},
           {"orders", s.orders},
           {"ends", ends},
           {"fiber", s.fiber_params},
           {"generators", gens},
           {"tiles", tiles},
           {"relations", rels},
           {"side_pairings", pairings},
           {"signature", signature_to_json(s.signature)}};
  if (!s.provenance.is_null()) out["provenance"] = s.provenance;
  return out;
}

Structure structure_from_json(const json& j) {
  Structure s;
  s.type = j.value("type", "composite");
  if (j.contains("orders")) s.orders = j["orders"].get<std::vector<int>>();
  if (j.contains("fiber")) s.fiber_params = j["fiber"].get<std::vector<double>>();
  if (!j.contains("generators")) fail(ErrorCode::BadInput, "structure needs generators");
  for (const auto& [name, mj] : j["generators"].items())
    s.generators.emplace(name, Collineation(matrix_from_json(mj)));
  if (j.contains("tiles")) {
    for (const auto& tj : j["tiles"]) {
      Polygon poly;
      for (const auto& pj : tj)
        poly.push_back(HomPoint(pj.at(0).get<double>(), pj.at(1).get<double>(),
                                pj.at(2).get<double>()));
      s.tiles.push_back(poly);
    }
  }
  if (j.contains("relations"))
    for (const auto& rj : j["relations"]) s.relations.push_back(word_from_json(rj));
  if (j.contains("ends")) {
    for (const auto& ej : j["ends"]) {
      End e;
      e.spec = endspec_from_json(ej);
      if (ej.contains("gens")) e.gens = ej["gens"].get<std::vector<std::string>>();
      s.ends.push_back(e);
    }
  }
  if (j.contains("side_pairings")) {
    for (const auto& pj : j["side_pairings"]) {
      SidePairing p;
      p.tile_a = pj["from"].at(0).get<int>();
      p.side_a = pj["from"].at(1).get<int>();
      p.tile_b = pj["to"].at(0).get<int>();
      p.side_b = pj["to"].at(1).get<int>();
      p.word = word_from_json(pj["word"]);
      s.side_pairings.push_back(p);
    }
  }
  if (j.contains("signature")) s.signature = signature_from_json(j["signature"]);
  if (j.contains("provenance")) s.provenance = j["provenance"];
  return s;
}

}  // namespace orbiproj
