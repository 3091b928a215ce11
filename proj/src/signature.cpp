#include "orbiproj/signature.hpp"

#include <algorithm>

namespace orbiproj {

namespace {

using Seg = BoundaryPattern::Segment;
using Arc = std::vector<int>;  // corner orders along one mirror arc

// ring of (segment, corner at the junction after it or 0)
std::vector<std::pair<int, int>> ring_of(const BoundaryPattern& b) {
  std::vector<std::pair<int, int>> ring;
  int n = (int)b.segments.size();
  size_t ci = 0;
  for (int i = 0; i < n; ++i) {
    bool mm = b.segments[i] == Seg::Mirror && b.segments[(i + 1) % n] == Seg::Mirror;
    int c = mm ? b.corners[ci++] : 0;
    ring.push_back({b.segments[i] == Seg::Mirror ? 0 : 1, c});
  }
  return ring;
}

std::vector<std::pair<int, int>> canonical_ring(const BoundaryPattern& b) {
  auto ring = ring_of(b);
  size_t n = ring.size();
  if (n == 0) return ring;
  auto best = ring;
  auto consider = [&](std::vector<std::pair<int, int>> r) {
    for (size_t k = 0; k < n; ++k) {
      if (r < best) best = r;
      std::rotate(r.begin(), r.begin() + 1, r.end());
    }
  };
  consider(ring);
  // reversal: segments reversed; junction after reversed i = junction before original
  std::vector<std::pair<int, int>> rev(n);
  for (size_t i = 0; i < n; ++i) {
    rev[i].first = ring[n - 1 - i].first;
    rev[i].second = ring[(2 * n - 2 - i) % n].second;
  }
  consider(rev);
  return best;
}

std::vector<int> canonical_cycle(const std::vector<int>& c) {
  if (c.size() < 2) return c;
  auto best = c;
  auto consider = [&](std::vector<int> r) {
    for (size_t k = 0; k < c.size(); ++k) {
      if (r < best) best = r;
      std::rotate(r.begin(), r.begin() + 1, r.end());
    }
  };
  consider(c);
  std::vector<int> rev(c.rbegin(), c.rend());
  consider(rev);
  return best;
}

// ---- arc view of mixed circles --------------------------------------------
// circle = a0 O0 a1 O1 ... a_{k-1} O_{k-1} (cyclic); O_t sits after arc a_t.

std::vector<Arc> arcs_of(const BoundaryPattern& b) {
  int n = (int)b.segments.size();
  int first_o = -1;
  for (int i = 0; i < n; ++i)
    if (b.segments[i] == Seg::FullOrbifold) { first_o = i; break; }
  if (first_o < 0) fail(ErrorCode::Internal, "arcs_of needs a mixed circle");
  auto ring = ring_of(b);
  std::vector<Arc> arcs;
  Arc cur;
  // walk from the segment after the first O all the way around
  for (int t = 1; t <= n; ++t) {
    int i = (first_o + t) % n;
    if (ring[i].first == 1) {  // an O closes the current arc
      arcs.push_back(cur);
      cur.clear();
    } else if (ring[i].second > 0 && ring[(i + 1) % n].first == 0) {
      cur.push_back(ring[i].second);
    }
  }
  // arcs[t] currently follows O number t; rotate so arcs[t] precedes O_t
  if (arcs.size() > 1) std::rotate(arcs.begin(), arcs.end() - 1, arcs.end());
  return arcs;
}

BoundaryPattern pattern_from_arcs(const std::vector<Arc>& arcs) {
  BoundaryPattern out;
  if (arcs.empty()) fail(ErrorCode::Internal, "empty arc list");
  out.kind = BoundaryPattern::Kind::Mixed;
  for (const Arc& a : arcs) {
    // an arc with k corners is k+1 mirror segments
    for (size_t i = 0; i <= a.size(); ++i) out.segments.push_back(Seg::Mirror);
    out.segments.push_back(Seg::FullOrbifold);
    for (int c : a) out.corners.push_back(c);
  }
  return out;
}

// which arc index (a_t) has the O at this segment slot right after it
int arc_index_of_slot(const BoundaryPattern& b, int seg_slot) {
  int n = (int)b.segments.size();
  if (b.segments[seg_slot] != Seg::FullOrbifold)
    fail(ErrorCode::MissingComponent, "segment index is not a boundary full 1-orbifold");
  // count O's in the arcs_of traversal order and map to the a_t convention:
  // pattern_from_arcs lays out [arc0, O_0, arc1, O_1, ...], so O index = number
  // of O's strictly before this slot
  int idx = 0;
  for (int i = 0; i < seg_slot; ++i)
    if (b.segments[i] == Seg::FullOrbifold) ++idx;
  (void)n;
  return idx;
}

Arc reversed(const Arc& a) { return Arc(a.rbegin(), a.rend()); }

Arc concat(const Arc& a, const Arc& b) {
  Arc out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Arc concat3(const Arc& a, const Arc& mid, const Arc& b) { return concat(concat(a, mid), b); }

BoundaryPattern mirror_circle(const Arc& corners) {
  BoundaryPattern out;
  out.kind = BoundaryPattern::Kind::Mirror;
  out.corners = corners;
  return out;
}

// close a linear chain of arcs into a circle by merging back into front
BoundaryPattern close_chain(std::vector<Arc> chain) {
  if (chain.size() == 1) return mirror_circle(chain[0]);
  Arc merged = concat(chain.back(), chain.front());
  std::vector<Arc> arcs;
  arcs.push_back(merged);
  for (size_t i = 1; i + 1 < chain.size(); ++i) arcs.push_back(chain[i]);
  return pattern_from_arcs(arcs);
}

}  // namespace

int BoundaryPattern::full_orbifold_count() const {
  if (kind != Kind::Mixed) return 0;
  int n = 0;
  for (auto s : segments)
    if (s == Segment::FullOrbifold) ++n;
  return n;
}

int BoundaryPattern::mirror_mirror_junctions() const {
  if (kind == Kind::Mirror) return (int)corners.size();
  if (kind != Kind::Mixed) return 0;
  int n = (int)segments.size(), c = 0;
  for (int i = 0; i < n; ++i)
    if (segments[i] == Segment::Mirror && segments[(i + 1) % n] == Segment::Mirror) ++c;
  return c;
}

void BoundaryPattern::validate() const {
  switch (kind) {
    case Kind::Plain:
      if (!segments.empty() || !corners.empty())
        fail(ErrorCode::BadInput, "plain circle carries no segments or corners");
      return;
    case Kind::Mirror:
      if (!segments.empty()) fail(ErrorCode::BadInput, "mirror circle carries no segments");
      for (int c : corners)
        if (c < 2) fail(ErrorCode::BadInput, "corner order must be >= 2");
      return;
    case Kind::Mixed: {
      if (segments.size() < 2) fail(ErrorCode::BadInput, "mixed circle needs >= 2 segments");
      int n = (int)segments.size();
      bool has_m = false, has_o = false;
      for (int i = 0; i < n; ++i) {
        bool fo = segments[i] == Segment::FullOrbifold;
        has_o |= fo;
        has_m |= !fo;
        if (fo && segments[(i + 1) % n] == Segment::FullOrbifold)
          fail(ErrorCode::BadInput, "adjacent full 1-orbifold segments (endpoints must be mirrors)");
      }
      if (!has_m || !has_o)
        fail(ErrorCode::BadInput, "mixed circle needs both mirror and 1-orbifold segments");
      if ((int)corners.size() != mirror_mirror_junctions())
        fail(ErrorCode::BadInput, "corner count must match mirror|mirror junctions");
      for (int c : corners)
        if (c < 2) fail(ErrorCode::BadInput, "corner order must be >= 2");
      return;
    }
  }
}

void OrbifoldSignature::validate() const {
  if (genus < 0) fail(ErrorCode::BadInput, "negative genus");
  if (!orientable && genus < 1) fail(ErrorCode::BadInput, "non-orientable surface needs >= 1 crosscap");
  for (int q : cone_orders)
    if (q < 2) fail(ErrorCode::BadInput, "cone order must be >= 2");
  for (auto& b : boundary) b.validate();
}

int OrbifoldSignature::underlying_euler() const {
  int b = (int)boundary.size();
  return orientable ? 2 - 2 * genus - b : 2 - genus - b;
}

int OrbifoldSignature::full_orbifold_count() const {
  int n = 0;
  for (auto& b : boundary) n += b.full_orbifold_count();
  return n;
}

std::vector<int> OrbifoldSignature::corner_orders() const {
  std::vector<int> out;
  for (auto& b : boundary) out.insert(out.end(), b.corners.begin(), b.corners.end());
  return out;
}

bool OrbifoldSignature::operator==(const OrbifoldSignature& o) const {
  if (genus != o.genus || orientable != o.orientable) return false;
  std::vector<int> c1 = cone_orders, c2 = o.cone_orders;
  std::sort(c1.begin(), c1.end());
  std::sort(c2.begin(), c2.end());
  if (c1 != c2) return false;
  if (boundary.size() != o.boundary.size()) return false;
  // boundary circles compared as unordered multiset, each up to dihedral symmetry
  std::vector<int> used(boundary.size(), 0);
  for (size_t i = 0; i < boundary.size(); ++i) {
    bool found = false;
    for (size_t j = 0; j < o.boundary.size() && !found; ++j) {
      if (used[j] || boundary[i].kind != o.boundary[j].kind) continue;
      bool same = false;
      switch (boundary[i].kind) {
        case BoundaryPattern::Kind::Plain: same = true; break;
        case BoundaryPattern::Kind::Mirror:
          same = canonical_cycle(boundary[i].corners) == canonical_cycle(o.boundary[j].corners);
          break;
        case BoundaryPattern::Kind::Mixed:
          same = canonical_ring(boundary[i]) == canonical_ring(o.boundary[j]);
          break;
      }
      if (same) { used[j] = 1; found = true; }
    }
    if (!found) return false;
  }
  return true;
}

Rational euler_characteristic(const OrbifoldSignature& sig) {
  sig.validate();
  Rational chi(sig.underlying_euler());
  for (int q : sig.cone_orders) chi = chi - (Rational(1) - Rational(1, q));
  for (int r : sig.corner_orders()) chi = chi - (Rational(1) - Rational(1, r)) * Rational(1, 2);
  chi = chi - Rational(sig.full_orbifold_count(), 2);
  return chi;
}

int deformation_dimension(const OrbifoldSignature& sig) {
  Rational chi = euler_characteristic(sig);
  if (!(chi < Rational(0))) fail(ErrorCode::NonNegativeEuler, "deformation dimension needs chi < 0");
  int kc = (int)sig.cone_orders.size();
  int bc = (int)std::count(sig.cone_orders.begin(), sig.cone_orders.end(), 2);
  auto corners = sig.corner_orders();
  int kr = (int)corners.size();
  int br = (int)std::count(corners.begin(), corners.end(), 2);
  return -8 * sig.underlying_euler() + (6 * kc - 2 * bc) + (3 * kr - br) +
         4 * sig.full_orbifold_count();
}

int teichmuller_dimension(const OrbifoldSignature& sig) {
  Rational chi = euler_characteristic(sig);
  if (!(chi < Rational(0))) fail(ErrorCode::NonNegativeEuler, "Teichmueller dimension needs chi < 0");
  int k = (int)sig.cone_orders.size();
  int l = (int)sig.corner_orders().size();
  return -3 * sig.underlying_euler() + 2 * k + l + 2 * sig.full_orbifold_count();
}

const char* elementary_type_name(ElementaryType t) {
  switch (t) {
    case ElementaryType::P1: return "P1";
    case ElementaryType::P2: return "P2";
    case ElementaryType::P3: return "P3";
    case ElementaryType::P4: return "P4";
    case ElementaryType::A1: return "A1";
    case ElementaryType::A2: return "A2";
    case ElementaryType::A3: return "A3";
    case ElementaryType::A4: return "A4";
    case ElementaryType::D1: return "D1";
    case ElementaryType::D2: return "D2";
    case ElementaryType::D3: return "D3";
    case ElementaryType::D4: return "D4";
  }
  return "?";
}

namespace {

int count_plain(const OrbifoldSignature& s) {
  int n = 0;
  for (auto& b : s.boundary)
    if (b.kind == BoundaryPattern::Kind::Plain) ++n;
  return n;
}

// mixed circle of alternating pattern (m o)^k without corners
bool is_pronged(const BoundaryPattern& b, int k) {
  if (b.kind != BoundaryPattern::Kind::Mixed) return false;
  if ((int)b.segments.size() != 2 * k || !b.corners.empty()) return false;
  return b.full_orbifold_count() == k;
}

}  // namespace

std::optional<ElementaryMatch> classify_elementary(const OrbifoldSignature& sig) {
  sig.validate();
  if (!sig.orientable || sig.genus != 0) return std::nullopt;
  int nb = (int)sig.boundary.size();
  int plain = count_plain(sig);
  std::vector<int> cones = sig.cone_orders;
  std::sort(cones.begin(), cones.end());

  if (plain == nb) {  // P-family candidates
    if (nb == 3 && cones.empty()) return ElementaryMatch{ElementaryType::P1, {}};
    if (nb == 2 && cones.size() == 1) return ElementaryMatch{ElementaryType::P2, {cones[0]}};
    if (nb == 1 && cones.size() == 2 && cones[1] >= 3)
      return ElementaryMatch{ElementaryType::P3, {cones[0], cones[1]}};
    if (nb == 0 && cones.size() == 3 &&
        Rational(1, cones[0]) + Rational(1, cones[1]) + Rational(1, cones[2]) < Rational(1))
      return ElementaryMatch{ElementaryType::P4, cones};
    return std::nullopt;
  }

  if (nb == 2 && plain == 1) {
    const BoundaryPattern& other =
        sig.boundary[sig.boundary[0].kind == BoundaryPattern::Kind::Plain ? 1 : 0];
    if (cones.empty() && is_pronged(other, 1)) return ElementaryMatch{ElementaryType::A1, {}};
    if (cones.empty() && other.kind == BoundaryPattern::Kind::Mirror && other.corners.size() == 1)
      return ElementaryMatch{ElementaryType::A2, {other.corners[0]}};
    return std::nullopt;
  }

  if (nb == 1 && plain == 0) {
    const BoundaryPattern& b = sig.boundary[0];
    if (cones.size() == 1 && cones[0] >= 3 && is_pronged(b, 1))
      return ElementaryMatch{ElementaryType::A3, {cones[0]}};
    if (cones.size() == 1 && b.kind == BoundaryPattern::Kind::Mirror && b.corners.size() == 1) {
      int m = b.corners[0], n = cones[0];
      if (n >= 3 && Rational(1, 2 * m) + Rational(1, n) < Rational(1, 2))
        return ElementaryMatch{ElementaryType::A4, {m, n}};
      return std::nullopt;
    }
    if (!cones.empty()) return std::nullopt;
    if (is_pronged(b, 3)) return ElementaryMatch{ElementaryType::D1, {}};
    if (b.kind == BoundaryPattern::Kind::Mixed && b.segments.size() == 5 &&
        b.full_orbifold_count() == 2 && b.corners.size() == 1)
      return ElementaryMatch{ElementaryType::D2, {b.corners[0]}};
    if (b.kind == BoundaryPattern::Kind::Mixed && b.segments.size() == 4 &&
        b.full_orbifold_count() == 1 && b.corners.size() == 2) {
      int p = b.corners[0], q = b.corners[1];
      if (std::max(p, q) >= 3) return ElementaryMatch{ElementaryType::D3, {p, q}};
      return std::nullopt;
    }
    if (b.kind == BoundaryPattern::Kind::Mirror && b.corners.size() == 3) {
      std::vector<int> c = b.corners;
      std::sort(c.begin(), c.end());
      if (Rational(1, c[0]) + Rational(1, c[1]) + Rational(1, c[2]) < Rational(1))
        return ElementaryMatch{ElementaryType::D4, c};
    }
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<AnnularType> classify_zero_euler(const OrbifoldSignature& sig) {
  sig.validate();
  if (sig.boundary.empty()) return std::nullopt;  // closed chi=0 orbifolds are not annular
  if (euler_characteristic(sig) != Rational(0)) return std::nullopt;
  std::vector<int> cones = sig.cone_orders;
  std::sort(cones.begin(), cones.end());
  int nb = (int)sig.boundary.size();
  int plain = count_plain(sig);

  if (sig.orientable && sig.genus == 0) {
    if (nb == 2 && plain == 2 && cones.empty()) return AnnularType::Annulus;
    if (nb == 2 && plain == 1 && cones.empty()) {
      const BoundaryPattern& other =
          sig.boundary[sig.boundary[0].kind == BoundaryPattern::Kind::Plain ? 1 : 0];
      if (other.kind == BoundaryPattern::Kind::Mirror && other.corners.empty())
        return AnnularType::SilveredAnnulus;
    }
    if (nb == 1 && plain == 1 && cones == std::vector<int>{2, 2}) return AnnularType::ConeDisk22;
    if (nb == 1 && plain == 0) {
      const BoundaryPattern& b = sig.boundary[0];
      if (cones.empty() && is_pronged(b, 2)) return AnnularType::SilveredStrip;
      if (cones == std::vector<int>{2} && is_pronged(b, 1)) return AnnularType::ConeBigon;
      if (cones.empty() && b.kind == BoundaryPattern::Kind::Mixed && b.segments.size() == 4 &&
          b.full_orbifold_count() == 1 && b.corners == std::vector<int>{2, 2})
        return AnnularType::HalfSquare;
    }
    return std::nullopt;
  }
  if (!sig.orientable && sig.genus == 1 && nb == 1 && plain == 1 && cones.empty())
    return AnnularType::MobiusBand;
  return std::nullopt;
}

// ---- sewing ----------------------------------------------------------------

namespace {

const BoundaryPattern& circle_at(const OrbifoldSignature& sig, int idx) {
  if (idx < 0 || idx >= (int)sig.boundary.size())
    fail(ErrorCode::MissingComponent, "no boundary component at index " + std::to_string(idx));
  return sig.boundary[idx];
}

void require_plain(const BoundaryPattern& b) {
  if (b.kind != BoundaryPattern::Kind::Plain)
    fail(ErrorCode::WrongBoundaryKind, "operation requires a plain boundary circle");
}

void require_full_slot(const BoundaryPattern& b, int seg) {
  if (b.kind != BoundaryPattern::Kind::Mixed)
    fail(ErrorCode::WrongBoundaryKind, "operation requires a mixed circle with a full 1-orbifold");
  if (seg < 0 || seg >= (int)b.segments.size() ||
      b.segments[seg] != BoundaryPattern::Segment::FullOrbifold)
    fail(ErrorCode::MissingComponent, "segment index is not a boundary full 1-orbifold");
}

}  // namespace

OrbifoldSignature sew_signature_traced(const OrbifoldSignature& sig, const SewOp& op,
                                       SewUndo& undo) {
  sig.validate();
  undo = SewUndo{};
  undo.op = op;
  undo.was_orientable = sig.orientable;
  OrbifoldSignature out = sig;
  using K = SewOp::Kind;
  switch (op.kind) {
    case K::PasteClosed: {
      require_plain(circle_at(sig, op.b));
      require_plain(circle_at(sig, op.b2));
      if (op.b == op.b2)
        fail(ErrorCode::MissingComponent, "pasting a circle to itself is cross-capping");
      int lo = std::min(op.b, op.b2), hi = std::max(op.b, op.b2);
      out.boundary.erase(out.boundary.begin() + hi);
      out.boundary.erase(out.boundary.begin() + lo);
      out.genus += out.orientable ? 1 : 2;
      return out;
    }
    case K::Crosscap: {
      require_plain(circle_at(sig, op.b));
      out.boundary.erase(out.boundary.begin() + op.b);
      if (out.orientable) {
        out.orientable = false;
        out.genus = 2 * sig.genus + 1;
      } else {
        out.genus += 1;
      }
      return out;
    }
    case K::SilverClosed: {
      require_plain(circle_at(sig, op.b));
      out.boundary[op.b].kind = BoundaryPattern::Kind::Mirror;
      return out;
    }
    case K::FoldClosed: {
      require_plain(circle_at(sig, op.b));
      out.boundary.erase(out.boundary.begin() + op.b);
      out.cone_orders.push_back(2);
      out.cone_orders.push_back(2);
      return out;
    }
    case K::SilverFull: {
      const BoundaryPattern& b = circle_at(sig, op.b);
      require_full_slot(b, op.seg);
      auto arcs = arcs_of(b);
      int t = arc_index_of_slot(b, op.seg);
      int k = (int)arcs.size();
      undo.left_arc_corners = (int)arcs[t].size();
      if (k == 1) {
        out.boundary[op.b] = mirror_circle(concat(arcs[0], Arc{2, 2}));
      } else {
        Arc merged = concat3(arcs[t], Arc{2, 2}, arcs[(t + 1) % k]);
        std::vector<Arc> na;
        na.push_back(merged);
        for (int s = (t + 2) % k; s != t; s = (s + 1) % k) na.push_back(arcs[s]);
        out.boundary[op.b] = pattern_from_arcs(na);
      }
      return out;
    }
    case K::FoldFull: {
      const BoundaryPattern& b = circle_at(sig, op.b);
      require_full_slot(b, op.seg);
      auto arcs = arcs_of(b);
      int t = arc_index_of_slot(b, op.seg);
      int k = (int)arcs.size();
      undo.left_arc_corners = (int)arcs[t].size();
      if (k == 1) {
        out.boundary[op.b] = mirror_circle(arcs[0]);
      } else {
        Arc merged = concat(arcs[t], arcs[(t + 1) % k]);
        std::vector<Arc> na;
        na.push_back(merged);
        for (int s = (t + 2) % k; s != t; s = (s + 1) % k) na.push_back(arcs[s]);
        out.boundary[op.b] = pattern_from_arcs(na);
      }
      out.cone_orders.push_back(2);
      return out;
    }
    case K::PasteFull: {
      const BoundaryPattern& A = circle_at(sig, op.b);
      require_full_slot(A, op.seg);
      if (op.b == op.b2) {
        require_full_slot(A, op.seg2);
        if (op.seg == op.seg2)
          fail(ErrorCode::MissingComponent, "cannot paste a 1-orbifold to itself");
        auto arcs = arcs_of(A);
        int k = (int)arcs.size();
        int i = arc_index_of_slot(A, op.seg);
        int j = arc_index_of_slot(A, op.seg2);
        // chains between the two cut slots
        auto chain = [&](int from, int to) {
          std::vector<Arc> c;
          for (int t = (from + 1) % k; ; t = (t + 1) % k) {
            c.push_back(arcs[t]);
            if (t == to) break;
          }
          return c;
        };
        auto c1 = chain(i, j);
        auto c2 = chain(j, i);
        undo.a_arcs = (int)c1.size();
        undo.seam_split = {(int)c1.back().size(), (int)c2.back().size()};
        out.boundary[op.b] = close_chain(c1);
        out.boundary.push_back(close_chain(c2));
        return out;
      }
      const BoundaryPattern& B = circle_at(sig, op.b2);
      require_full_slot(B, op.seg2);
      auto A_arcs = arcs_of(A);
      auto B_arcs = arcs_of(B);
      int ka = (int)A_arcs.size(), kb = (int)B_arcs.size();
      int i = arc_index_of_slot(A, op.seg);
      int j = arc_index_of_slot(B, op.seg2);
      // linear chains starting after the cut slot
      std::vector<Arc> cx, cy;
      for (int t = (i + 1) % ka; ; t = (t + 1) % ka) {
        cx.push_back(A_arcs[t]);
        if (t == i) break;
      }
      for (int t = (j + 1) % kb; ; t = (t + 1) % kb) {
        cy.push_back(B_arcs[t]);
        if (t == j) break;
      }
      // glue with the second chain reversed (orientations oppose across the seam)
      std::vector<Arc> cyr;
      for (auto it = cy.rbegin(); it != cy.rend(); ++it) cyr.push_back(reversed(*it));
      undo.a_arcs = ka;
      undo.seam_split = {(int)cx.back().size(), (int)cyr.back().size()};
      std::vector<Arc> chain = cx;
      chain.back() = concat(chain.back(), cyr.front());
      for (size_t s = 1; s < cyr.size(); ++s) chain.push_back(cyr[s]);
      int lo = std::min(op.b, op.b2), hi = std::max(op.b, op.b2);
      out.boundary[lo] = close_chain(chain);
      out.boundary.erase(out.boundary.begin() + hi);
      out.genus += out.orientable ? 1 : 2;
      return out;
    }
  }
  fail(ErrorCode::BadInput, "unknown sewing operation");
}

OrbifoldSignature sew_signature(const OrbifoldSignature& sig, const SewOp& op) {
  SewUndo undo;
  return sew_signature_traced(sig, op, undo);
}

OrbifoldSignature paste_signatures(const OrbifoldSignature& s1, int b1,
                                   const OrbifoldSignature& s2, int b2) {
  s1.validate();
  s2.validate();
  require_plain(circle_at(s1, b1));
  require_plain(circle_at(s2, b2));
  OrbifoldSignature out;
  out.orientable = s1.orientable && s2.orientable;
  int chi = s1.underlying_euler() + s2.underlying_euler();
  int nb = (int)s1.boundary.size() + (int)s2.boundary.size() - 2;
  out.genus = out.orientable ? (2 - nb - chi) / 2 : (2 - nb - chi);
  for (int i = 0; i < (int)s1.boundary.size(); ++i)
    if (i != b1) out.boundary.push_back(s1.boundary[i]);
  for (int i = 0; i < (int)s2.boundary.size(); ++i)
    if (i != b2) out.boundary.push_back(s2.boundary[i]);
  out.cone_orders = s1.cone_orders;
  out.cone_orders.insert(out.cone_orders.end(), s2.cone_orders.begin(), s2.cone_orders.end());
  return out;
}

namespace {

std::vector<Arc> arcs_of_any(const BoundaryPattern& b) {
  if (b.kind == BoundaryPattern::Kind::Mirror) fail(ErrorCode::Internal, "arc view of mirror circle");
  return arcs_of(b);
}

// split a merged arc back: (left part size given)
std::pair<Arc, Arc> split_arc(const Arc& a, int left) {
  if (left > (int)a.size()) fail(ErrorCode::BadInput, "bad split");
  return {Arc(a.begin(), a.begin() + left), Arc(a.begin() + left, a.end())};
}

}  // namespace

OrbifoldSignature unsew_signature(const OrbifoldSignature& sig, const SewUndo& undo) {
  const SewOp& op = undo.op;
  OrbifoldSignature out = sig;
  using K = SewOp::Kind;
  switch (op.kind) {
    case K::PasteClosed: {
      out.genus -= undo.was_orientable ? 1 : 2;
      int lo = std::min(op.b, op.b2), hi = std::max(op.b, op.b2);
      out.boundary.insert(out.boundary.begin() + lo, BoundaryPattern{});
      out.boundary.insert(out.boundary.begin() + hi, BoundaryPattern{});
      return out;
    }
    case K::Crosscap: {
      if (undo.was_orientable) {
        out.orientable = true;
        out.genus = (sig.genus - 1) / 2;
      } else {
        out.genus -= 1;
      }
      out.boundary.insert(out.boundary.begin() + op.b, BoundaryPattern{});
      return out;
    }
    case K::SilverClosed: {
      out.boundary[op.b] = BoundaryPattern{};
      return out;
    }
    case K::FoldClosed: {
      for (int k = 0; k < 2; ++k) {
        auto it = std::find(out.cone_orders.rbegin(), out.cone_orders.rend(), 2);
        if (it == out.cone_orders.rend()) fail(ErrorCode::BadInput, "no fold cones to remove");
        out.cone_orders.erase(std::next(it).base());
      }
      out.boundary.insert(out.boundary.begin() + op.b, BoundaryPattern{});
      return out;
    }
    case K::SilverFull: {
      const BoundaryPattern& b = circle_at(sig, op.b);
      int L = undo.left_arc_corners;
      if (b.kind == BoundaryPattern::Kind::Mirror) {
        // came from a single-arc circle: corners = arc ++ [2,2]
        Arc c = b.corners;
        if ((int)c.size() < 2) fail(ErrorCode::BadInput, "unsilver: missing corner pair");
        c.resize(c.size() - 2);
        out.boundary[op.b] = pattern_from_arcs({c});
      } else {
        auto arcs = arcs_of_any(b);
        Arc merged = arcs[0];
        // merged = left ++ [2,2] ++ right
        Arc leftA(merged.begin(), merged.begin() + L);
        Arc rightA(merged.begin() + L + 2, merged.end());
        std::vector<Arc> na;
        na.push_back(leftA);
        na.push_back(rightA);
        for (size_t s = 1; s < arcs.size(); ++s) na.push_back(arcs[s]);
        // arcs order: left, O(restored), right, ... matches [a_t, O, a_{t+1}, ...]
        out.boundary[op.b] = pattern_from_arcs(na);
      }
      return out;
    }
    case K::FoldFull: {
      auto it = std::find(out.cone_orders.rbegin(), out.cone_orders.rend(), 2);
      if (it == out.cone_orders.rend()) fail(ErrorCode::BadInput, "no fold cone to remove");
      out.cone_orders.erase(std::next(it).base());
      const BoundaryPattern& b = circle_at(sig, op.b);
      int L = undo.left_arc_corners;
      if (b.kind == BoundaryPattern::Kind::Mirror) {
        out.boundary[op.b] = pattern_from_arcs({b.corners});
      } else {
        auto arcs = arcs_of_any(b);
        auto [leftA, rightA] = split_arc(arcs[0], L);
        std::vector<Arc> na;
        na.push_back(leftA);
        na.push_back(rightA);
        for (size_t s = 1; s < arcs.size(); ++s) na.push_back(arcs[s]);
        out.boundary[op.b] = pattern_from_arcs(na);
      }
      return out;
    }
    case K::PasteFull: {
      // reopen a circle that close_chain built from a linear chain whose last
      // arc had `back_size` corners; returns the chain [front, ..., back]
      auto open_chain = [](const BoundaryPattern& c, int back_size) {
        std::vector<Arc> chain;
        if (c.kind == BoundaryPattern::Kind::Mirror) {
          chain.push_back(c.corners);  // chain had a single arc
          return chain;
        }
        auto arcs = arcs_of_any(c);
        auto [b_, f_] = split_arc(arcs[0], back_size);
        chain.push_back(f_);
        for (size_t s = 1; s < arcs.size(); ++s) chain.push_back(arcs[s]);
        chain.push_back(b_);
        return chain;
      };
      if (op.b == op.b2) {
        const BoundaryPattern& c1 = circle_at(sig, op.b);
        const BoundaryPattern& c2 = sig.boundary.back();
        auto ch1 = open_chain(c1, undo.seam_split[0]);
        auto ch2 = open_chain(c2, undo.seam_split[1]);
        // original circle: O_i, ch1..., O_j, ch2... (cyclic)
        std::vector<Arc> arcs = ch1;
        for (auto& a : ch2) arcs.push_back(a);
        out.boundary[op.b] = pattern_from_arcs(arcs);
        out.boundary.pop_back();
        return out;
      }
      int lo = std::min(op.b, op.b2), hi = std::max(op.b, op.b2);
      const BoundaryPattern& c = circle_at(sig, lo);
      int ka = undo.a_arcs;
      int cx_back_size = undo.seam_split[0];
      int cyr_back_size = undo.seam_split[1];
      std::vector<Arc> cx, cyr;
      if (c.kind == BoundaryPattern::Kind::Mirror) {
        // ka = kb = 1: corners = a0 ++ rev(b0), cyclic starting at a0
        auto [aPart, bPart] = split_arc(c.corners, cx_back_size);
        cx.push_back(aPart);
        cyr.push_back(bPart);
      } else {
        auto arcs = arcs_of_any(c);
        int n = (int)arcs.size();  // = ka + kb - 2
        if (ka == 1) {
          // arcs[0] = cyrBack ++ a0 ++ cyrFront; arcs[1..] = cyr[1..kb-2]
          auto [cb, rest] = split_arc(arcs[0], cyr_back_size);
          auto [a0, cf] = split_arc(rest, cx_back_size);
          cx.push_back(a0);
          cyr.push_back(cf);
          for (int s = 1; s < n; ++s) cyr.push_back(arcs[s]);
          cyr.push_back(cb);
        } else if (n == ka - 1) {
          // kb = 1: arcs[0] = cxBack ++ revb0 ++ cxFront; arcs[1..] = cx[1..ka-2]
          auto [cb, rest] = split_arc(arcs[0], cx_back_size);
          auto [b0, cf] = split_arc(rest, cyr_back_size);
          cx.push_back(cf);
          for (int s = 1; s < n; ++s) cx.push_back(arcs[s]);
          cx.push_back(cb);
          cyr.push_back(b0);
        } else {
          // generic: arcs[0] = cyrBack ++ cxFront; arcs[ka-1] = cxBack ++ cyrFront
          auto [cb, cf] = split_arc(arcs[0], cyr_back_size);
          cx.push_back(cf);
          for (int s = 1; s < ka - 1; ++s) cx.push_back(arcs[s]);
          auto [cxb, cyf] = split_arc(arcs[ka - 1], cx_back_size);
          cx.push_back(cxb);
          cyr.push_back(cyf);
          for (int s = ka; s < n; ++s) cyr.push_back(arcs[s]);
          cyr.push_back(cb);
        }
      }
      std::vector<Arc> cy;
      for (auto it = cyr.rbegin(); it != cyr.rend(); ++it) cy.push_back(reversed(*it));
      OrbifoldSignature res = out;
      res.genus -= undo.was_orientable ? 1 : 2;
      res.boundary.erase(res.boundary.begin() + lo);
      BoundaryPattern pa = pattern_from_arcs(cx);
      BoundaryPattern pb = pattern_from_arcs(cy);
      res.boundary.insert(res.boundary.begin() + lo, op.b == lo ? pa : pb);
      res.boundary.insert(res.boundary.begin() + hi, op.b == lo ? pb : pa);
      return res;
    }
  }
  fail(ErrorCode::BadInput, "unknown sewing operation");
}

}  // namespace orbiproj
