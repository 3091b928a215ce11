#include <doctest.h>

#include <random>

#include "orbiproj/signature.hpp"

using namespace orbiproj;

namespace {

using Kind = BoundaryPattern::Kind;
using Seg = BoundaryPattern::Segment;

OrbifoldSignature sphere_cones(std::vector<int> cones) {
  OrbifoldSignature s;
  s.cone_orders = std::move(cones);
  return s;
}

BoundaryPattern plain() { return BoundaryPattern{}; }

BoundaryPattern mirror(std::vector<int> corners = {}) {
  BoundaryPattern b;
  b.kind = Kind::Mirror;
  b.corners = std::move(corners);
  return b;
}

BoundaryPattern mixed(std::vector<Seg> segs, std::vector<int> corners = {}) {
  BoundaryPattern b;
  b.kind = Kind::Mixed;
  b.segments = std::move(segs);
  b.corners = std::move(corners);
  return b;
}

OrbifoldSignature disk(std::vector<int> cones, BoundaryPattern b) {
  OrbifoldSignature s;
  s.cone_orders = std::move(cones);
  s.boundary.push_back(std::move(b));
  return s;
}

std::mt19937 rng(7771);

}  // namespace

TEST_CASE("euler characteristic examples") {
  CHECK(euler_characteristic(sphere_cones({2, 3, 7})) == Rational(-1, 42));
  // disk with three corner reflectors 2, 3, 7 on a fully mirrored boundary
  CHECK(euler_characteristic(disk({}, mirror({2, 3, 7}))) == Rational(-1, 84));
  // annulus
  OrbifoldSignature ann;
  ann.boundary = {plain(), plain()};
  CHECK(euler_characteristic(ann) == Rational(0));
}

TEST_CASE("dimension table of the rigid families") {
  auto dims = [](const OrbifoldSignature& s) {
    return std::pair<int, int>(deformation_dimension(s), teichmuller_dimension(s));
  };
  CHECK(dims(sphere_cones({3, 4, 5})) == std::pair<int, int>(2, 0));
  CHECK(dims(sphere_cones({5, 7, 11})) == std::pair<int, int>(2, 0));
  CHECK(dims(sphere_cones({2, 4, 5})) == std::pair<int, int>(0, 0));
  CHECK(dims(sphere_cones({2, 3, 7})) == std::pair<int, int>(0, 0));
  // disk, cone p, corner q on a mirrored boundary
  CHECK(dims(disk({3}, mirror({7}))) == std::pair<int, int>(1, 0));
  CHECK(dims(disk({5}, mirror({2}))) == std::pair<int, int>(0, 0));
  // disk with three corners
  CHECK(dims(disk({}, mirror({3, 3, 4}))) == std::pair<int, int>(1, 0));
  CHECK(dims(disk({}, mirror({2, 3, 7}))) == std::pair<int, int>(0, 0));
}

TEST_CASE("dimension of the elementary families matches their parameter counts") {
  // hexagon: chi(X) = 1, three boundary 1-orbifolds
  OrbifoldSignature hex = disk({}, mixed({Seg::Mirror, Seg::FullOrbifold, Seg::Mirror,
                                          Seg::FullOrbifold, Seg::Mirror, Seg::FullOrbifold}));
  CHECK(deformation_dimension(hex) == 4);
  CHECK(teichmuller_dimension(hex) == 3);
  // pair of pants
  OrbifoldSignature pants;
  pants.boundary = {plain(), plain(), plain()};
  CHECK(deformation_dimension(pants) == 8);
  CHECK(teichmuller_dimension(pants) == 3);
  // annulus with one cone point
  OrbifoldSignature p2;
  p2.boundary = {plain(), plain()};
  p2.cone_orders = {5};
  CHECK(deformation_dimension(p2) == 6);
  p2.cone_orders = {2};
  CHECK(deformation_dimension(p2) == 4);
}

TEST_CASE("deformation dimension rejects nonnegative euler characteristic") {
  CHECK_THROWS_AS(deformation_dimension(sphere_cones({2, 2, 2})), Error);
  OrbifoldSignature torus;
  torus.genus = 1;
  CHECK_THROWS_AS(teichmuller_dimension(torus), Error);
}

TEST_CASE("elementary classification") {
  // annulus with one cone of order 5 is P2
  OrbifoldSignature p2;
  p2.boundary = {plain(), plain()};
  p2.cone_orders = {5};
  auto m = classify_elementary(p2);
  REQUIRE(m.has_value());
  CHECK(m->type == ElementaryType::P2);
  CHECK(m->orders == std::vector<int>{5});

  // disk with cones (2,2) has chi = 0: not elementary
  CHECK(!classify_elementary(disk({2, 2}, plain())).has_value());

  // quadrilateral: disk with corners (3,5) and one boundary 1-orbifold
  OrbifoldSignature d3 =
      disk({}, mixed({Seg::Mirror, Seg::Mirror, Seg::Mirror, Seg::FullOrbifold}, {3, 5}));
  auto m3 = classify_elementary(d3);
  REQUIRE(m3.has_value());
  CHECK(m3->type == ElementaryType::D3);

  // full twelve-type sweep
  OrbifoldSignature pants;
  pants.boundary = {plain(), plain(), plain()};
  CHECK(classify_elementary(pants)->type == ElementaryType::P1);
  OrbifoldSignature p3 = disk({3, 5}, plain());
  CHECK(classify_elementary(p3)->type == ElementaryType::P3);
  CHECK(!classify_elementary(disk({2, 2}, plain())).has_value());
  CHECK(classify_elementary(sphere_cones({3, 5, 5}))->type == ElementaryType::P4);
  CHECK(!classify_elementary(sphere_cones({2, 3, 6})).has_value());  // chi = 0
  OrbifoldSignature a1;
  a1.boundary = {plain(), mixed({Seg::Mirror, Seg::FullOrbifold})};
  CHECK(classify_elementary(a1)->type == ElementaryType::A1);
  OrbifoldSignature a2;
  a2.boundary = {plain(), mirror({4})};
  CHECK(classify_elementary(a2)->type == ElementaryType::A2);
  OrbifoldSignature a3 = disk({5}, mixed({Seg::Mirror, Seg::FullOrbifold}));
  CHECK(classify_elementary(a3)->type == ElementaryType::A3);
  CHECK(!classify_elementary(disk({2}, mixed({Seg::Mirror, Seg::FullOrbifold}))).has_value());
  OrbifoldSignature a4 = disk({5}, mirror({3}));
  CHECK(classify_elementary(a4)->type == ElementaryType::A4);
  CHECK(!classify_elementary(disk({4}, mirror({2}))).has_value());  // 1/4 + 1/4 = 1/2
  OrbifoldSignature hex = disk({}, mixed({Seg::Mirror, Seg::FullOrbifold, Seg::Mirror,
                                          Seg::FullOrbifold, Seg::Mirror, Seg::FullOrbifold}));
  CHECK(classify_elementary(hex)->type == ElementaryType::D1);
  OrbifoldSignature pent = disk(
      {}, mixed({Seg::Mirror, Seg::Mirror, Seg::FullOrbifold, Seg::Mirror, Seg::FullOrbifold},
                {5}));
  CHECK(classify_elementary(pent)->type == ElementaryType::D2);
  CHECK(classify_elementary(disk({}, mirror({3, 3, 4})))->type == ElementaryType::D4);
  CHECK(!classify_elementary(disk({}, mirror({2, 3, 6}))).has_value());
}

TEST_CASE("annular classification") {
  OrbifoldSignature cd = disk({2, 2}, plain());
  CHECK(classify_zero_euler(cd) == AnnularType::ConeDisk22);
  OrbifoldSignature bigon = disk({2}, mixed({Seg::Mirror, Seg::FullOrbifold}));
  CHECK(classify_zero_euler(bigon) == AnnularType::ConeBigon);
  OrbifoldSignature torus;
  torus.genus = 1;
  CHECK(!classify_zero_euler(torus).has_value());
  OrbifoldSignature ann;
  ann.boundary = {plain(), plain()};
  CHECK(classify_zero_euler(ann) == AnnularType::Annulus);
  OrbifoldSignature mob;
  mob.orientable = false;
  mob.genus = 1;
  mob.boundary = {plain()};
  CHECK(classify_zero_euler(mob) == AnnularType::MobiusBand);
  OrbifoldSignature silv;
  silv.boundary = {plain(), mirror()};
  CHECK(classify_zero_euler(silv) == AnnularType::SilveredAnnulus);
  OrbifoldSignature strip = disk(
      {}, mixed({Seg::Mirror, Seg::FullOrbifold, Seg::Mirror, Seg::FullOrbifold}));
  CHECK(classify_zero_euler(strip) == AnnularType::SilveredStrip);
  OrbifoldSignature halfsq =
      disk({}, mixed({Seg::Mirror, Seg::Mirror, Seg::Mirror, Seg::FullOrbifold}, {2, 2}));
  CHECK(classify_zero_euler(halfsq) == AnnularType::HalfSquare);
  CHECK(!classify_zero_euler(sphere_cones({3, 3, 3})).has_value());
}

TEST_CASE("sewing examples") {
  OrbifoldSignature pants;
  pants.boundary = {plain(), plain(), plain()};

  // silvering a plain circle turns it into a mirror circle, chi unchanged
  OrbifoldSignature silvered = sew_signature(pants, {SewOp::Kind::SilverClosed, 0});
  CHECK(silvered.boundary[0].kind == Kind::Mirror);
  CHECK(euler_characteristic(silvered) == euler_characteristic(pants));

  // folding a plain circle trades it for two order-two cone points
  OrbifoldSignature folded = sew_signature(pants, {SewOp::Kind::FoldClosed, 1});
  CHECK(folded.boundary.size() == 2);
  CHECK(std::count(folded.cone_orders.begin(), folded.cone_orders.end(), 2) == 2);
  CHECK(euler_characteristic(folded) == euler_characteristic(pants));

  // silvering a boundary full 1-orbifold gains two corner reflectors of order two
  OrbifoldSignature a1;
  a1.boundary = {plain(), mixed({Seg::Mirror, Seg::FullOrbifold})};
  SewOp sf{SewOp::Kind::SilverFull, 1};
  sf.seg = 1;
  OrbifoldSignature sa1 = sew_signature(a1, sf);
  auto corners = sa1.corner_orders();
  CHECK(corners == std::vector<int>{2, 2});
  CHECK(sa1.full_orbifold_count() == 0);
  CHECK(euler_characteristic(sa1) == euler_characteristic(a1));

  // wrong kinds are rejected
  CHECK_THROWS_AS(sew_signature(silvered, {SewOp::Kind::SilverClosed, 0}), Error);
  CHECK_THROWS_AS(sew_signature(pants, {SewOp::Kind::PasteClosed, 0, 0, 0}), Error);
  SewOp missing{SewOp::Kind::Crosscap, 7};
  CHECK_THROWS_AS(sew_signature(pants, missing), Error);
}

TEST_CASE("chi preservation and sew/unsew round trips over a generated battery") {
  std::uniform_int_distribution<int> genus_d(0, 2), cone_d(0, 2), order_d(2, 9), nb_d(1, 3);
  int tested = 0;
  for (int trial = 0; trial < 400; ++trial) {
    OrbifoldSignature s;
    s.genus = genus_d(rng);
    int nc = cone_d(rng);
    for (int i = 0; i < nc; ++i) s.cone_orders.push_back(order_d(rng));
    int nb = nb_d(rng);
    for (int i = 0; i < nb; ++i) {
      switch (rng() % 3) {
        case 0: s.boundary.push_back(plain()); break;
        case 1: {
          std::vector<int> cs;
          for (unsigned k = 0; k < rng() % 3; ++k) cs.push_back(order_d(rng));
          s.boundary.push_back(mirror(cs));
          break;
        }
        default: {
          int prongs = 1 + rng() % 3;
          std::vector<Seg> segs;
          std::vector<int> cs;
          for (int p = 0; p < prongs; ++p) {
            int run = 1 + rng() % 2;
            for (int r = 0; r < run; ++r) segs.push_back(Seg::Mirror);
            for (int r = 0; r + 1 < run; ++r) cs.push_back(order_d(rng));
            segs.push_back(Seg::FullOrbifold);
          }
          s.boundary.push_back(mixed(segs, cs));
          break;
        }
      }
    }
    Rational chi = euler_characteristic(s);
    // try every applicable operation on this signature
    std::vector<SewOp> ops;
    for (int b = 0; b < (int)s.boundary.size(); ++b) {
      if (s.boundary[b].kind == Kind::Plain) {
        ops.push_back({SewOp::Kind::SilverClosed, b});
        ops.push_back({SewOp::Kind::FoldClosed, b});
        ops.push_back({SewOp::Kind::Crosscap, b});
        for (int b2 = b + 1; b2 < (int)s.boundary.size(); ++b2)
          if (s.boundary[b2].kind == Kind::Plain)
            ops.push_back({SewOp::Kind::PasteClosed, b, 0, b2, 0});
      }
      if (s.boundary[b].kind == Kind::Mixed) {
        for (int seg = 0; seg < (int)s.boundary[b].segments.size(); ++seg) {
          if (s.boundary[b].segments[seg] != Seg::FullOrbifold) continue;
          SewOp o{SewOp::Kind::SilverFull, b};
          o.seg = seg;
          ops.push_back(o);
          o.kind = SewOp::Kind::FoldFull;
          ops.push_back(o);
          // paste to another slot
          for (int b2 = b; b2 < (int)s.boundary.size(); ++b2) {
            if (s.boundary[b2].kind != Kind::Mixed) continue;
            for (int s2 = (b2 == b ? seg + 1 : 0); s2 < (int)s.boundary[b2].segments.size();
                 ++s2) {
              if (s.boundary[b2].segments[s2] != Seg::FullOrbifold) continue;
              SewOp p{SewOp::Kind::PasteFull, b};
              p.seg = seg;
              p.b2 = b2;
              p.seg2 = s2;
              ops.push_back(p);
            }
          }
        }
      }
    }
    for (const SewOp& op : ops) {
      SewUndo undo;
      OrbifoldSignature sewn = sew_signature_traced(s, op, undo);
      CHECK(euler_characteristic(sewn) == chi);  // exact rational equality
      OrbifoldSignature back = unsew_signature(sewn, undo);
      CHECK(back == s);
      ++tested;
    }
  }
  CHECK(tested >= 200);
}

TEST_CASE("additivity of chi under signature pasting") {
  // chi(S) = chi(S1) + chi(S2) - chi(circle), chi(circle) = 0
  OrbifoldSignature s1 = disk({3, 7}, plain());
  OrbifoldSignature s2;
  s2.boundary = {plain(), plain()};
  s2.cone_orders = {4};
  OrbifoldSignature glued = paste_signatures(s1, 0, s2, 0);
  CHECK(euler_characteristic(glued) ==
        euler_characteristic(s1) + euler_characteristic(s2));
}
