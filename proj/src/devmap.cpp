#include "orbiproj/devmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_map>

namespace orbiproj {

namespace {

// sign-canonical |det|=1 representative for dedup hashing
Mat3 canonical(const Collineation& g) {
  Mat3 m = g.m;
  const double* d = m.data();
  int best = 0;
  for (int i = 1; i < 9; ++i)
    if (std::abs(d[i]) > std::abs(d[best])) best = i;
  if (d[best] < 0) m = -m;
  return m;
}

struct TwoGridIndex {
  // two shifted quantization grids so that boundary straddling cannot split a
  // true duplicate pair across buckets
  double cell;
  std::unordered_map<std::string, std::vector<int>> grid[2];
  std::vector<Mat3> items;

  explicit TwoGridIndex(double cell_size) : cell(cell_size) {}

  std::string key(const Mat3& m, int which) const {
    char buf[220];
    int off = 0;
    const double* d = m.data();
    for (int i = 0; i < 9; ++i) {
      long q = std::lround(d[i] / cell + (which ? 0.5 : 0.0));
      off += std::snprintf(buf + off, sizeof(buf) - off, "%ld,", q);
    }
    return std::string(buf, off);
  }

  bool contains(const Mat3& m, double tol_dist) const {
    for (int w = 0; w < 2; ++w) {
      auto it = grid[w].find(key(m, w));
      if (it == grid[w].end()) continue;
      for (int idx : it->second)
        if ((items[idx] - m).cwiseAbs().maxCoeff() < tol_dist) return true;
    }
    return false;
  }

  void insert(const Mat3& m) {
    int idx = (int)items.size();
    items.push_back(m);
    for (int w = 0; w < 2; ++w) grid[w][key(m, w)].push_back(idx);
  }
};

struct Letter {
  std::string token;
  Mat3 m;
  std::string inverse_token;
};

std::vector<Letter> alphabet(const Structure& s, const Tolerances& tol) {
  std::vector<Letter> out;
  for (const auto& [name, g] : s.generators) {
    bool involution = (g * g).identity_residual() < tol.relation_residual;
    out.push_back({name, g.m, involution ? name : name + "~"});
    if (!involution) out.push_back({name + "~", Mat3(g.m.inverse()), name});
  }
  return out;
}

}  // namespace

std::vector<BallElement> word_ball(const Structure& s, int depth, int cap,
                                   const Tolerances& tol) {
  auto letters = alphabet(s, tol);
  std::vector<BallElement> out;
  TwoGridIndex index(1e-5);
  Mat3 id = Mat3::Identity();
  index.insert(id);
  out.push_back({Collineation(id), "", 0});
  struct Node {
    Mat3 m;
    std::string word;
    std::string last_inv;  // token whose application would cancel
  };
  std::vector<Node> frontier{{id, "", ""}};
  for (int d = 1; d <= depth; ++d) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (const Letter& L : letters) {
        if (L.token == node.last_inv) continue;  // reduced words only
        Mat3 m = node.m * L.m;
        Collineation g(m);
        Mat3 cm = canonical(g);
        if (index.contains(cm, tol.dedup)) continue;
        index.insert(cm);
        std::string w = node.word.empty() ? L.token : node.word + " " + L.token;
        out.push_back({g, w, d});
        next.push_back({cm, w, L.inverse_token});
        if ((int)out.size() > cap)
          fail(ErrorCode::ExplosionLimit, "group ball exceeds the configured cap");
      }
    }
    frontier = std::move(next);
  }
  return out;
}

Eigen::Vector2d Tessellation::to_chart(const HomPoint& p) const {
  Vec3 c = chart * p.v;
  return {c[0] / c[2], c[1] / c[2]};
}

namespace {

Mat3 chart_frame(const Vec3& line) {
  Vec3 n = line.normalized();
  // two unit vectors spanning the plane orthogonal to n (Euclidean)
  Vec3 a = std::abs(n[0]) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  Vec3 u1 = (a - a.dot(n) * n).normalized();
  Vec3 u2 = n.cross(u1);
  Mat3 k;
  k.row(0) = u1;
  k.row(1) = u2;
  k.row(2) = n;
  return k;
}

// Choose the line at infinity.  A tile stays finite and renders as the
// intended polygon exactly when its (matrix-image) vertex representatives all
// sit on one side of the line; representatives of different tiles may use
// opposite lifts, so the sign condition is per tile.
Vec3 select_chart(const std::vector<Tile>& tiles) {
  std::vector<std::vector<Vec3>> vt;
  for (const auto& t : tiles) {
    std::vector<Vec3> vs;
    for (const auto& p : t.poly) vs.push_back(p.v.normalized());
    vt.push_back(std::move(vs));
  }
  auto clearance = [&](const Vec3& n) {
    double best = 1e300;
    for (const auto& tile : vt) {
      double sign = 0;
      for (const Vec3& v : tile) {
        double d = n.dot(v);
        if (std::abs(d) < 1e-12) return -1.0;
        double si = d > 0 ? 1 : -1;
        if (sign == 0) sign = si;
        else if (si != sign) return -1.0;
        best = std::min(best, std::abs(d));
      }
    }
    return best;
  };
  Vec3 best_n = Vec3::Zero();
  double best_c = -1.0;
  std::vector<Vec3> cands = {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}};
  const int N = 400;
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int i = 0; i < N; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / N;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = 2.0 * M_PI * i / golden;
    cands.push_back(Vec3(r * std::cos(phi), r * std::sin(phi), z));
  }
  for (const Vec3& c : cands) {
    double cl = clearance(c.normalized());
    if (cl > best_c) {
      best_c = cl;
      best_n = c.normalized();
    }
  }
  if (best_c <= 0.0)
    fail(ErrorCode::ChartFailure,
         "no sampled affine chart keeps every tile finite and unbroken");
  return best_n;
}

}  // namespace

Tessellation enumerate_tiles(const Structure& s, int depth, const DevmapOptions& opts,
                             const Tolerances& tol) {
  if (depth < 0) fail(ErrorCode::BadInput, "depth must be >= 0");
  if (s.tiles.empty()) fail(ErrorCode::MalformedStructure, "structure carries no tiles");
  s.check_relations(tol);
  int per = (int)s.tiles.size();
  auto ball = word_ball(s, depth, std::max(1, opts.tile_cap / per), tol);
  Tessellation out;
  for (const auto& el : ball) {
    for (size_t ti = 0; ti < s.tiles.size(); ++ti) {
      Tile t;
      t.depth = el.depth;
      t.word = el.word.empty() ? "e" : el.word;
      if (s.tiles.size() > 1) t.word += "|" + std::to_string(ti);
      for (const HomPoint& v : s.tiles[ti]) t.poly.push_back(el.g.apply(v));
      out.tiles.push_back(std::move(t));
    }
  }
  // stable ordering: depth, then word
  std::sort(out.tiles.begin(), out.tiles.end(), [](const Tile& a, const Tile& b) {
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.word < b.word;
  });
  Vec3 line = select_chart(out.tiles);
  out.chart_line = HomLine(line);
  out.chart = chart_frame(line);
  return out;
}

namespace {

struct P2 {
  double x, y;
};

double cross2(const P2& o, const P2& a, const P2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::vector<P2> convex_hull(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end(), [](const P2& a, const P2& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const P2& a, const P2& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  int n = (int)pts.size();
  if (n < 3) return pts;
  std::vector<P2> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (int i = n - 2, t = k + 1; i >= 0; --i) {
    while (k >= t && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// strictly inside with a positive clearance margin
bool point_in_convex(const P2& p, const std::vector<P2>& poly, double margin) {
  int n = (int)poly.size();
  if (n < 3) return false;
  double sign = 0;
  for (int i = 0; i < n; ++i) {
    const P2& a = poly[i];
    const P2& b = poly[(i + 1) % n];
    double len = std::max(std::hypot(b.x - a.x, b.y - a.y), 1e-300);
    double d = cross2(a, b, p) / len;
    if (std::abs(d) < margin) return false;
    double si = d > 0 ? 1 : -1;
    if (sign == 0) sign = si;
    else if (si != sign) return false;
  }
  return true;
}

}  // namespace

ConvexityReport convexity_check(const Tessellation& t, const Tolerances& tol) {
  ConvexityReport rep;
  if (t.tiles.empty()) return rep;
  std::vector<P2> all;
  std::vector<std::vector<P2>> polys;
  polys.reserve(t.tiles.size());
  for (const auto& tile : t.tiles) {
    std::vector<P2> poly;
    for (const auto& v : tile.poly) {
      auto c = t.to_chart(v);
      poly.push_back({c[0], c[1]});
      all.push_back({c[0], c[1]});
    }
    polys.push_back(std::move(poly));
  }
  auto hull = convex_hull(all);
  // scale-free defect: normalize by the hull diameter
  double diam = 0.0;
  for (size_t i = 0; i < hull.size(); ++i)
    for (size_t j = i + 1; j < hull.size(); ++j)
      diam = std::max(diam, std::hypot(hull[i].x - hull[j].x, hull[i].y - hull[j].y));
  if (diam <= 0) diam = 1.0;
  double defect = 0.0;
  int n = (int)hull.size();
  if (n >= 3) {
    for (const P2& p : all) {
      double worst = 0.0;  // hull is counterclockwise; negative cross = outside
      for (int i = 0; i < n; ++i) {
        const P2& a = hull[i];
        const P2& b = hull[(i + 1) % n];
        double len = std::max(std::hypot(b.x - a.x, b.y - a.y), 1e-300);
        worst = std::max(worst, -cross2(a, b, p) / len);
      }
      defect = std::max(defect, worst);
    }
  }
  rep.hull_defect = defect / diam;

  // overlap sampling: tile centroids against other tiles with bbox overlap
  struct BBox {
    double x0, y0, x1, y1;
  };
  std::vector<BBox> boxes;
  std::vector<P2> centroids;
  for (const auto& poly : polys) {
    BBox b{1e300, 1e300, -1e300, -1e300};
    P2 c{0, 0};
    for (const auto& p : poly) {
      b.x0 = std::min(b.x0, p.x);
      b.y0 = std::min(b.y0, p.y);
      b.x1 = std::max(b.x1, p.x);
      b.y1 = std::max(b.y1, p.y);
      c.x += p.x;
      c.y += p.y;
    }
    c.x /= poly.size();
    c.y /= poly.size();
    boxes.push_back(b);
    centroids.push_back(c);
  }
  int overlaps = 0;
  double margin = tol.convexity * diam;
  for (size_t i = 0; i < polys.size(); ++i) {
    for (size_t j = 0; j < polys.size(); ++j) {
      if (i == j) continue;
      if (boxes[i].x1 < boxes[j].x0 || boxes[j].x1 < boxes[i].x0 ||
          boxes[i].y1 < boxes[j].y0 || boxes[j].y1 < boxes[i].y0)
        continue;
      if (point_in_convex(centroids[i], polys[j], margin)) ++overlaps;
    }
  }
  rep.overlap_count = overlaps;
  rep.passed = rep.hull_defect < tol.convexity && overlaps == 0;
  return rep;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string depth_color(const std::string& palette, int depth, int max_depth) {
  double t = max_depth > 0 ? double(depth) / max_depth : 0.0;
  int r, g, b;
  if (palette == "heat") {
    r = (int)(250 - 60 * t);
    g = (int)(230 - 180 * t);
    b = (int)(200 - 170 * t);
  } else if (palette == "gray") {
    r = g = b = (int)(245 - 130 * t);
  } else {  // blues
    r = (int)(235 - 150 * t);
    g = (int)(242 - 110 * t);
    b = (int)(250 - 60 * t);
  }
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string render_svg(const Tessellation& t, const SvgStyle& style) {
  if (t.tiles.empty()) fail(ErrorCode::BadInput, "empty tessellation");
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  int max_depth = 0;
  for (const auto& tile : t.tiles) {
    max_depth = std::max(max_depth, tile.depth);
    for (const auto& v : tile.poly) {
      auto c = t.to_chart(v);
      x0 = std::min(x0, c[0]);
      x1 = std::max(x1, c[0]);
      y0 = std::min(y0, c[1]);
      y1 = std::max(y1, c[1]);
    }
  }
  double mx = 0.05 * (x1 - x0), my = 0.05 * (y1 - y0);
  x0 -= mx;
  x1 += mx;
  y0 -= my;
  y1 += my;
  double w = x1 - x0, h = y1 - y0;
  double scale = style.width_px / w;
  double hpx = h * scale;
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(style.width_px) + "\" height=\"" + fmt(hpx) + "\" viewBox=\"0 0 " +
         std::to_string(style.width_px) + " " + fmt(hpx) + "\">\n";
  double stroke_w = std::max(0.5, style.width_px / 1200.0);
  for (const auto& tile : t.tiles) {
    std::string d;
    bool first = true;
    for (const auto& v : tile.poly) {
      auto c = t.to_chart(v);
      double px = (c[0] - x0) * scale;
      double py = (y1 - c[1]) * scale;  // flip y for SVG
      d += (first ? "M" : " L") + fmt(px) + "," + fmt(py);
      first = false;
    }
    d += " Z";
    out += "<path d=\"" + d + "\" fill=\"" + depth_color(style.palette, tile.depth, max_depth) +
           "\" stroke=\"" + style.stroke + "\" stroke-width=\"" + fmt(stroke_w) +
           "\" fill-opacity=\"0.85\"><title>" + tile.word + "</title></path>\n";
  }
  out += "</svg>\n";
  return out;
}

nlohmann::json tessellation_to_json(const Tessellation& t) {
  nlohmann::json tiles = nlohmann::json::array();
  for (const auto& tile : t.tiles) {
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : tile.poly) {
      auto c = t.to_chart(v);
      verts.push_back({c[0], c[1]});
    }
    tiles.push_back(
        nlohmann::json{{"word", tile.word}, {"depth", tile.depth}, {"vertices", verts}});
  }
  return nlohmann::json{
      {"tiles", tiles},
      {"chart", {{"line", {t.chart_line.l[0], t.chart_line.l[1], t.chart_line.l[2]}}}}};
}

}  // namespace orbiproj
