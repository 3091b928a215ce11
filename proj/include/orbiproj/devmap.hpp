#pragma once

#include "orbiproj/structure.hpp"

namespace orbiproj {

struct Tile {
  Polygon poly;       // homogeneous vertices
  std::string word;   // reduced word over the generator alphabet
  int depth = 0;
};

struct Tessellation {
  std::vector<Tile> tiles;
  HomLine chart_line;  // the line kept at infinity
  Mat3 chart;          // rows: two affine axes and the chart line covector

  Eigen::Vector2d to_chart(const HomPoint& p) const;
};

struct ConvexityReport {
  bool passed = false;
  double hull_defect = 0.0;  // max outward vertex distance, hull diameter = 1
  int overlap_count = 0;
};

struct DevmapOptions {
  int tile_cap = 200000;
  bool parallel = false;  // reserved; enumeration is deterministic either way
};

Tessellation enumerate_tiles(const Structure& s, int depth,
                             const DevmapOptions& opts = DevmapOptions{},
                             const Tolerances& tol = default_tolerances());

ConvexityReport convexity_check(const Tessellation& t,
                                const Tolerances& tol = default_tolerances());

struct SvgStyle {
  int width_px = 800;
  std::string stroke = "#333333";
  std::string palette = "blues";  // blues | heat | gray
  bool clip_hull = false;
};

std::string render_svg(const Tessellation& t, const SvgStyle& style = SvgStyle{});

nlohmann::json tessellation_to_json(const Tessellation& t);

// group elements of the word ball, deduplicated; word strings are stable
struct BallElement {
  Collineation g;
  std::string word;
  int depth;
};
std::vector<BallElement> word_ball(const Structure& s, int depth, int cap,
                                   const Tolerances& tol = default_tolerances());

}  // namespace orbiproj
