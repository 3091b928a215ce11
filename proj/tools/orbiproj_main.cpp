#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "orbiproj/devmap.hpp"
#include "orbiproj/hyperbolic.hpp"
#include "orbiproj/solver.hpp"
#include "orbiproj/surgery.hpp"

using nlohmann::json;
using namespace orbiproj;

namespace {

json read_input(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return json::parse(text);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

Structure solve_request(const json& j, const Tolerances& tol) {
  std::string type = j.at("type").get<std::string>();
  auto fiber1 = [&]() -> std::optional<double> {
    if (!j.contains("fiber")) return std::nullopt;
    if (j["fiber"].is_array()) {
      if (j["fiber"].empty()) return std::nullopt;
      return j["fiber"].at(0).get<double>();
    }
    return j["fiber"].get<double>();
  };
  if (type == "P1" || type == "P2" || type == "P3" || type == "P4") {
    std::vector<EndSpec> ends;
    for (const auto& ej : j.at("ends")) ends.push_back(endspec_from_json(ej));
    std::optional<Fiber2> fiber;
    if (j.contains("fiber")) {
      auto f = j["fiber"];
      fiber = Fiber2{f.at(0).get<double>(), f.at(1).get<double>()};
    }
    Structure s = solve_pants_family(ends, fiber, tol);
    if (s.type != type)
      fail(ErrorCode::BadInput, "request type " + type + " does not match the ends (" + s.type + ")");
    return s;
  }
  if (type == "A1")
    return solve_crown_a1(endspec_from_json(j.at("end")), j.at("full").get<double>(),
                          j.value("fiber", 0.0), tol);
  if (type == "A2")
    return solve_crown_a2(endspec_from_json(j.at("end")), j.at("corner").get<int>(), fiber1(),
                          tol);
  if (type == "A3")
    return solve_disk_a3(j.at("cone").get<int>(), j.at("full").get<double>(),
                         j.value("fiber", 0.0), tol);
  if (type == "A4")
    return solve_disk_a4(j.at("corner").get<int>(), j.at("cone").get<int>(), fiber1(), tol);
  if (type == "D1") {
    auto inv = j.at("invariants");
    return solve_hexagon_d1(inv.at(0).get<double>(), inv.at(1).get<double>(),
                            inv.at(2).get<double>(), j.value("fiber", 0.0), tol);
  }
  if (type == "D2") {
    auto inv = j.at("invariants");
    return solve_pentagon_d2(j.at("corner").get<int>(), inv.at(0).get<double>(),
                             inv.at(1).get<double>(), fiber1(), tol);
  }
  if (type == "D3") {
    auto ords = j.at("orders");
    return solve_quad_d3(ords.at(0).get<int>(), ords.at(1).get<int>(),
                         j.at("invariant").get<double>(), fiber1(), tol);
  }
  if (type == "D4") {
    auto ords = j.at("orders");
    std::optional<double> mu;
    if (j.contains("mu")) mu = j["mu"].get<double>();
    return solve_triangle_d4(ords.at(0).get<int>(), ords.at(1).get<int>(),
                             ords.at(2).get<int>(), mu, tol);
  }
  if (type == "hypD1" || type == "hypD2" || type == "hypD3" || type == "hypD4") {
    std::vector<int> orders;
    std::vector<double> lengths;
    if (j.contains("orders")) orders = j["orders"].get<std::vector<int>>();
    if (j.contains("lengths")) lengths = j["lengths"].get<std::vector<double>>();
    return build_hyperbolic_elementary(type.substr(3), orders, lengths, tol);
  }
  fail(ErrorCode::BadInput, "unknown structure type '" + type + "'");
}

int run_dim(const json& in, const std::string& out_path) {
  OrbifoldSignature sig = signature_from_json(in);
  Rational chi = euler_characteristic(sig);
  json out{{"chi", chi.str()}};
  if (chi < Rational(0)) {
    out["deform_dim"] = deformation_dimension(sig);
    out["teich_dim"] = teichmuller_dimension(sig);
  } else {
    out["deform_dim"] = nullptr;
    out["teich_dim"] = nullptr;
  }
  write_output(out_path, out.dump(2) + "\n");
  return 0;
}

int run_classify(const json& in, const std::string& out_path) {
  OrbifoldSignature sig = signature_from_json(in);
  json out{{"chi", euler_characteristic(sig).str()}};
  if (auto m = classify_elementary(sig)) {
    out["elementary"] = elementary_type_name(m->type);
    out["orders"] = m->orders;
  } else {
    out["elementary"] = nullptr;
  }
  if (auto a = classify_zero_euler(sig)) {
    out["annular"] = (int)*a;
  } else {
    out["annular"] = nullptr;
  }
  write_output(out_path, out.dump(2) + "\n");
  return 0;
}

int run_solve(const json& in, const std::string& out_path, const Tolerances& tol) {
  Structure s = solve_request(in, tol);
  write_output(out_path, structure_to_json(s).dump(2) + "\n");
  return 0;
}

int run_surgery(const json& in, const std::string& out_path, const Tolerances& tol) {
  std::map<std::string, Structure> env;
  if (in.contains("structures")) {
    for (const auto& [name, sj] : in["structures"].items()) {
      if (sj.is_string()) {
        env.emplace(name, structure_from_json(read_input(sj.get<std::string>())));
      } else if (sj.contains("generators")) {
        env.emplace(name, structure_from_json(sj));
      } else {
        env.emplace(name, solve_request(sj, tol));
      }
    }
  }
  for (const auto& step : in.at("steps")) {
    std::string op = step.at("op").get<std::string>();
    std::string as = step.at("as").get<std::string>();
    auto get = [&](const std::string& key) -> Structure& {
      auto it = env.find(step.at(key).get<std::string>());
      if (it == env.end())
        fail(ErrorCode::BadInput, "unknown structure '" + step.at(key).get<std::string>() + "'");
      return it->second;
    };
    if (op == "paste") {
      PasteParams pp;
      if (step.contains("params")) {
        auto p = step["params"];
        pp.u = p.at(0).get<double>();
        if (p.size() > 1) pp.v = p.at(1).get<double>();
      }
      Structure& left = get("left");
      int b1 = step.at("left_end").get<int>();
      int b2 = step.at("right_end").get<int>();
      std::string rname = step.at("right").get<std::string>();
      std::string lname = step.at("left").get<std::string>();
      Structure result = (rname == lname) ? paste(left, b1, left, b2, pp, tol)
                                          : paste(left, b1, get("right"), b2, pp, tol);
      env.insert_or_assign(as, std::move(result));
    } else if (op == "crosscap") {
      env.insert_or_assign(as, crosscap(get("left"), step.at("end").get<int>(), tol));
    } else if (op == "silver") {
      env.insert_or_assign(as, silver(get("left"), step.at("end").get<int>(), tol));
    } else if (op == "fold") {
      std::optional<double> param;
      if (step.contains("param")) param = step["param"].get<double>();
      env.insert_or_assign(as, fold(get("left"), step.at("end").get<int>(), param, tol));
    } else {
      fail(ErrorCode::BadInput, "unknown surgery op '" + op + "'");
    }
  }
  std::string emit = in.at("emit").get<std::string>();
  auto it = env.find(emit);
  if (it == env.end()) fail(ErrorCode::BadInput, "unknown emit structure '" + emit + "'");
  write_output(out_path, structure_to_json(it->second).dump(2) + "\n");
  return 0;
}

int run_devmap(const json& in, const std::string& out_path, int depth,
               const std::string& tiles_path, const SvgStyle& style, const Tolerances& tol) {
  Structure s = in.contains("generators") ? structure_from_json(in) : solve_request(in, tol);
  Tessellation t = enumerate_tiles(s, depth, DevmapOptions{}, tol);
  write_output(out_path, render_svg(t, style));
  if (!tiles_path.empty()) write_output(tiles_path, tessellation_to_json(t).dump() + "\n");
  return 0;
}

int run_check(const json& in, const std::string& out_path, const Tolerances& tol) {
  Structure s = structure_from_json(in);
  json report;
  report["relation_residual"] = s.max_relation_residual();
  bool ok = s.max_relation_residual() <= tol.relation_residual;
  json ends = json::array();
  try {
    auto inv = extract_invariants(s, tol);
    for (size_t i = 0; i < inv.size(); ++i) {
      json e = endspec_to_json(inv[i]);
      // compare against the stored spec
      const EndSpec& want = s.ends[i].spec;
      double err = 0.0;
      if (want.kind == EndSpec::Kind::Hyp)
        err = std::abs(want.lambda - inv[i].lambda) + std::abs(want.tau - inv[i].tau);
      if (want.kind == EndSpec::Kind::FullOrbifold)
        err = std::abs(want.crossratio - inv[i].crossratio);
      e["deviation"] = err;
      if (err > 1e-7) ok = false;
      ends.push_back(e);
    }
  } catch (const Error& err) {
    ok = false;
    report["extract_error"] = err.what();
  }
  report["ends"] = ends;
  try {
    Tessellation t = enumerate_tiles(s, 3, DevmapOptions{}, tol);
    auto conv = convexity_check(t, tol);
    report["convexity"] = {{"passed", conv.passed},
                           {"hull_defect", conv.hull_defect},
                           {"overlap_count", conv.overlap_count}};
    ok = ok && conv.passed;
  } catch (const Error& err) {
    ok = false;
    report["devmap_error"] = err.what();
  }
  report["passed"] = ok;
  write_output(out_path, report.dump(2) + "\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbiproj: convex projective structures on 2-orbifolds"};
  app.require_subcommand(1);

  std::string input, output, tiles_json;
  int depth = 3;
  double tolerance_scale = 1.0;
  SvgStyle style;

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--input,-i", input, "input JSON file (default: stdin)");
    cmd->add_option("--output,-o", output, "output file (default: stdout)");
    cmd->add_option("--tolerance", tolerance_scale, "scale factor on all tolerances");
  };

  CLI::App* dim = app.add_subcommand("dim", "Euler characteristic and deformation dimensions");
  add_io(dim);
  CLI::App* classify_cmd = app.add_subcommand("classify", "elementary / annular type of a signature");
  add_io(classify_cmd);
  CLI::App* solve = app.add_subcommand("solve", "solve an elementary structure request");
  add_io(solve);
  CLI::App* surgery_cmd = app.add_subcommand("surgery", "run a sewing script");
  add_io(surgery_cmd);
  CLI::App* devmap_cmd = app.add_subcommand("devmap", "render a developing map as SVG");
  add_io(devmap_cmd);
  devmap_cmd->add_option("--depth", depth, "maximum word length of deck transformations");
  devmap_cmd->add_option("--json", tiles_json, "also dump the tessellation as JSON");
  devmap_cmd->add_option("--width", style.width_px, "SVG width in pixels");
  devmap_cmd->add_option("--stroke", style.stroke, "SVG stroke color");
  devmap_cmd->add_option("--palette", style.palette, "fill palette: blues | heat | gray");
  CLI::App* check = app.add_subcommand("check", "re-verify the invariants of a structure file");
  add_io(check);

  CLI11_PARSE(app, argc, argv);

  Tolerances tol = default_tolerances();
  tol.projective_eq *= tolerance_scale;
  tol.relation_residual *= tolerance_scale;
  tol.convexity *= tolerance_scale;
  tol.dedup *= tolerance_scale;

  try {
    json in = read_input(input);
    if (dim->parsed()) return run_dim(in, output);
    if (classify_cmd->parsed()) return run_classify(in, output);
    if (solve->parsed()) return run_solve(in, output, tol);
    if (surgery_cmd->parsed()) return run_surgery(in, output, tol);
    if (devmap_cmd->parsed()) return run_devmap(in, output, depth, tiles_json, style, tol);
    if (check->parsed()) return run_check(in, output, tol);
  } catch (const Error& e) {
    json err{{"error", error_code_name(e.code())}, {"message", e.detail()}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const json::exception& e) {
    json err{{"error", "MalformedInput"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err{{"error", "MalformedInput"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}
