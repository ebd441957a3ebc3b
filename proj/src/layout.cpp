#include "ncp/layout.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ncp/errors.hpp"

namespace ncp {

std::vector<geom::Circle> PackingLayout::as_circles() const {
  std::vector<geom::Circle> out(circles.size());
  for (std::size_t i = 0; i < circles.size(); ++i) out[i] = {circles[i].pos, circles[i].r};
  return out;
}

std::vector<int> PackingLayout::labels() const {
  std::vector<int> out(circles.size());
  for (std::size_t i = 0; i < circles.size(); ++i) out[i] = circles[i].label;
  return out;
}

std::string layout_to_json(const PackingLayout& layout) {
  nlohmann::json circles = nlohmann::json::array();
  for (const PackedCircle& c : layout.circles) {
    nlohmann::json jc;
    jc["id"] = c.id;
    jc["x"] = c.pos.x;
    jc["y"] = c.pos.y;
    jc["r"] = c.r;
    jc["label"] = c.label;
    circles.push_back(std::move(jc));
  }
  nlohmann::json root;
  root["scale"] = layout.scale;
  root["circles"] = std::move(circles);
  root["meta"] = {{"method", layout.method},
                  {"seed", layout.seed},
                  {"config", layout.config},
                  {"runtime_seconds", layout.runtime_seconds}};
  return root.dump(2) + "\n";
}

PackingLayout layout_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("layout json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("scale") || !j.contains("circles") ||
      !j["circles"].is_array()) {
    throw ParseError("layout json: expected object with 'scale' and 'circles'");
  }
  PackingLayout out;
  out.scale = j["scale"].get<double>();
  if (!(out.scale > 0.0)) throw ValidationError("layout json: scale must be positive");
  for (std::size_t i = 0; i < j["circles"].size(); ++i) {
    const auto& jc = j["circles"][i];
    std::string where = "layout json circle " + std::to_string(i);
    if (!jc.is_object() || !jc.contains("x") || !jc.contains("y") || !jc.contains("r")) {
      throw ParseError(where + ": needs x, y, r");
    }
    PackedCircle c;
    c.id = jc.contains("id") ? jc["id"].get<std::string>() : std::to_string(i);
    c.pos = {jc["x"].get<double>(), jc["y"].get<double>()};
    c.r = jc["r"].get<double>();
    c.label = jc.contains("label") ? jc["label"].get<int>() : 0;
    if (!(c.r > 0.0)) throw ValidationError(where + ": radius must be positive");
    out.circles.push_back(std::move(c));
  }
  if (j.contains("meta") && j["meta"].is_object()) {
    const auto& m = j["meta"];
    if (m.contains("method")) out.method = m["method"].get<std::string>();
    if (m.contains("seed")) out.seed = m["seed"].get<std::uint64_t>();
    if (m.contains("config")) out.config = m["config"].get<std::string>();
    if (m.contains("runtime_seconds")) out.runtime_seconds = m["runtime_seconds"].get<double>();
  }
  return out;
}

void save_layout(const PackingLayout& layout, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file '" + path + "'");
  out << layout_to_json(layout);
}

PackingLayout load_layout(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open layout file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return layout_from_json(buf.str());
}

}  // namespace ncp
