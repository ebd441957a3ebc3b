#include "ncp/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ncp/errors.hpp"

namespace ncp {

namespace {

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

const std::vector<std::string>& svg_palette() {
  static const std::vector<std::string> palette = {
      "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1",
      "#ff9da7", "#9c755f", "#bab0ac", "#a0cbe8", "#ffbe7d", "#8cd17d", "#d37295"};
  return palette;
}

std::string layout_to_svg(const PackingLayout& layout) {
  if (layout.size() == 0) throw ValidationError("layout_to_svg: empty layout");

  // Screen y grows downward, so circles are drawn at -y.
  double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
  double max_r = 0.0;
  for (const PackedCircle& c : layout.circles) {
    min_x = std::min(min_x, c.pos.x - c.r);
    max_x = std::max(max_x, c.pos.x + c.r);
    min_y = std::min(min_y, -c.pos.y - c.r);
    max_y = std::max(max_y, -c.pos.y + c.r);
    max_r = std::max(max_r, c.r);
  }
  double margin = 0.05 * std::max(max_x - min_x, max_y - min_y);
  if (margin <= 0.0) margin = 0.05 * max_r;
  double w = (max_x - min_x) + 2.0 * margin;
  double h = (max_y - min_y) + 2.0 * margin;

  std::map<int, std::size_t> color_rank;
  for (const PackedCircle& c : layout.circles) color_rank.emplace(c.label, 0);
  std::size_t rank = 0;
  for (auto& [label, idx] : color_rank) idx = rank++ % svg_palette().size();

  long long px_w = 800;
  long long px_h = std::max<long long>(1, std::llround(800.0 * h / w));

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px_w << "\" height=\"" << px_h
      << "\" viewBox=\"" << fmt(min_x - margin) << " " << fmt(min_y - margin) << " " << fmt(w)
      << " " << fmt(h) << "\">\n";
  std::string stroke_width = fmt(0.02 * max_r);
  for (const PackedCircle& c : layout.circles) {
    out << "  <circle cx=\"" << fmt(c.pos.x) << "\" cy=\"" << fmt(-c.pos.y) << "\" r=\""
        << fmt(c.r) << "\" fill=\"" << svg_palette()[color_rank[c.label]]
        << "\" fill-opacity=\"0.85\" stroke=\"#333333\" stroke-width=\"" << stroke_width
        << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void save_svg(const PackingLayout& layout, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open for writing: " + path);
  f << layout_to_svg(layout);
  if (!f) throw ParseError("write failed: " + path);
}

}  // namespace ncp
