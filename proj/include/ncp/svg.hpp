#pragma once

#include <string>
#include <vector>

#include "ncp/layout.hpp"

namespace ncp {

// Fixed 14-color categorical palette; labels map to colors by the rank of
// the label among the distinct labels present, modulo the palette size.
const std::vector<std::string>& svg_palette();

// One <circle> element per item in index order, fill by label palette,
// viewBox = layout bounding box plus a 5% margin. Numbers use shortest
// round-trip formatting, so equal layouts give byte-identical documents.
std::string layout_to_svg(const PackingLayout& layout);

void save_svg(const PackingLayout& layout, const std::string& path);

}  // namespace ncp
