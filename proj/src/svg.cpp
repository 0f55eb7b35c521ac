// Copyright 2026 the voranon authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "voranon/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace voranon {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kMargin = 20.0;

std::string fmt(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return std::string(buffer);
}

int hue_to_channel(double p, double q, double t) {
  if (t < 0.0) t += 1.0;
  if (t > 1.0) t -= 1.0;
  double value = p;
  if (t < 1.0 / 6.0) {
    value = p + (q - p) * 6.0 * t;
  } else if (t < 1.0 / 2.0) {
    value = q;
  } else if (t < 2.0 / 3.0) {
    value = p + (q - p) * (2.0 / 3.0 - t) * 6.0;
  }
  return static_cast<int>(std::lround(value * 255.0));
}

}  // namespace

std::string aggregated_color(int aggregated_id) {
  // Golden-angle hue stepping keeps nearby ids visually distinct.
  const double hue = static_cast<double>((aggregated_id * 137) % 360) / 360.0;
  const double saturation = 0.65;
  const double lightness = 0.5;
  const double q = lightness + saturation - lightness * saturation;
  const double p = 2.0 * lightness - q;
  char buffer[8];
  std::snprintf(buffer, sizeof(buffer), "#%02x%02x%02x", hue_to_channel(p, q, hue + 1.0 / 3.0),
                hue_to_channel(p, q, hue), hue_to_channel(p, q, hue - 1.0 / 3.0));
  return std::string(buffer);
}

std::string render_map_svg(std::span<const InitialRegion> regions,
                           const AggregationResult& result, const VoronoiDiagram* diagram) {
  std::vector<Point> anchors;
  anchors.reserve(regions.size() + result.sites.size());
  for (const InitialRegion& region : regions) anchors.push_back(region.location);
  for (const Point& site : result.sites) anchors.push_back(site);
  const Rect extent = expand_rect(bounding_rect(anchors), 0.05);

  const double scale = (kCanvas - 2.0 * kMargin) /
                       std::max(extent.width(), extent.height());
  const double width = extent.width() * scale + 2.0 * kMargin;
  const double height = extent.height() * scale + 2.0 * kMargin;
  auto sx = [&](double x) { return kMargin + (x - extent.min_x) * scale; };
  auto sy = [&](double y) { return height - kMargin - (y - extent.min_y) * scale; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
  out << "  <rect width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" fill=\"#ffffff\"/>\n";

  if (diagram != nullptr) {
    out << "  <g stroke=\"#bbbbbb\" stroke-width=\"1\" fill=\"none\">\n";
    for (std::size_t s = 0; s < diagram->site_count(); ++s) {
      const Polygon& cell = diagram->cell(s);
      out << "    <polygon points=\"";
      for (std::size_t i = 0; i < cell.size(); ++i) {
        if (i > 0) out << ' ';
        out << fmt(sx(cell[i].x)) << ',' << fmt(sy(cell[i].y));
      }
      out << "\"/>\n";
    }
    out << "  </g>\n";
  }

  out << "  <g stroke=\"none\">\n";
  for (const InitialRegion& region : regions) {
    const auto it = result.region_mapping.find(region.region_id);
    const std::string color =
        it != result.region_mapping.end() ? aggregated_color(it->second) : "#000000";
    out << "    <circle cx=\"" << fmt(sx(region.location.x)) << "\" cy=\""
        << fmt(sy(region.location.y)) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
  }
  out << "  </g>\n";

  out << "  <g stroke=\"#000000\" stroke-width=\"1.5\" fill=\"#ffffff\">\n";
  for (const Point& site : result.sites) {
    out << "    <circle cx=\"" << fmt(sx(site.x)) << "\" cy=\"" << fmt(sy(site.y))
        << "\" r=\"4\"/>\n";
  }
  out << "  </g>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace voranon
