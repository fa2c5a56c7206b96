#include "airnet/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace airnet {

namespace {

enum class Paint : std::uint8_t { free, full, corridor };

const LayerNetwork& find_layer(const ZoneNetwork& zn, int layer) {
  for (const LayerNetwork& ln : zn.layers) {
    if (ln.layer == layer) return ln;
  }
  throw std::invalid_argument("render: zone has no layer " + std::to_string(layer));
}

const ZoneNetwork& require_zone(const AirNetwork& net, const ZoneCoord& zone) {
  const ZoneNetwork* zn = net.find_zone(zone);
  if (zn == nullptr) {
    throw std::invalid_argument("render: unknown zone (" + std::to_string(zone.a) + "," + std::to_string(zone.b) +
                                ")");
  }
  return *zn;
}

void paint_layer(const AirNetwork& net, const ZoneNetwork& zn, const LayerNetwork& ln, std::vector<Paint>& cells) {
  const int side = net.config.grid.zone_side;
  if (const auto it = net.slices.find({zn.zone, ln.layer}); it != net.slices.end()) {
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
      if (it->second.is_full(idx) && cells[idx] == Paint::free) cells[idx] = Paint::full;
    }
  }
  const std::int64_t oi = static_cast<std::int64_t>(side) * zn.zone.a;
  const std::int64_t oj = static_cast<std::int64_t>(side) * zn.zone.b;
  for (const Corridor& c : ln.corridors) {
    for (const CellCoord& cell : c.cells) {
      const auto u = static_cast<std::size_t>(cell.i - oi);
      const auto v = static_cast<std::size_t>(cell.j - oj);
      cells[v * static_cast<std::size_t>(side) + u] = Paint::corridor;
    }
  }
}

std::string to_svg(const std::vector<Paint>& cells, int side) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 4 * side << "\" height=\"" << 4 * side
      << "\" viewBox=\"0 0 " << side << ' ' << side << "\" shape-rendering=\"crispEdges\">\n";
  for (int v = side - 1; v >= 0; --v) {
    for (int u = 0; u < side; ++u) {
      const Paint p = cells[static_cast<std::size_t>(v) * static_cast<std::size_t>(side) + static_cast<std::size_t>(u)];
      const char* fill = p == Paint::corridor ? kCorridorColor : p == Paint::full ? kFullColor : kFreeColor;
      out << "<rect x=\"" << u << "\" y=\"" << side - 1 - v << "\" width=\"1\" height=\"1\" fill=\"" << fill
          << "\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string render_layer(const AirNetwork& net, const ZoneCoord& zone, int layer) {
  const ZoneNetwork& zn = require_zone(net, zone);
  const LayerNetwork& ln = find_layer(zn, layer);
  const int side = net.config.grid.zone_side;
  std::vector<Paint> cells(static_cast<std::size_t>(side) * static_cast<std::size_t>(side), Paint::free);
  paint_layer(net, zn, ln, cells);
  return to_svg(cells, side);
}

std::string render_combined(const AirNetwork& net, const ZoneCoord& zone) {
  const ZoneNetwork& zn = require_zone(net, zone);
  const int side = net.config.grid.zone_side;
  std::vector<Paint> cells(static_cast<std::size_t>(side) * static_cast<std::size_t>(side), Paint::free);
  for (const LayerNetwork& ln : zn.layers) paint_layer(net, zn, ln, cells);
  return to_svg(cells, side);
}

PgmImage render_psi(const PsiField& field) {
  PgmImage image;
  image.width = field.side;
  image.height = field.side;
  image.maxval = 255;
  image.pixels.assign(field.psi.size(), 0);
  if (field.psi.empty()) return image;
  const auto [lo, hi] = std::minmax_element(field.psi.begin(), field.psi.end());
  const double min = *lo;
  const double range = *hi - *lo;
  if (!(range > 0.0)) return image;
  for (int row = 0; row < field.side; ++row) {
    const int v = field.side - 1 - row;
    for (int u = 0; u < field.side; ++u) {
      const double t = (field.at(u, v) - min) / range;
      image.pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(field.side) + static_cast<std::size_t>(u)] =
          static_cast<std::uint16_t>(std::lround(255.0 * t));
    }
  }
  return image;
}

}  // namespace airnet
