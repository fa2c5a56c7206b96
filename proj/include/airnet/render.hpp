#pragma once

// Figure-style renders: SVG cell rasters of corridor layers and grayscale
// dumps of solved stream functions.

#include <string>

#include "airnet/network.hpp"
#include "airnet/raster_io.hpp"

namespace airnet {

inline constexpr const char* kFullColor = "#808080";
inline constexpr const char* kCorridorColor = "#FF0000";
inline constexpr const char* kFreeColor = "#FFFFFF";

/// One unit square per cell, north up: full grey, corridor red, other
/// cells white. Full cells come from the in-memory slice when the network
/// still carries it. Throws std::invalid_argument for an unknown zone or
/// layer.
std::string render_layer(const AirNetwork& net, const ZoneCoord& zone, int layer);

/// All layers of a zone overlaid: corridor cells of any layer red, cells
/// full in any layer grey.
std::string render_combined(const AirNetwork& net, const ZoneCoord& zone);

/// 8-bit image, row 0 north, mapping [min psi, max psi] linearly onto
/// [0, 255]. A constant field renders black.
PgmImage render_psi(const PsiField& field);

}  // namespace airnet
