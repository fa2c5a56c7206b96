#pragma once

// Point file formats.
//
//   ASCII XYZ : one "x y z" triple per line; '#' starts a comment.
//   Binary    : magic "AXYZ", u32 count, then count x 3 little-endian f64.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "airnet/elevation.hpp"

namespace airnet {

PointSet read_xyz_ascii(std::istream& in, const std::string& source_id);
PointSet read_xyz_binary(std::istream& in, const std::string& source_id);

/// Detects the format from the leading magic. Throws IoError on a missing
/// file or malformed content.
PointSet read_points(const std::filesystem::path& path);

void write_xyz_ascii(std::ostream& out, const PointSet& ps);
void write_xyz_binary(std::ostream& out, const PointSet& ps);
void write_points_binary(const std::filesystem::path& path, const PointSet& ps);

}  // namespace airnet
