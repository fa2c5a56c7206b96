#include "airnet/point_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "airnet/error.hpp"

namespace airnet {

namespace {

constexpr std::array<char, 4> kMagic = {'A', 'X', 'Y', 'Z'};

template <typename T>
T from_little_endian(const unsigned char* bytes) {
  T value;
  if constexpr (std::endian::native == std::endian::little) {
    std::memcpy(&value, bytes, sizeof(T));
  } else {
    unsigned char swapped[sizeof(T)];
    for (std::size_t b = 0; b < sizeof(T); ++b) swapped[b] = bytes[sizeof(T) - 1 - b];
    std::memcpy(&value, swapped, sizeof(T));
  }
  return value;
}

template <typename T>
void to_little_endian(T value, unsigned char* bytes) {
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native != std::endian::little) {
    for (std::size_t b = 0; b < sizeof(T) / 2; ++b) std::swap(bytes[b], bytes[sizeof(T) - 1 - b]);
  }
}

}  // namespace

PointSet read_xyz_ascii(std::istream& in, const std::string& source_id) {
  PointSet ps;
  ps.source_id = source_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    Vec3 p;
    if (!(fields >> p.x)) continue;  // blank or comment-only line
    if (!(fields >> p.y >> p.z)) {
      throw IoError(source_id + ":" + std::to_string(line_no) + ": expected three coordinates");
    }
    std::string extra;
    if (fields >> extra) {
      throw IoError(source_id + ":" + std::to_string(line_no) + ": trailing data '" + extra + "'");
    }
    ps.points.push_back(p);
  }
  return ps;
}

PointSet read_xyz_binary(std::istream& in, const std::string& source_id) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || magic != kMagic) {
    throw IoError(source_id + ": missing AXYZ magic");
  }
  unsigned char count_bytes[4];
  if (!in.read(reinterpret_cast<char*>(count_bytes), 4)) {
    throw IoError(source_id + ": truncated point count");
  }
  const auto count = from_little_endian<std::uint32_t>(count_bytes);

  PointSet ps;
  ps.source_id = source_id;
  ps.points.reserve(count);
  std::vector<unsigned char> buffer(24);
  for (std::uint32_t p = 0; p < count; ++p) {
    if (!in.read(reinterpret_cast<char*>(buffer.data()), 24)) {
      throw IoError(source_id + ": truncated after " + std::to_string(p) + " of " + std::to_string(count) +
                    " points");
    }
    ps.points.push_back({from_little_endian<double>(buffer.data()), from_little_endian<double>(buffer.data() + 8),
                         from_little_endian<double>(buffer.data() + 16)});
  }
  return ps;
}

PointSet read_points(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open points file " + path.string());
  std::array<char, 4> head{};
  in.read(head.data(), 4);
  const bool binary = in.gcount() == 4 && head == kMagic;
  in.clear();
  in.seekg(0);
  return binary ? read_xyz_binary(in, path.string()) : read_xyz_ascii(in, path.string());
}

void write_xyz_ascii(std::ostream& out, const PointSet& ps) {
  out.precision(17);
  for (const Vec3& p : ps.points) out << p.x << ' ' << p.y << ' ' << p.z << '\n';
}

void write_xyz_binary(std::ostream& out, const PointSet& ps) {
  if (ps.points.size() > UINT32_MAX) throw IoError("too many points for the binary format");
  out.write(kMagic.data(), 4);
  unsigned char bytes[24];
  to_little_endian(static_cast<std::uint32_t>(ps.points.size()), bytes);
  out.write(reinterpret_cast<const char*>(bytes), 4);
  for (const Vec3& p : ps.points) {
    to_little_endian(p.x, bytes);
    to_little_endian(p.y, bytes + 8);
    to_little_endian(p.z, bytes + 16);
    out.write(reinterpret_cast<const char*>(bytes), 24);
  }
}

void write_points_binary(const std::filesystem::path& path, const PointSet& ps) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write points file " + path.string());
  write_xyz_binary(out, ps);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace airnet
