#include "airnet/raster_io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "airnet/error.hpp"

namespace airnet {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      if (!token.empty()) break;
      continue;
    }
    if (std::isspace(ch)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(ch));
  }
  return token;
}

int header_int(std::istream& in, const std::string& source, const char* what) {
  const std::string token = next_token(in);
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw IoError(source + ": bad PGM " + what + " '" + token + "'");
  }
}

}  // namespace

PgmImage read_pgm(std::istream& in, const std::string& source) {
  const std::string magic = next_token(in);
  if (magic != "P2" && magic != "P5") throw IoError(source + ": not a P2/P5 PGM image");
  PgmImage image;
  image.width = header_int(in, source, "width");
  image.height = header_int(in, source, "height");
  image.maxval = header_int(in, source, "maxval");
  if (image.width <= 0 || image.height <= 0 || image.maxval <= 0 || image.maxval > 65535) {
    throw IoError(source + ": PGM header out of range");
  }
  const auto count = static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height);
  image.pixels.resize(count);

  if (magic == "P2") {
    for (std::size_t p = 0; p < count; ++p) {
      long value;
      if (!(in >> value) || value < 0 || value > image.maxval) {
        throw IoError(source + ": bad or missing pixel " + std::to_string(p));
      }
      image.pixels[p] = static_cast<std::uint16_t>(value);
    }
  } else {
    // Exactly one whitespace byte separates the header from the raster;
    // next_token already consumed it.
    const bool wide = image.maxval > 255;
    std::vector<unsigned char> raw(count * (wide ? 2 : 1));
    if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
      throw IoError(source + ": truncated P5 raster");
    }
    for (std::size_t p = 0; p < count; ++p) {
      image.pixels[p] = wide ? static_cast<std::uint16_t>((raw[2 * p] << 8) | raw[2 * p + 1]) : raw[p];
    }
  }
  return image;
}

PgmImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image " + path.string());
  return read_pgm(in, path.string());
}

void write_pgm(std::ostream& out, const PgmImage& image) {
  out << "P5\n" << image.width << ' ' << image.height << '\n' << image.maxval << '\n';
  const bool wide = image.maxval > 255;
  for (const std::uint16_t px : image.pixels) {
    if (wide) out.put(static_cast<char>(px >> 8));
    out.put(static_cast<char>(px & 0xFF));
  }
}

void write_pgm(const std::filesystem::path& path, const PgmImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write image " + path.string());
  write_pgm(out, image);
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<std::uint8_t> mask_from_pgm(const PgmImage& image, int side) {
  if (image.width != side || image.height != side) {
    throw std::invalid_argument("obstacle raster is " + std::to_string(image.width) + "x" +
                                std::to_string(image.height) + ", expected " + std::to_string(side) + "x" +
                                std::to_string(side));
  }
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(side) * static_cast<std::size_t>(side));
  for (int row = 0; row < side; ++row) {
    const int v = side - 1 - row;
    for (int col = 0; col < side; ++col) {
      mask[static_cast<std::size_t>(v) * side + col] = image.at(col, row) != 0 ? 1 : 0;
    }
  }
  return mask;
}

std::vector<ObstacleRaster> load_raster_sidecar(const std::filesystem::path& sidecar, int side) {
  std::ifstream in(sidecar);
  if (!in) throw IoError("cannot open raster sidecar " + sidecar.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(sidecar.string() + ": " + e.what());
  }
  if (!doc.is_array()) throw IoError(sidecar.string() + ": expected an array of {file, altitude_m}");

  std::vector<ObstacleRaster> rasters;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("file") || !entry.contains("altitude_m") ||
        !entry["file"].is_string() || !entry["altitude_m"].is_number()) {
      throw IoError(sidecar.string() + ": each entry needs a string 'file' and numeric 'altitude_m'");
    }
    const std::filesystem::path file = sidecar.parent_path() / entry["file"].get<std::string>();
    rasters.push_back({entry["altitude_m"].get<double>(), mask_from_pgm(read_pgm(file), side)});
  }
  return rasters;
}

}  // namespace airnet
