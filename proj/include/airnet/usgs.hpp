#pragma once

// Catalog client for the USGS National Map products API.
//
// Only lists downloadable point-cloud products intersecting a rectangle; it
// never downloads or decodes tiles. Responses are cached on disk keyed by
// endpoint and query rectangle.

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "airnet/error.hpp"

namespace airnet::usgs {

/// Environment variable naming the catalog cache directory.
inline constexpr const char* kCacheDirEnv = "AIRNET_CACHE_DIR";
inline constexpr const char* kDefaultEndpoint = "https://tnmaccess.nationalmap.gov/api/v1/products";

class TransportError : public IoError {
 public:
  using IoError::IoError;
};

class DecodeError : public IoError {
 public:
  using IoError::IoError;
};

class NetworkDisabledError : public IoError {
 public:
  NetworkDisabledError() : IoError("network disabled") {}
};

struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool intersects(const BoundingBox& other) const {
    return min_x <= other.max_x && other.min_x <= max_x && min_y <= other.max_y && other.min_y <= max_y;
  }
};

struct ProductDescriptor {
  std::string title;
  std::string download_url;
  BoundingBox bbox;
};

struct ClientOptions {
  std::string endpoint = kDefaultEndpoint;
  std::filesystem::path cache_dir;
  bool offline = false;
  int timeout_seconds = 30;
  std::string dataset = "Lidar Point Cloud (LPC)";
};

/// Cache directory from AIRNET_CACHE_DIR, else the system temp directory.
std::filesystem::path default_cache_dir();

/// Parses a catalog response body. Throws DecodeError.
std::vector<ProductDescriptor> parse_catalog(const std::string& body);

class Client {
 public:
  explicit Client(ClientOptions options);

  /// Entries whose bounding box intersects the query. In offline mode a
  /// cached response is still served; without one, NetworkDisabledError is
  /// thrown before any socket is opened.
  std::vector<ProductDescriptor> fetch_products(const BoundingBox& query);

  std::filesystem::path cache_path(const BoundingBox& query) const;

 private:
  std::string fetch_body(const BoundingBox& query);

  ClientOptions options_;
  std::mutex cache_mutex_;
};

}  // namespace airnet::usgs
