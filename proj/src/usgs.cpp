#include "airnet/usgs.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

namespace airnet::usgs {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string bbox_param(const BoundingBox& b) {
  std::ostringstream out;
  out.precision(17);
  out << b.min_x << ',' << b.min_y << ',' << b.max_x << ',' << b.max_y;
  return out.str();
}

// Splits "scheme://host[:port]/path" into the client base and the path.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  const auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) throw TransportError("endpoint has no scheme: " + endpoint);
  const auto path_start = endpoint.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {endpoint, "/"};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

double number_field(const nlohmann::json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) throw DecodeError(std::string("catalog entry lacks numeric '") + key + "'");
  return it->get<double>();
}

}  // namespace

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv(kCacheDirEnv); env != nullptr && *env != '\0') return env;
  return std::filesystem::temp_directory_path() / "airnet-usgs-cache";
}

std::vector<ProductDescriptor> parse_catalog(const std::string& body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("catalog response is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("items") || !doc["items"].is_array()) {
    throw DecodeError("catalog response has no 'items' array");
  }
  std::vector<ProductDescriptor> out;
  for (const auto& item : doc["items"]) {
    if (!item.is_object()) throw DecodeError("catalog item is not an object");
    const auto title = item.find("title");
    const auto url = item.find("downloadURL");
    const auto box = item.find("boundingBox");
    if (title == item.end() || !title->is_string() || url == item.end() || !url->is_string() ||
        box == item.end() || !box->is_object()) {
      throw DecodeError("catalog item lacks title, downloadURL or boundingBox");
    }
    out.push_back({title->get<std::string>(), url->get<std::string>(),
                   {number_field(*box, "minX"), number_field(*box, "minY"), number_field(*box, "maxX"),
                    number_field(*box, "maxY")}});
  }
  return out;
}

Client::Client(ClientOptions options) : options_(std::move(options)) {
  if (options_.cache_dir.empty()) options_.cache_dir = default_cache_dir();
}

std::filesystem::path Client::cache_path(const BoundingBox& query) const {
  std::ostringstream name;
  name << "catalog_" << std::hex << fnv1a(options_.endpoint + '|' + options_.dataset + '|' + bbox_param(query))
       << ".json";
  return options_.cache_dir / name.str();
}

std::string Client::fetch_body(const BoundingBox& query) {
  const std::filesystem::path cached = cache_path(query);
  {
    std::lock_guard lock(cache_mutex_);
    if (std::ifstream in(cached, std::ios::binary); in) {
      std::ostringstream body;
      body << in.rdbuf();
      return body.str();
    }
  }
  if (options_.offline) throw NetworkDisabledError();

  const auto [base, path] = split_endpoint(options_.endpoint);
  httplib::Client client(base);
  client.set_connection_timeout(options_.timeout_seconds, 0);
  client.set_read_timeout(options_.timeout_seconds, 0);
  client.set_follow_location(true);
  const httplib::Params params{{"bbox", bbox_param(query)},
                               {"datasets", options_.dataset},
                               {"outputFormat", "JSON"},
                               {"max", "1000"}};
  const auto result = client.Get(path, params, httplib::Headers{});
  if (!result) {
    throw TransportError("catalog request to " + options_.endpoint + " failed: " + httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw TransportError("catalog request to " + options_.endpoint + " returned HTTP " +
                         std::to_string(result->status));
  }
  // Malformed responses are never cached.
  parse_catalog(result->body);

  std::lock_guard lock(cache_mutex_);
  std::error_code ec;
  std::filesystem::create_directories(options_.cache_dir, ec);
  std::ofstream out(cached, std::ios::binary);
  if (out) out << result->body;
  return result->body;
}

std::vector<ProductDescriptor> Client::fetch_products(const BoundingBox& query) {
  std::vector<ProductDescriptor> hits;
  for (auto& entry : parse_catalog(fetch_body(query))) {
    if (entry.bbox.intersects(query)) hits.push_back(std::move(entry));
  }
  return hits;
}

}  // namespace airnet::usgs
