#include "airnet/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "airnet/error.hpp"
#include "airnet/network_io.hpp"
#include "airnet/render.hpp"

#ifdef AIRNET_HAVE_USGS
#include "airnet/usgs.hpp"
#endif

namespace airnet::cli {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string zone_tag(const ZoneCoord& z) { return std::to_string(z.a) + "_" + std::to_string(z.b); }

std::vector<double> split_numbers(const std::string& text, std::size_t expected, const std::string& what) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(what + ": bad number '" + item + "' in '" + text + "'");
    }
  }
  if (values.size() != expected) {
    throw ConfigError(what + ": expected " + std::to_string(expected) + " comma-separated values, got '" + text + "'");
  }
  return values;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ConvergenceError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace

void apply_overrides(RunConfig& cfg, const GenerateOverrides& overrides) {
  if (overrides.output_dir) {
    cfg.output_dir = std::filesystem::absolute(*overrides.output_dir).lexically_normal().string();
  }
  if (overrides.tol) {
    if (!(*overrides.tol > 0.0)) throw ConfigError("--tol must be positive");
    cfg.network.solver.tol = *overrides.tol;
  }
  if (overrides.render) {
    cfg.render.layers = *overrides.render;
    cfg.render.combined = *overrides.render;
    if (!*overrides.render) cfg.render.psi = false;
  }
  if (overrides.offline) cfg.offline = true;
}

GenerateOutcome run_generate(const RunConfig& cfg) {
  cfg.network.validate();
  GenerateOutcome outcome;
  const std::filesystem::path out_dir = resolve_path(cfg, cfg.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw IoError("cannot create output directory " + out_dir.string());
  }

  const ZoneSources sources = load_sources(cfg);
  for (const auto& [zone, source] : sources) {
    if (source.has_map() && source.map().clamped_columns() > 0) {
      outcome.warnings.push_back("zone (" + std::to_string(zone.a) + "," + std::to_string(zone.b) +
                                 "): " + std::to_string(source.map().clamped_columns()) +
                                 " columns below the anchor altitude clamped to ground");
    }
  }
  AirNetwork net = generate(cfg.network, sources);
  if (!net.metadata.failures.empty()) {
    const GenerationFailure& f = net.metadata.failures.front();
    throw ConvergenceError("zone (" + std::to_string(f.zone.a) + "," + std::to_string(f.zone.b) + ") layer " +
                               std::to_string(f.layer) + ": " + f.message,
                           0, 0.0);
  }

  const NetworkStats s = stats(net);
  write_text(out_dir / "network.json", network_to_json(net, run_config_to_json(cfg)).dump() + "\n");
  write_text(out_dir / "stats.txt", stats_text(s));
  for (const ZoneNetwork& zn : net.zones) {
    if (cfg.render.layers) {
      for (const LayerNetwork& ln : zn.layers) {
        write_text(out_dir / ("layer_" + zone_tag(zn.zone) + "_" + std::to_string(ln.layer) + ".svg"),
                   render_layer(net, zn.zone, ln.layer));
      }
    }
    if (cfg.render.combined) {
      write_text(out_dir / ("combined_" + zone_tag(zn.zone) + ".svg"), render_combined(net, zn.zone));
    }
    if (cfg.render.psi) {
      for (const LayerNetwork& ln : zn.layers) {
        const auto it = net.fields.find({zn.zone, ln.layer});
        if (it == net.fields.end()) continue;
        write_pgm(out_dir / ("psi_" + zone_tag(zn.zone) + "_" + std::to_string(ln.layer) + ".pgm"),
                  render_psi(it->second));
      }
    }
  }
  outcome.network = std::move(net);
  outcome.output_dir = out_dir;
  return outcome;
}

std::string stats_text(const NetworkStats& s) {
  std::ostringstream out;
  out << "corridors: " << s.corridors << '\n'
      << "corridor_cells: " << s.corridor_cells << '\n'
      << "vertical_connections: " << s.vertical_connections << '\n'
      << "inter_zone_links: " << s.inter_zone_links << '\n'
      << "seam_endpoints: " << s.seam_endpoints << '\n'
      << "matched_endpoints: " << s.matched_endpoints << '\n'
      << "inter_zone_ratio: " << s.inter_zone_ratio << '\n'
      << "nodes: " << s.nodes << '\n'
      << "edges: " << s.edges << '\n'
      << "components: " << s.components << '\n';
  for (const ZoneLayerCount& c : s.per_zone_layer) {
    out << "zone " << c.zone.a << ',' << c.zone.b << " layer " << c.layer << ": " << c.corridors << " corridors, "
        << c.cells << " cells\n";
  }
  return out.str();
}

CellCoord parse_cell(const std::string& text) {
  const std::vector<double> v = split_numbers(text, 3, "cell");
  CellCoord c{static_cast<std::int64_t>(v[0]), static_cast<std::int64_t>(v[1]), static_cast<std::int64_t>(v[2])};
  if (static_cast<double>(c.i) != v[0] || static_cast<double>(c.j) != v[1] || static_cast<double>(c.k) != v[2]) {
    throw ConfigError("cell: expected integers, got '" + text + "'");
  }
  return c;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Air corridor network generator"};
  app.require_subcommand(1);

  std::string config_path;
  GenerateOverrides overrides;
  std::string out_dir;
  double tol = 0.0;
  bool offline = false;
  auto* gen = app.add_subcommand("generate", "Generate a network from a run config");
  gen->add_option("config", config_path, "Run config JSON")->required();
  gen->add_option("--out", out_dir, "Output directory");
  gen->add_flag("--offline", offline, "Never open network connections");
  gen->add_option("--tol", tol, "Solver relative tolerance");
  auto* render_on = gen->add_flag("--render", "Write layer renders");
  auto* render_off = gen->add_flag("--no-render", "Skip all renders");
  render_on->excludes(render_off);

  std::string network_path;
  auto* st = app.add_subcommand("stats", "Print statistics of a network.json");
  st->add_option("network", network_path, "network.json")->required();

  std::string from_text;
  std::string to_text;
  auto* route = app.add_subcommand("route", "Shortest corridor route between two cells");
  route->add_option("network", network_path, "network.json")->required();
  route->add_option("--from", from_text, "i,j,k")->required();
  route->add_option("--to", to_text, "i,j,k")->required();

#ifdef AIRNET_HAVE_USGS
  std::string bbox_text;
  std::string endpoint = usgs::kDefaultEndpoint;
  std::string cache_dir;
  auto* catalog = app.add_subcommand("catalog", "List USGS point-cloud products in a rectangle");
  catalog->add_option("--bbox", bbox_text, "min_lon,min_lat,max_lon,max_lat")->required();
  catalog->add_option("--endpoint", endpoint, "Catalog endpoint URL");
  catalog->add_option("--cache-dir", cache_dir, std::string("Cache directory (default $") + usgs::kCacheDirEnv + ")");
  catalog->add_flag("--offline", offline, "Serve only cached responses");
#endif

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (gen->parsed()) {
    return guarded(err, [&] {
      RunConfig cfg = load_run_config(config_path);
      if (!out_dir.empty()) overrides.output_dir = out_dir;
      if (gen->count("--tol") != 0) overrides.tol = tol;
      if (render_on->count() != 0) overrides.render = true;
      if (render_off->count() != 0) overrides.render = false;
      overrides.offline = offline;
      apply_overrides(cfg, overrides);
      const GenerateOutcome outcome = run_generate(cfg);
      for (const std::string& w : outcome.warnings) err << "warning: " << w << '\n';
      const NetworkStats s = stats(outcome.network);
      out << "wrote " << (outcome.output_dir / "network.json").string() << ": " << s.corridors << " corridors, "
          << s.vertical_connections << " vertical connections, " << s.inter_zone_links << " inter-zone links in "
          << outcome.network.metadata.total_ms << " ms\n";
      return kExitOk;
    });
  }
  if (st->parsed()) {
    return guarded(err, [&] {
      out << stats_text(stats(load_network(network_path)));
      return kExitOk;
    });
  }
  if (route->parsed()) {
    return guarded(err, [&] {
      const CellCoord from = parse_cell(from_text);
      const CellCoord to = parse_cell(to_text);
      const AirNetwork net = load_network(network_path);
      std::optional<std::vector<CellCoord>> path;
      try {
        path = route_query(net, from, to);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      if (!path) {
        out << "no route\n";
        return kExitOk;
      }
      out << "length " << path->size() << '\n';
      for (const CellCoord& c : *path) out << c.i << ',' << c.j << ',' << c.k << '\n';
      return kExitOk;
    });
  }
#ifdef AIRNET_HAVE_USGS
  if (catalog->parsed()) {
    return guarded(err, [&] {
      const std::vector<double> b = split_numbers(bbox_text, 4, "--bbox");
      usgs::ClientOptions options;
      options.endpoint = endpoint;
      options.cache_dir = cache_dir.empty() ? usgs::default_cache_dir() : std::filesystem::path(cache_dir);
      options.offline = offline;
      usgs::Client client(options);
      const auto products = client.fetch_products({b[0], b[1], b[2], b[3]});
      for (const auto& p : products) out << p.title << '\t' << p.download_url << '\n';
      return kExitOk;
    });
  }
#endif
  return kExitConfig;
}

}  // namespace airnet::cli
