#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "airnet/error.hpp"
#include "airnet/network.hpp"
#include "airnet/network_io.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace airnet;
using testing::layer_along;

namespace {

NetworkConfig base_config(int n, std::vector<ZoneCoord> zones, int layers = 1) {
  NetworkConfig cfg;
  cfg.grid.zone_side = n;
  cfg.zones = std::move(zones);
  for (int l = 0; l < layers; ++l) {
    cfg.layers.push_back(layer_along(l % 2 == 0 ? 1.0 : 0.0, l % 2 == 0 ? 0.0 : 1.0, l, 50.0 + 30.0 * l));
  }
  return cfg;
}

ElevationMap flat_map(const ZoneCoord& z, int n, std::int64_t height = 0) {
  ElevationMap m(z, n);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) m.set_height_local(u, v, height);
  }
  return m;
}

ZoneSources flat_sources(const NetworkConfig& cfg) {
  ZoneSources sources;
  for (const ZoneCoord& z : cfg.zones) sources.emplace(z, ZoneSource::from_map(flat_map(z, cfg.grid.zone_side)));
  return sources;
}

ElevationMap random_city(const ZoneCoord& z, int n, double density, std::mt19937_64& rng) {
  ElevationMap m = flat_map(z, n);
  const auto states = oracle::random_states(n, density, rng);
  std::uniform_int_distribution<std::int64_t> height(5, 40);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) {
      if (states[static_cast<std::size_t>(v) * n + u] == CellState::full) m.set_height_local(u, v, height(rng));
    }
  }
  return m;
}

std::vector<std::vector<CellCoord>> corridor_cells(const ZoneNetwork& zn, int layer) {
  std::vector<std::vector<CellCoord>> out;
  for (const Corridor& c : zn.layers.at(layer).corridors) out.push_back(c.cells);
  return out;
}

}  // namespace

TEST_SUITE("network") {
  TEST_CASE("config validation") {
    NetworkConfig cfg = base_config(10, {{0, 0}}, 2);
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.layer_k(1) == 16);

    NetworkConfig no_layers = cfg;
    no_layers.layers.clear();
    CHECK_THROWS_AS(no_layers.validate(), ConfigError);

    NetworkConfig descending = cfg;
    descending.layers[1].altitude_m = 40.0;
    CHECK_THROWS_AS(descending.validate(), ConfigError);

    NetworkConfig same_k = cfg;
    same_k.layers[1].altitude_m = 52.0;
    CHECK_THROWS_AS(same_k.validate(), ConfigError);

    NetworkConfig too_high = cfg;
    too_high.layers[1].altitude_m = 5000.0;
    CHECK_THROWS_AS(too_high.validate(), ConfigError);

    NetworkConfig bad_dir = cfg;
    bad_dir.layers[1].direction = {2.0, 0.0};
    try {
      bad_dir.validate();
      FAIL("expected a throw");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("layer 1") != std::string::npos);
    }

    NetworkConfig repeated = cfg;
    repeated.zones.push_back({0, 0});
    CHECK_THROWS_AS(repeated.validate(), ConfigError);

    NetworkConfig bad_nr = cfg;
    bad_nr.n_r = 0;
    CHECK_THROWS_AS(bad_nr.validate(), ConfigError);
  }

  TEST_CASE("sources are checked before generation") {
    const NetworkConfig cfg = base_config(10, {{0, 0}, {1, 0}});
    ZoneSources only_one;
    only_one.emplace(ZoneCoord{0, 0}, ZoneSource::from_map(flat_map({0, 0}, 10)));
    CHECK_THROWS_AS(generate(cfg, only_one), ConfigError);

    ZoneSources wrong_zone;
    wrong_zone.emplace(ZoneCoord{0, 0}, ZoneSource::from_map(flat_map({0, 0}, 10)));
    wrong_zone.emplace(ZoneCoord{1, 0}, ZoneSource::from_map(flat_map({0, 0}, 10)));
    CHECK_THROWS_AS(generate(cfg, wrong_zone), ConfigError);

    ZoneSources slices;
    slices.emplace(ZoneCoord{0, 0}, ZoneSource::from_map(flat_map({0, 0}, 10)));
    slices.emplace(ZoneCoord{1, 0}, ZoneSource::from_slices({testing::empty_slice(10, {1, 0}, 11)}));
    CHECK_THROWS_AS(generate(cfg, slices), ConfigError);
  }

  TEST_CASE("one empty zone gives the empty-slice corridor set") {
    const NetworkConfig cfg = base_config(40, {{0, 0}});
    const AirNetwork net = generate(cfg, flat_sources(cfg));
    REQUIRE(net.zones.size() == 1);
    const Slice s = testing::empty_slice(40, {0, 0}, cfg.layer_k(0));
    const LayerCorridors expected = generate_layer(s, solve_slice(s, cfg.layers[0]), cfg.layers[0], cfg.n_r, {});
    REQUIRE(net.zones[0].layers[0].corridors.size() == expected.corridors.size());
    for (std::size_t c = 0; c < expected.corridors.size(); ++c) {
      CHECK(net.zones[0].layers[0].corridors[c].cells == expected.corridors[c].cells);
    }
    CHECK(net.zones[0].vertical.empty());
    CHECK(net.links.empty());
    CHECK(net.metadata.failures.empty());
    CHECK(net.metadata.timings.size() == 1);
  }

  TEST_CASE("two empty zones: every exiting corridor continues at the same row") {
    const NetworkConfig cfg = base_config(40, {{1, 0}, {0, 0}});
    const AirNetwork net = generate(cfg, flat_sources(cfg));
    REQUIRE(net.zones.size() == 2);
    CHECK(net.zones[0].zone == ZoneCoord{0, 0});
    const auto& a = net.zones[0].layers[0].corridors;
    const auto& b = net.zones[1].layers[0].corridors;
    std::set<CellCoord> b_ends;
    for (const Corridor& c : b) {
      b_ends.insert(c.front());
      b_ends.insert(c.back());
    }
    std::size_t exiting = 0;
    for (const Corridor& c : a) {
      for (const CellCoord* end : {&c.front(), &c.back()}) {
        if (end->i != 39) continue;
        ++exiting;
        CHECK(b_ends.count({40, end->j, end->k}) == 1);
      }
    }
    CHECK(exiting == a.size());
    CHECK(net.links.size() == exiting);
    CHECK(net.zones[1].layers[0].hinted_successes == exiting);
    const NetworkStats s = stats(net);
    CHECK(s.inter_zone_ratio == 1.0);
  }

  TEST_CASE("vertical connections over flat ground equal the shared columns") {
    const NetworkConfig cfg = base_config(30, {{0, 0}}, 2);
    const AirNetwork net = generate(cfg, flat_sources(cfg));
    std::set<Column> lower, upper;
    for (const Corridor& c : net.zones[0].layers[0].corridors) {
      for (const CellCoord& cell : c.cells) lower.insert({cell.i, cell.j});
    }
    for (const Corridor& c : net.zones[0].layers[1].corridors) {
      for (const CellCoord& cell : c.cells) upper.insert({cell.i, cell.j});
    }
    std::vector<Column> shared;
    std::set_intersection(lower.begin(), lower.end(), upper.begin(), upper.end(), std::back_inserter(shared));
    CHECK_FALSE(shared.empty());
    CHECK(net.zones[0].vertical.size() == shared.size());
    for (const VerticalConnection& vc : net.zones[0].vertical) {
      CHECK(vc.k_lower == cfg.layer_k(0));
      CHECK(vc.k_upper == cfg.layer_k(1));
    }
  }

  TEST_CASE("zone independence without hints") {
    std::mt19937_64 rng(31);
    NetworkConfig both = base_config(24, {{0, 0}, {1, 0}}, 2);
    both.hints = false;
    ZoneSources sources;
    sources.emplace(ZoneCoord{0, 0}, ZoneSource::from_map(random_city({0, 0}, 24, 0.2, rng)));
    sources.emplace(ZoneCoord{1, 0}, ZoneSource::from_map(random_city({1, 0}, 24, 0.2, rng)));
    NetworkConfig only_a = both;
    only_a.zones = {{0, 0}};
    NetworkConfig only_b = both;
    only_b.zones = {{1, 0}};
    const AirNetwork together = generate(both, sources);
    const AirNetwork a = generate(only_a, sources);
    const AirNetwork b = generate(only_b, sources);
    for (int l = 0; l < 2; ++l) {
      CHECK(corridor_cells(*together.find_zone({0, 0}), l) == corridor_cells(*a.find_zone({0, 0}), l));
      CHECK(corridor_cells(*together.find_zone({1, 0}), l) == corridor_cells(*b.find_zone({1, 0}), l));
    }
  }

  TEST_CASE("graph is well formed") {
    std::mt19937_64 rng(12);
    NetworkConfig cfg = base_config(24, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}, 3);
    cfg.layers[2].direction = {std::sqrt(0.5), std::sqrt(0.5)};
    ZoneSources sources;
    for (const ZoneCoord& z : cfg.zones) sources.emplace(z, ZoneSource::from_map(random_city(z, 24, 0.15, rng)));
    const AirNetwork net = generate(cfg, sources);
    const NetworkGraph g(net);
    CHECK(g.node_count() > 0);
    for (const auto& [a, b] : g.edges()) {
      REQUIRE(a < g.node_count());
      REQUIRE(b < g.node_count());
      const CellCoord& p = g.cells()[a];
      const CellCoord& q = g.cells()[b];
      if (p.k == q.k) {
        CHECK(std::max(std::abs(p.i - q.i), std::abs(p.j - q.j)) <= 1);
      } else {
        CHECK(p.i == q.i);
        CHECK(p.j == q.j);
        CHECK(std::abs(p.k - q.k) == 1);
      }
    }
    for (const ZoneNetwork& zn : net.zones) {
      for (const LayerNetwork& ln : zn.layers) {
        for (const Corridor& c : ln.corridors) {
          for (const CellCoord& cell : c.cells) {
            CHECK(zone_of_column({cell.i, cell.j}, 24) == zn.zone);
            CHECK_FALSE(sources.at(zn.zone).is_full(cell));
          }
        }
      }
    }
  }

  TEST_CASE("hints do not lower the inter-zone ratio on random terrain") {
    std::mt19937_64 rng(41);
    NetworkConfig cfg = base_config(32, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    ZoneSources sources;
    for (const ZoneCoord& z : cfg.zones) sources.emplace(z, ZoneSource::from_map(random_city(z, 32, 0.2, rng)));
    const double with_hints = stats(generate(cfg, sources)).inter_zone_ratio;
    cfg.hints = false;
    const double without = stats(generate(cfg, sources)).inter_zone_ratio;
    CHECK(with_hints >= without);
  }

  TEST_CASE("solver failures are recorded per zone-layer") {
    NetworkConfig cfg = base_config(20, {{0, 0}});
    cfg.solver.max_iter = 1;
    ZoneSources sources;
    std::mt19937_64 rng(1);
    sources.emplace(ZoneCoord{0, 0}, ZoneSource::from_map(random_city({0, 0}, 20, 0.2, rng)));
    const AirNetwork net = generate(cfg, sources);
    REQUIRE(net.metadata.failures.size() == 1);
    CHECK(net.zones[0].layers[0].failure.has_value());
    CHECK(net.zones[0].layers[0].corridors.empty());
  }

  TEST_CASE("slice sources drive generation") {
    NetworkConfig cfg = base_config(16, {{0, 0}});
    const std::int64_t k = cfg.layer_k(0);
    ZoneSources sources;
    sources.emplace(ZoneCoord{0, 0},
                    ZoneSource::from_slices({testing::make_slice(16, testing::with_block(16, 6, 6, 10, 10), {0, 0}, k)}));
    const AirNetwork net = generate(cfg, sources);
    CHECK_FALSE(net.zones[0].layers[0].corridors.empty());
    for (const Corridor& c : net.zones[0].layers[0].corridors) {
      for (const CellCoord& cell : c.cells) CHECK_FALSE(sources.at({0, 0}).is_full(cell));
    }
  }

  TEST_CASE("stats of small networks") {
    AirNetwork empty;
    empty.config = base_config(10, {});
    CHECK(stats(empty) == NetworkStats{});

    AirNetwork line;
    line.config = base_config(10, {{0, 0}});
    ZoneNetwork zn;
    LayerNetwork ln;
    Corridor c;
    for (int u = 0; u < 10; ++u) c.cells.push_back({u, 3, 10});
    ln.corridors.push_back(c);
    zn.layers.push_back(ln);
    line.zones.push_back(zn);
    const NetworkStats s = stats(line);
    CHECK(s.corridors == 1);
    CHECK(s.corridor_cells == 10);
    CHECK(s.components == 1);
    CHECK(s.nodes == 10);
    CHECK(s.edges == 9);
    CHECK(s.seam_endpoints == 0);
    CHECK(s.inter_zone_ratio == 0.0);
  }

  TEST_CASE("route queries") {
    const NetworkConfig cfg = base_config(40, {{0, 0}, {1, 0}});
    const AirNetwork net = generate(cfg, flat_sources(cfg));
    const Corridor& c = net.zones[0].layers[0].corridors.front();
    const CellCoord a = c.cells[3];
    auto same = route_query(net, a, a);
    REQUIRE(same);
    CHECK(same->size() == 1);
    auto five = route_query(net, c.cells[3], c.cells[8]);
    REQUIRE(five);
    CHECK(five->size() == 6);
    CHECK(five->front() == c.cells[3]);
    CHECK(five->back() == c.cells[8]);

    // Across the seam through the link.
    const std::int64_t row = c.front().j;
    auto across = route_query(net, {0, row, c.front().k}, {79, row, c.front().k});
    REQUIRE(across);
    CHECK(across->size() == 80);

    const Corridor& other = net.zones[0].layers[0].corridors.back();
    CHECK_FALSE(route_query(net, c.cells[0], other.cells[0]).has_value());
    CHECK_THROWS_AS(route_query(net, {1000, 0, 0}, a), std::invalid_argument);
  }

  TEST_CASE("json round trip preserves stats and corridors") {
    std::mt19937_64 rng(6);
    NetworkConfig cfg = base_config(20, {{0, 0}, {1, 0}}, 2);
    cfg.grid.anchor = {100.0, 200.0, 3.0};
    cfg.grid.crs_label = "EPSG:26916";
    ZoneSources sources;
    for (const ZoneCoord& z : cfg.zones) sources.emplace(z, ZoneSource::from_map(random_city(z, 20, 0.1, rng)));
    const AirNetwork net = generate(cfg, sources);
    const nlohmann::json doc = network_to_json(net);
    const AirNetwork back = network_from_json(nlohmann::json::parse(doc.dump()));
    CHECK(stats(back) == stats(net));
    REQUIRE(back.zones.size() == net.zones.size());
    for (std::size_t z = 0; z < net.zones.size(); ++z) {
      for (int l = 0; l < 2; ++l) CHECK(corridor_cells(back.zones[z], l) == corridor_cells(net.zones[z], l));
      CHECK(back.zones[z].vertical.size() == net.zones[z].vertical.size());
    }
    CHECK(network_config_to_json(back.config) == network_config_to_json(cfg));
    CHECK(doc["zones"][0]["layers"][0]["corridors"][0]["cells"][0].is_array());
    CHECK(doc.contains("timings_ms"));
    CHECK(doc["stats"]["corridors"] == stats(net).corridors);
  }

  TEST_CASE("network json errors") {
    CHECK_THROWS_AS(network_from_json(nlohmann::json::object()), ConfigError);
    nlohmann::json doc = network_to_json(generate(base_config(10, {{0, 0}}), flat_sources(base_config(10, {{0, 0}}))));
    doc["zones"][0]["layers"][0]["corridors"][0]["cells"][0] = {1, 2};
    CHECK_THROWS_AS(network_from_json(doc), ConfigError);
    CHECK_THROWS_AS(load_network("/nonexistent/network.json"), IoError);
  }

  TEST_CASE("config json defaults and errors") {
    const nlohmann::json minimal = {{"cell_size_m", 5},
                                    {"zone_side", 10},
                                    {"layers", {{{"altitude_m", 50}, {"direction", {1, 0}}}}},
                                    {"zones", {{{"a", 0}, {"b", 0}}}}};
    const NetworkConfig cfg = network_config_from_json(minimal);
    CHECK(cfg.n_r == 10);
    CHECK(cfg.grid.k_max == 200);
    CHECK(cfg.hints);
    CHECK(cfg.solver.tol == 1e-9);
    nlohmann::json bad = minimal;
    bad["layers"][0]["direction"] = {1};
    CHECK_THROWS_AS(network_config_from_json(bad), ConfigError);
    bad = minimal;
    bad["zone_side"] = "ten";
    CHECK_THROWS_AS(network_config_from_json(bad), ConfigError);
    bad = minimal;
    bad["solver"] = {{"tolerance", 1e-6}};
    CHECK_THROWS_AS(network_config_from_json(bad), ConfigError);
    bad = minimal;
    bad.erase("layers");
    CHECK_THROWS_AS(network_config_from_json(bad), ConfigError);
  }
}
