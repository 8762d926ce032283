#include <doctest.h>

#include <omp.h>

#include "campaigns.hpp"
#include "railmule/kernels.hpp"

using namespace railmule;

namespace {

struct Scene {
  std::vector<mobility::Mover> movers;
  std::vector<std::vector<radio::InterfaceSpec>> ifaces;
};

Scene random_scene(Rng& rng, std::size_t nodes) {
  auto graph = std::make_shared<const geomap::MapGraph>(
      geomap::build_graph(geomap::parse_wkt(testing::random_map_wkt(rng, 6))));
  Scene s;
  for (std::size_t i = 0; i < nodes; ++i) {
    if (uniform_index(rng, 4) == 0) {
      s.movers.emplace_back(mobility::Stationary{{{uniform_unit(rng) * 20000, uniform_unit(rng) * 20000}}});
    } else {
      s.movers.emplace_back(mobility::MapWalker::start(graph, 10 + 20 * uniform_unit(rng), Rng(rng())));
    }
    std::vector<radio::InterfaceSpec> f;
    if (uniform_index(rng, 3)) f.push_back({radio::InterfaceKind::Bluetooth, 300.0, 2e6});
    if (uniform_index(rng, 2)) f.push_back({radio::InterfaceKind::Lora, 3000.0, 5000.0});
    s.ifaces.push_back(f);
  }
  return s;
}

struct Threads {
  explicit Threads(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_CASE("parallel kernels match the serial reference") {
  Threads threads(4);
  Rng rng(11);
  for (int c = 0; c < 50; ++c) {
    Scene a = random_scene(rng, 10 + uniform_index(rng, 150));
    Scene b = a;
    std::vector<geomap::Point> pa(a.movers.size()), pb(b.movers.size());
    kernels::LinkScanner scanner;
    for (int step = 0; step < 40; ++step) {
      kernels::advance_serial(a.movers, 1.0, pa);
      kernels::advance_parallel(b.movers, 1.0, pb);
      REQUIRE(pa == pb);
      const auto ls = kernels::scan_links_serial(pa, a.ifaces);
      CHECK(ls == scanner.scan(pb, b.ifaces));
      CHECK(ls == kernels::scan_links_parallel(pb, b.ifaces));
    }
  }
}

TEST_CASE("engine output does not depend on the parallel flag") {
  Threads threads(3);
  Rng rng(12);
  for (int c = 0; c < 5; ++c) {
    Scene s = random_scene(rng, 40);
    engine::Scenario sc;
    sc.config.duration = 600;
    sc.config.messages.source = 0;
    sc.config.messages.destination = 1;
    sc.config.messages.interval = 60;
    sc.config.router = c % 2 ? routing::RouterKind::Prophet : routing::RouterKind::Epidemic;
    for (std::size_t i = 0; i < s.movers.size(); ++i) {
      engine::NodeSpec n;
      n.mover = s.movers[i];
      n.interfaces = s.ifaces[i];
      n.buffer_capacity = 1'000'000;
      sc.nodes.push_back(n);
    }
    auto serial = sc;
    serial.config.parallel = false;
    sc.config.parallel = true;
    CHECK(engine::run(serial) == engine::run(sc));
  }
}

TEST_CASE("openmp is available") {
  CHECK(kernels::openmp_enabled());
  CHECK(kernels::max_threads() >= 1);
}
