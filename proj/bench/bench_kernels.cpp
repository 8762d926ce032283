// Serial reference vs OpenMP kernels on the urban preset with the train
// groups scaled up. Arg = approximate node count.
#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "railmule/engine.hpp"
#include "railmule/kernels.hpp"
#include "railmule/scenario.hpp"

using namespace railmule;

namespace {

const std::string kPresets = RAILMULE_PRESETS;

scenario::BuiltScenario urban(std::int64_t nodes, Seconds duration = 86400.0) {
  std::ifstream in(kPresets + "/urban.ini");
  std::stringstream s;
  s << in.rdbuf();
  auto cfg = scenario::parse_config(s.str());
  cfg.duration = duration;
  std::uint64_t mobile = 0;
  for (const auto& g : cfg.groups) {
    if (g.mobility != scenario::MobilityKind::Stationary) mobile += g.count;
  }
  const double scale = static_cast<double>(nodes) / static_cast<double>(mobile);
  for (auto& g : cfg.groups) {
    if (g.mobility == scenario::MobilityKind::Stationary) continue;
    g.count = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(g.count * scale));
  }
  auto graph = scenario::load_map(kPresets + "/" + cfg.map_file, cfg.snap_tolerance);
  return scenario::build_scenario(cfg, graph);
}

struct Snapshot {
  std::vector<mobility::Mover> movers;
  std::vector<geomap::Point> positions;
  std::vector<std::vector<radio::InterfaceSpec>> interfaces;
};

Snapshot snapshot(std::int64_t nodes) {
  auto built = urban(nodes);
  Snapshot s;
  for (auto& n : built.scenario.nodes) {
    s.movers.push_back(n.mover);
    s.positions.push_back(mobility::current_position(n.mover));
    s.interfaces.push_back(n.interfaces);
  }
  return s;
}

void BM_AdvanceSerial(benchmark::State& state) {
  auto s = snapshot(state.range(0));
  for (auto _ : state) {
    kernels::advance_serial(s.movers, 1.0, s.positions);
    benchmark::DoNotOptimize(s.positions.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.movers.size()));
}

void BM_AdvanceParallel(benchmark::State& state) {
  auto s = snapshot(state.range(0));
  for (auto _ : state) {
    kernels::advance_parallel(s.movers, 1.0, s.positions);
    benchmark::DoNotOptimize(s.positions.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.movers.size()));
}

void BM_ScanSerial(benchmark::State& state) {
  auto s = snapshot(state.range(0));
  for (auto _ : state) {
    auto links = kernels::scan_links_serial(s.positions, s.interfaces);
    benchmark::DoNotOptimize(links.data());
  }
}

void BM_ScanParallel(benchmark::State& state) {
  auto s = snapshot(state.range(0));
  kernels::LinkScanner scanner;
  for (auto _ : state) {
    auto links = scanner.scan(s.positions, s.interfaces);
    benchmark::DoNotOptimize(links.data());
  }
}

// Whole engine, ten simulated minutes.
void BM_Engine(benchmark::State& state, bool parallel) {
  for (auto _ : state) {
    state.PauseTiming();
    auto built = urban(state.range(0), 600.0);
    built.scenario.config.parallel = parallel;
    state.ResumeTiming();
    auto events = engine::run(std::move(built.scenario));
    benchmark::DoNotOptimize(events.data());
  }
}

}  // namespace

BENCHMARK(BM_AdvanceSerial)->Arg(64)->Arg(512)->Arg(4096);
BENCHMARK(BM_AdvanceParallel)->Arg(64)->Arg(512)->Arg(4096);
BENCHMARK(BM_ScanSerial)->Arg(64)->Arg(512)->Arg(4096);
BENCHMARK(BM_ScanParallel)->Arg(64)->Arg(512)->Arg(4096);
BENCHMARK_CAPTURE(BM_Engine, serial, false)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Engine, parallel, true)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
