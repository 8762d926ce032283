#include "railmule/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "railmule/engine.hpp"
#include "railmule/error.hpp"
#include "railmule/geomap.hpp"

namespace railmule::cli {

scenario::ScenarioConfig apply_overrides(scenario::ScenarioConfig config, const Overrides& flags) {
  if (flags.seed) config.seed = *flags.seed;
  if (flags.router) config.router = *flags.router;
  return config;
}

namespace {

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

reports::RunReport run_to_dir(const scenario::ScenarioConfig& config,
                              const std::filesystem::path& base_dir,
                              const std::filesystem::path& out_dir, std::ostream& warnings) {
  std::filesystem::path map_file = config.map_file;
  if (map_file.is_relative()) map_file = base_dir / map_file;
  auto graph = scenario::load_map(map_file, config.snap_tolerance);
  auto built = scenario::build_scenario(config, graph);
  for (const auto& w : built.warnings) warnings << "warning: " << w << '\n';

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  const auto events_file = out_dir / "events.csv";
  std::ofstream events(events_file, std::ios::binary | std::ios::trunc);
  if (!events) throw IoError("cannot write " + events_file.string());

  reports::ReportCollector collector(built.scenario.nodes.size(), config.heatmap_cell);
  reports::EventLogWriter log(events);
  engine::Simulation sim(std::move(built.scenario));
  sim.add_listener(collector);
  sim.add_listener(log);
  sim.run();
  events.flush();
  if (!events) throw IoError("write failed for " + events_file.string());

  reports::RunReport report = collector.finish();
  reports::emit_csv(report, out_dir);
  return report;
}

std::vector<double> scale_latency_files(const std::vector<std::string>& summaries,
                                        const std::filesystem::path& out_dir) {
  std::vector<double> latencies;
  latencies.reserve(summaries.size());
  for (const auto& s : summaries) latencies.push_back(reports::read_summary_latency(s));
  const auto scaled = reports::scale_latencies(latencies);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  const auto file = out_dir / "scaled_latency.csv";
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + file.string());
  out << "run,scaled_latency\n";
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    out << summaries[i] << ',' << reports::format_fraction(scaled[i]) << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed for " + file.string());
  return scaled;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"railmule: delay-tolerant rail network simulator"};
  app.require_subcommand(1);

  std::string config_file;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string router_text;
  auto* run = app.add_subcommand("run", "run a scenario and write reports");
  run->add_option("--config", config_file, "scenario file")->required();
  auto* out_opt = run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed, "root seed (overrides the file)");
  run->add_option("--router", router_text, "epidemic or prophet (overrides the file)")
      ->check(CLI::IsMember({"epidemic", "prophet"}));

  std::string map_file;
  double snap = geomap::kDefaultSnapTolerance;
  auto* vmap = app.add_subcommand("validate-map", "parse a WKT map and print graph stats");
  vmap->add_option("--map", map_file, "WKT file")->required();
  vmap->add_option("--snap", snap, "snap tolerance in metres");

  std::string scale_out;
  std::vector<std::string> summaries;
  auto* scale = app.add_subcommand("scale-latency", "normalise run latencies by their maximum");
  scale->add_option("--out", scale_out, "output directory")->required();
  scale->add_option("summaries", summaries, "summary.csv files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "railmule: " << e.what() << '\n';
    return 1;
  }

  try {
    if (run->parsed()) {
      if (out_opt->count() == 0) {
        const char* env = std::getenv("RAILMULE_OUT");
        if (env == nullptr || *env == '\0') {
          err << "railmule: --out not given and RAILMULE_OUT is unset\n";
          return 1;
        }
        out_dir = env;
      }
      Overrides flags;
      flags.seed = seed;
      if (!router_text.empty()) flags.router = routing::parse_router(router_text);
      const auto config = apply_overrides(scenario::parse_config(read_file(config_file)), flags);
      const auto base = std::filesystem::path(config_file).parent_path();
      const auto report = run_to_dir(config, base, out_dir, err);
      out << "created " << report.created_count << ", delivered " << report.delivered_count
          << '\n';
    } else if (vmap->parsed()) {
      const auto graph = scenario::load_map(map_file, snap);
      out << "vertices " << graph->vertices().size() << '\n'
          << "edges " << graph->edges().size() << '\n'
          << "components " << graph->component_count() << '\n';
    } else if (scale->parsed()) {
      scale_latency_files(summaries, scale_out);
    }
  } catch (const std::exception& e) {
    err << "railmule: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace railmule::cli
