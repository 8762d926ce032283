#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "railmule/error.hpp"
#include "railmule/reports.hpp"

using namespace railmule;
using namespace railmule::reports;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("railmule_reports_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("delivery_probability") {
  CHECK(delivery_probability(1, 4) == 0.25);
  CHECK(delivery_probability(0, 5) == 0.0);
  CHECK(delivery_probability(5, 5) == 1.0);
  CHECK_THROWS_AS(delivery_probability(0, 0), NoMessagesError);
}

TEST_CASE("avg_hops") {
  const std::vector<unsigned> two{2, 4};
  CHECK(avg_hops(two) == 3.0);
  CHECK_FALSE(avg_hops({}));
  const std::vector<unsigned> one{1};
  CHECK(avg_hops(one) == 1.0);
}

TEST_CASE("scale_latencies") {
  const std::vector<double> a{2, 1, 4};
  CHECK(scale_latencies(a) == std::vector<double>{0.5, 0.25, 1.0});
  const std::vector<double> b{7};
  CHECK(scale_latencies(b) == std::vector<double>{1.0});
  CHECK_THROWS_AS(scale_latencies({}), EmptySetError);
  const std::vector<double> runs{6900, 6800, 9000, 10000};
  const auto s = scale_latencies(runs);
  CHECK(s[0] == doctest::Approx(0.69));
  CHECK(s[1] == doctest::Approx(0.68));
  CHECK(s[2] == doctest::Approx(0.90));
  CHECK(s[3] == 1.0);
}

TEST_CASE("buffer_stats") {
  using S = std::vector<std::pair<Seconds, Bytes>>;
  auto r = buffer_stats(S{{0, 10}, {1, 10}});
  CHECK(r.mean == 10.0);
  CHECK(r.variance == 0.0);
  r = buffer_stats(S{{0, 0}, {1, 20}});
  CHECK(r.mean == 10.0);
  CHECK(r.variance == 100.0);
  r = buffer_stats(S{{0, 5}});
  CHECK(r.mean == 5.0);
  CHECK(r.variance == 0.0);
  CHECK_THROWS_AS(buffer_stats(S{}), EmptySetError);
}

TEST_CASE("encounter_counts") {
  using radio::Contact;
  std::vector<Contact> one{{0, 1, radio::InterfaceKind::Bluetooth, 0.0, std::nullopt}};
  auto c = encounter_counts(one);
  CHECK(c.at(0) == 1);
  CHECK(c.at(1) == 1);
  one.push_back({0, 1, radio::InterfaceKind::Bluetooth, 50.0, std::nullopt});
  c = encounter_counts(one);
  CHECK(c.at(0) == 2);
  CHECK(c.at(1) == 2);
}

TEST_CASE("collector counts one encounter per contact") {
  ReportCollector col(3, 1000.0);
  col.on_event({0.0, engine::EventKind::ContactUp, std::nullopt, 0, 1});
  for (int i = 1; i < 100; ++i) col.on_sample(i, 0, std::vector<geomap::Point>(3), {true, true, false});
  col.on_event({100.0, engine::EventKind::ContactDown, std::nullopt, 0, 1});
  const auto r = col.finish();
  CHECK(r.encounters.at(0) == 1);
  CHECK(r.encounters.at(1) == 1);
  CHECK(r.encounters.at(2) == 0);
  CHECK(r.heatmap.total() == 2 * 99);
  CHECK_FALSE(r.delivery_probability);
}

TEST_CASE("format helpers") {
  CHECK(format_fraction(0.25) == "0.25");
  CHECK(format_fraction(1.0 / 3.0) == "0.333333");
  CHECK(format_fraction(1.0) == "1");
  CHECK(format_real(1.5) == "1.5");
  CHECK(format_real(1e20) == "100000000000000000000");
  CHECK(format_real(0.1) == "0.1");
}

TEST_CASE("emit_csv writes the documented files") {
  RunReport r;
  r.created_count = 4;
  r.delivered_count = 1;
  r.delivery_probability = 0.25;
  r.avg_hop_count = 2.0;
  r.avg_latency = 6900.0;
  r.buffer_series = {{0, 0}, {60, 250000}};
  r.buffer_mean = 125000;
  r.buffer_variance = 15625000000.0;
  r.encounters = {{0, 1}, {1, 1}};
  const auto dir = scratch("full");
  emit_csv(r, dir);
  const auto summary = slurp(dir / "summary.csv");
  CHECK(summary ==
        "metric,value\n"
        "delivery_probability,0.25\n"
        "avg_hop_count,2\n"
        "avg_latency_s,6900\n"
        "buffer_mean_bytes,125000\n"
        "buffer_variance_bytes2,15625000000\n"
        "created,4\n"
        "delivered,1\n");
  CHECK(slurp(dir / "buffer_series.csv") == "time_s,occupied_bytes\n0,0\n60,250000\n");
  CHECK(slurp(dir / "encounters.csv") == "node_id,encounters\n0,1\n1,1\n");
  CHECK(slurp(dir / "heatmap.csv") == "cell_ix,cell_iy,count\n");
  CHECK(read_summary_latency(dir / "summary.csv") == 6900.0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("emit_csv absent values and geojson") {
  RunReport r;
  r.created_count = 3;
  r.delivery_probability = 0.0;
  geomap::grid_accumulate(r.heatmap, {1500, 200});
  const auto dir = scratch("empty");
  emit_csv(r, dir);
  const auto summary = slurp(dir / "summary.csv");
  CHECK(summary.find("avg_hop_count,NA\n") != std::string::npos);
  CHECK(summary.find("avg_latency_s,NA\n") != std::string::npos);
  CHECK(slurp(dir / "heatmap.csv") == "cell_ix,cell_iy,count\n1,0,1\n");
  const auto geo = slurp(dir / "heatmap.geojson");
  CHECK(geo.find("\"Polygon\"") != std::string::npos);
  CHECK(geo.find("\"count\": 1") != std::string::npos);
  CHECK_THROWS_AS(read_summary_latency(dir / "summary.csv"), EmptySetError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("emit_csv reports unwritable targets") {
  const auto dir = scratch("blocked");
  std::ofstream(dir.string()) << "a file, not a directory";
  CHECK_THROWS_AS(emit_csv(RunReport{}, dir / "sub"), IoError);
  std::filesystem::remove(dir);
}

TEST_CASE("event log round trip") {
  std::stringstream buf;
  {
    EventLogWriter w(buf);
    w.on_event({0.0, engine::EventKind::Created, 1, 0, 2});
    w.on_event({5.5, engine::EventKind::ContactUp, std::nullopt, 0, 1});
    w.on_event({7.0, engine::EventKind::Expired, 1, 0, std::nullopt});
  }
  CHECK(buf.str() == "time,kind,msg_id,from,to\n0,created,1,0,2\n5.5,contact_up,,0,1\n7,expired,1,0,\n");
  const auto ev = read_event_log(buf);
  REQUIRE(ev.size() == 3);
  CHECK(ev[1].time == 5.5);
  CHECK_FALSE(ev[1].msg);
  CHECK_FALSE(ev[2].to);
  std::stringstream bad("nope\n");
  CHECK_THROWS_AS(read_event_log(bad), IoError);
}
