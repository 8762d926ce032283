#include "railmule/reports.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "railmule/error.hpp"

namespace railmule::reports {

double delivery_probability(std::uint64_t delivered, std::uint64_t created) {
  if (created == 0) throw NoMessagesError("delivery probability needs at least one message");
  return static_cast<double>(delivered) / static_cast<double>(created);
}

std::optional<double> avg_hops(std::span<const unsigned> hop_counts) {
  if (hop_counts.empty()) return std::nullopt;
  double sum = 0.0;
  for (unsigned h : hop_counts) sum += h;
  return sum / static_cast<double>(hop_counts.size());
}

std::vector<double> scale_latencies(std::span<const double> latencies) {
  if (latencies.empty()) throw EmptySetError("no latencies to scale");
  const double top = *std::max_element(latencies.begin(), latencies.end());
  if (!(top > 0.0)) throw EmptySetError("latencies must be positive");
  std::vector<double> out;
  out.reserve(latencies.size());
  for (double v : latencies) out.push_back(v / top);
  return out;
}

BufferStats buffer_stats(std::span<const std::pair<Seconds, Bytes>> series) {
  if (series.empty()) throw EmptySetError("buffer series is empty");
  double mean = 0.0;
  for (const auto& [t, b] : series) mean += static_cast<double>(b);
  mean /= static_cast<double>(series.size());
  double var = 0.0;
  for (const auto& [t, b] : series) {
    const double d = static_cast<double>(b) - mean;
    var += d * d;
  }
  return {mean, var / static_cast<double>(series.size())};
}

std::map<NodeId, std::uint64_t> encounter_counts(std::span<const radio::Contact> contact_starts) {
  std::map<NodeId, std::uint64_t> counts;
  for (const radio::Contact& c : contact_starts) {
    ++counts[c.node_a];
    ++counts[c.node_b];
  }
  return counts;
}

// ---------------------------------------------------------------------------

ReportCollector::ReportCollector(std::size_t node_count, Metres heatmap_cell)
    : node_count_(node_count) {
  heatmap_.cell_size = heatmap_cell;
}

void ReportCollector::on_event(const engine::EventRecord& e) {
  using engine::EventKind;
  switch (e.kind) {
    case EventKind::Created:
      ++created_;
      created_at_[*e.msg] = e.time;
      break;
    case EventKind::Delivered:
      hops_.push_back(e.hops);
      latencies_.push_back(e.time - created_at_.at(*e.msg));
      break;
    case EventKind::ContactUp:
      starts_.push_back(radio::Contact{*e.from, *e.to, radio::InterfaceKind::Bluetooth, e.time,
                                       std::nullopt});
      break;
    default:
      break;
  }
}

void ReportCollector::on_sample(Seconds t, Bytes total, std::span<const geomap::Point> positions,
                                const std::vector<bool>& mobile) {
  series_.emplace_back(t, total);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (mobile[i]) geomap::grid_accumulate(heatmap_, positions[i]);
  }
}

RunReport ReportCollector::finish() const {
  RunReport r;
  r.created_count = created_;
  r.delivered_count = hops_.size();
  if (created_ > 0) r.delivery_probability = delivery_probability(r.delivered_count, created_);
  r.avg_hop_count = avg_hops(hops_);
  if (!latencies_.empty()) {
    double sum = 0.0;
    for (double l : latencies_) sum += l;
    r.avg_latency = sum / static_cast<double>(latencies_.size());
  }
  r.buffer_series = series_;
  if (!series_.empty()) {
    const BufferStats s = buffer_stats(series_);
    r.buffer_mean = s.mean;
    r.buffer_variance = s.variance;
  }
  for (NodeId n = 0; n < node_count_; ++n) r.encounters[n] = 0;
  for (const auto& [node, count] : encounter_counts(starts_)) r.encounters[node] = count;
  r.heatmap = heatmap_;
  return r;
}

// ---------------------------------------------------------------------------

std::string format_fraction(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string format_real(double v) {
  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + file.string());
  return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& file) {
  out.flush();
  if (!out) throw IoError("write failed for " + file.string());
}

std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : "NA"; }

}  // namespace

void emit_csv(const RunReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  {
    const auto file = out_dir / "summary.csv";
    auto out = open_out(file);
    out << "metric,value\n";
    out << "delivery_probability,"
        << (report.delivery_probability ? format_fraction(*report.delivery_probability) : "NA")
        << '\n';
    out << "avg_hop_count," << opt_real(report.avg_hop_count) << '\n';
    out << "avg_latency_s," << opt_real(report.avg_latency) << '\n';
    out << "buffer_mean_bytes," << format_real(report.buffer_mean) << '\n';
    out << "buffer_variance_bytes2," << format_real(report.buffer_variance) << '\n';
    out << "created," << report.created_count << '\n';
    out << "delivered," << report.delivered_count << '\n';
    close_checked(out, file);
  }
  {
    const auto file = out_dir / "buffer_series.csv";
    auto out = open_out(file);
    out << "time_s,occupied_bytes\n";
    for (const auto& [t, b] : report.buffer_series) out << format_real(t) << ',' << b << '\n';
    close_checked(out, file);
  }
  {
    const auto file = out_dir / "encounters.csv";
    auto out = open_out(file);
    out << "node_id,encounters\n";
    for (const auto& [node, count] : report.encounters) out << node << ',' << count << '\n';
    close_checked(out, file);
  }
  {
    const auto file = out_dir / "heatmap.csv";
    auto out = open_out(file);
    out << "cell_ix,cell_iy,count\n";
    for (const auto& [cell, count] : report.heatmap.counts) {
      out << cell.first << ',' << cell.second << ',' << count << '\n';
    }
    close_checked(out, file);
  }
  write_heatmap_geojson(report.heatmap, out_dir / "heatmap.geojson");
}

void write_heatmap_geojson(const geomap::GridIndex& grid, const std::filesystem::path& file) {
  nlohmann::ordered_json features = nlohmann::ordered_json::array();
  for (const auto& [cell, count] : grid.counts) {
    if (count == 0) continue;
    const double x0 = grid.origin.x + static_cast<double>(cell.first) * grid.cell_size;
    const double y0 = grid.origin.y + static_cast<double>(cell.second) * grid.cell_size;
    const double x1 = x0 + grid.cell_size;
    const double y1 = y0 + grid.cell_size;
    nlohmann::ordered_json ring = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}};
    features.push_back({
        {"type", "Feature"},
        {"geometry", {{"type", "Polygon"}, {"coordinates", nlohmann::ordered_json::array({ring})}}},
        {"properties", {{"cell_ix", cell.first}, {"cell_iy", cell.second}, {"count", count}}},
    });
  }
  nlohmann::ordered_json doc = {{"type", "FeatureCollection"}, {"features", features}};
  auto out = open_out(file);
  out << doc.dump(1) << '\n';
  close_checked(out, file);
}

// ---------------------------------------------------------------------------

void write_event(std::ostream& out, const engine::EventRecord& e) {
  out << format_real(e.time) << ',' << engine::to_string(e.kind) << ',';
  if (e.msg) out << *e.msg;
  out << ',';
  if (e.from) out << *e.from;
  out << ',';
  if (e.to) out << *e.to;
  out << '\n';
}

EventLogWriter::EventLogWriter(std::ostream& out) : out_(out) { out_ << kEventLogHeader << '\n'; }

void EventLogWriter::on_event(const engine::EventRecord& e) { write_event(out_, e); }

namespace {

template <typename T>
std::optional<T> parse_field(std::string_view s, int line) {
  if (s.empty()) return std::nullopt;
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw IoError("event log line " + std::to_string(line) + ": bad field '" + std::string(s) +
                  "'");
  }
  return v;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

std::vector<engine::EventRecord> read_event_log(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kEventLogHeader) {
    throw IoError("event log: missing header '" + std::string(kEventLogHeader) + "'");
  }
  std::vector<engine::EventRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_commas(line);
    if (f.size() != 5) throw IoError("event log line " + std::to_string(lineno) + ": need 5 fields");
    engine::EventRecord e;
    const auto t = parse_field<double>(f[0], lineno);
    const auto kind = engine::parse_event_kind(f[1]);
    if (!t || !kind) throw IoError("event log line " + std::to_string(lineno) + ": bad time/kind");
    e.time = *t;
    e.kind = *kind;
    e.msg = parse_field<MessageId>(f[2], lineno);
    e.from = parse_field<NodeId>(f[3], lineno);
    e.to = parse_field<NodeId>(f[4], lineno);
    out.push_back(e);
  }
  return out;
}

double read_summary_latency(const std::filesystem::path& summary) {
  std::ifstream in(summary);
  if (!in) throw IoError("cannot read " + summary.string());
  std::string line;
  while (std::getline(in, line)) {
    constexpr std::string_view key = "avg_latency_s,";
    if (line.rfind(key, 0) != 0) continue;
    const std::string value = line.substr(key.size());
    if (value == "NA") throw EmptySetError(summary.string() + ": run delivered no messages");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      throw IoError(summary.string() + ": malformed avg_latency_s");
    }
    return v;
  }
  throw IoError(summary.string() + ": no avg_latency_s row");
}

}  // namespace railmule::reports
