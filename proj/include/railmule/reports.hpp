#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "railmule/engine.hpp"
#include "railmule/geomap.hpp"
#include "railmule/radio.hpp"

namespace railmule::reports {

// Hop counts count transfers (links traversed): a direct source -> sink
// delivery has one hop, i.e. hop_count - 1 intermediate relays.
struct RunReport {
  std::uint64_t created_count = 0;
  std::uint64_t delivered_count = 0;
  std::optional<double> delivery_probability;  // absent when nothing was created
  std::optional<double> avg_hop_count;         // absent when nothing was delivered
  std::optional<double> avg_latency;           // seconds
  std::vector<std::pair<Seconds, Bytes>> buffer_series;
  double buffer_mean = 0.0;
  double buffer_variance = 0.0;
  std::map<NodeId, std::uint64_t> encounters;
  geomap::GridIndex heatmap;
};

double delivery_probability(std::uint64_t delivered, std::uint64_t created);
std::optional<double> avg_hops(std::span<const unsigned> hop_counts);
std::vector<double> scale_latencies(std::span<const double> latencies);

struct BufferStats {
  double mean = 0.0;
  double variance = 0.0;  // population
};

BufferStats buffer_stats(std::span<const std::pair<Seconds, Bytes>> series);

std::map<NodeId, std::uint64_t> encounter_counts(std::span<const radio::Contact> contact_starts);

// Listener that folds the engine's stream into a RunReport.
class ReportCollector : public engine::Listener {
 public:
  ReportCollector(std::size_t node_count, Metres heatmap_cell);

  void on_event(const engine::EventRecord& e) override;
  void on_sample(Seconds t, Bytes total, std::span<const geomap::Point> positions,
                 const std::vector<bool>& mobile) override;

  RunReport finish() const;

 private:
  std::size_t node_count_;
  geomap::GridIndex heatmap_;
  std::uint64_t created_ = 0;
  std::map<MessageId, Seconds> created_at_;
  std::vector<unsigned> hops_;
  std::vector<double> latencies_;
  std::vector<radio::Contact> starts_;
  std::vector<std::pair<Seconds, Bytes>> series_;
};

// Number formatting used by every CSV writer.
std::string format_fraction(double v);  // 6 significant digits
std::string format_real(double v);      // shortest round-trip, fixed notation

void emit_csv(const RunReport& report, const std::filesystem::path& out_dir);
void write_heatmap_geojson(const geomap::GridIndex& grid, const std::filesystem::path& file);

// Event log: header "time,kind,msg_id,from,to", absent fields left empty.
inline constexpr std::string_view kEventLogHeader = "time,kind,msg_id,from,to";

void write_event(std::ostream& out, const engine::EventRecord& e);
std::vector<engine::EventRecord> read_event_log(std::istream& in);

class EventLogWriter : public engine::Listener {
 public:
  explicit EventLogWriter(std::ostream& out);
  void on_event(const engine::EventRecord& e) override;

 private:
  std::ostream& out_;
};

// Reads avg_latency_s from a summary.csv. Throws IoError / EmptySetError.
double read_summary_latency(const std::filesystem::path& summary);

}  // namespace railmule::reports
