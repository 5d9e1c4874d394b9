#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "nbcg/events.hpp"
#include "nbcg/model.hpp"

namespace nbcg {

struct TickRecord {
  Tick tick = 0;
  ClusterId cluster;
  double u_cpu = 0;
  double u_mem = 0;
  double u = 0;
  int active_nodes = 0;
  int pending_pods = 0;
  Resources pending_demand;
  friend bool operator==(const TickRecord&, const TickRecord&) = default;
};

inline constexpr const char* kMetricsHeader =
    "tick,cluster_id,u_cpu,u_mem,u,active_nodes,pending_pods,pending_cpu_millicores,pending_memory_mib";

/// One JSON object per line: tick, sequence, kind, present subjects in
/// alphabetical order, then detail.
std::string write_events(const std::vector<RebalanceEvent>& events);
std::vector<RebalanceEvent> parse_events(const std::string& jsonl);

/// Rows sorted by (tick, cluster_id); ratios with 6 decimals.
std::string write_metrics(std::vector<TickRecord> records);
std::vector<TickRecord> parse_metrics(const std::string& csv);

/// Counters and per-cluster extrema from events and tick records. Peak
/// utilization is reported at the CSV's 6-decimal precision so a summary
/// rebuilt from files matches the original byte for byte.
nlohmann::ordered_json summarize(const std::vector<RebalanceEvent>& events, const std::vector<TickRecord>& records);

/// Sequence must start at 0 and be gap-free; every MoveCompleted must be
/// preceded in its tick by DrainStarted, NodeDeprovisioned and NodeProvisioned
/// for the same node, in that order. Returns one message per violation.
std::vector<std::string> validate_event_log(const std::vector<RebalanceEvent>& events);

/// Pretty JSON with a trailing newline.
std::string dump_json(const nlohmann::ordered_json& j);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

inline constexpr const char* kEventsFile = "events.jsonl";
inline constexpr const char* kMetricsFile = "metrics.csv";
inline constexpr const char* kSummaryFile = "summary.json";

}  // namespace nbcg
