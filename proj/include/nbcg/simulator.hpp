#pragma once

#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nbcg/reporting.hpp"
#include "nbcg/scenario.hpp"
#include "nbcg/world.hpp"

namespace nbcg {

struct RunArtifacts {
  std::vector<RebalanceEvent> events;
  std::vector<TickRecord> records;
  nlohmann::ordered_json summary;
};

/// A failure after the scenario validated. `last_consistent_tick` is the
/// last fully recorded tick, or -1 if tick 0 never completed.
class RunFailure : public std::runtime_error {
 public:
  RunFailure(Tick last_consistent_tick, const std::string& message)
      : std::runtime_error(message), last_consistent_tick_(last_consistent_tick) {}
  Tick last_consistent_tick() const noexcept { return last_consistent_tick_; }

 private:
  Tick last_consistent_tick_;
};

/// Called after each tick's records are emitted.
using TickObserver = std::function<void(Tick, const World&)>;

/// Clusters and initial groups at tick 0, with their setup events logged.
World build_world(const Scenario& scenario);

/// Runs every tick in fixed phase order: membership changes, workload,
/// scheduling, balancing for groups due this tick, scheduling of recipients,
/// then one record per cluster.
RunArtifacts run(const Scenario& scenario, const TickObserver& observer = {});

/// Copy with every group and membership change removed.
Scenario strip_groups(const Scenario& scenario);

struct Comparison {
  RunArtifacts balanced;
  RunArtifacts static_run;
  nlohmann::ordered_json report;
};

/// The scenario as given versus static allocation, with deltas
/// (balanced minus static).
Comparison compare(const Scenario& scenario);

/// events.jsonl, metrics.csv, summary.json under `dir`.
void write_run(const std::filesystem::path& dir, const RunArtifacts& artifacts);

TickRecord make_record(Tick tick, const Cluster& cluster);

}  // namespace nbcg
