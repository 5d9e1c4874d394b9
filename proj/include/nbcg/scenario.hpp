#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nbcg/group_manager.hpp"
#include "nbcg/model.hpp"
#include "nbcg/workload.hpp"

namespace nbcg {

struct ClusterSpec {
  ClusterId id;
  int node_count = 1;
  Resources node_capacity;
  TraceSpec trace;
};

struct GroupSpec {
  GroupId id;
  Thresholds thresholds;
  int balance_interval = 1;
  std::vector<ClusterId> members;
};

struct Scenario {
  std::vector<ClusterSpec> clusters;
  std::vector<GroupSpec> groups;
  std::vector<MembershipChange> membership_changes;
  Tick ticks = 1;
  std::uint64_t seed = 0;
};

inline constexpr int kMaxNodesPerCluster = 999;

/// Strict parse: unknown keys, missing keys and wrong types throw
/// ScenarioInvalid naming the JSON path (e.g. "clusters[1].trace.period").
/// The result is also validated.
Scenario parse_scenario(const std::string& text);

/// Cross-reference and range checks; throws ScenarioInvalid.
void validate_scenario(const Scenario& scenario);

nlohmann::ordered_json to_json(const Scenario& scenario);

}  // namespace nbcg
