#pragma once

#include <utility>
#include <vector>

#include "nbcg/model.hpp"

// Simulated pod placement and node draining. First-fit-decreasing with a
// total tie-break order stands in for the real cluster scheduler.

namespace nbcg {

struct Placement {
  PodId pod;
  NodeId node;
  friend bool operator==(const Placement&, const Placement&) = default;
};

struct DrainOutcome {
  NodeId node;
  std::vector<Placement> relocated;
  bool restored = false;
  std::vector<PodId> left_pending;  // forced drains only
};

/// Descending cpu, then descending memory, then ascending pod id.
bool ffd_before(const Pod& a, const Pod& b);

/// Places Pending pods first-fit onto Active nodes in ascending node-id order.
/// Pods that fit nowhere stay Pending.
std::vector<Placement> place_pending(Cluster& cluster);

/// Drains an Active node onto its Active siblings. If any pod cannot be
/// relocated the cluster is returned to its exact pre-call state and
/// `restored` is set; otherwise the node ends Reserved and empty.
/// Throws NodeNotInCluster, NodeNotActive, LastNodeGuard.
DrainOutcome drain_node(Cluster& cluster, const NodeId& node_id);

/// Recall variant used by restoration: never aborts and ignores
/// min_active_nodes. Pods that cannot be relocated become Pending.
DrainOutcome force_drain_node(Cluster& cluster, const NodeId& node_id);

}  // namespace nbcg
