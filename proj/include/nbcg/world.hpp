#pragma once

#include <map>

#include "nbcg/events.hpp"
#include "nbcg/model.hpp"

namespace nbcg {

/// All clusters and groups of one simulation plus its event log. Operations
/// that mutate a group's clusters assume exclusive access to the world.
struct World {
  std::map<ClusterId, Cluster> clusters;
  std::map<GroupId, Group> groups;
  EventLog log;
  Tick tick = 0;

  Cluster& cluster(const ClusterId& id);
  const Cluster& cluster(const ClusterId& id) const;
  Group& group(const GroupId& id);
  const Group& group(const GroupId& id) const;

  /// Registers a new ungrouped cluster. Throws DuplicateNode if any node id
  /// is already present anywhere.
  Cluster& add_cluster(Cluster c);

  /// Every node id across all clusters, sorted.
  std::vector<NodeId> all_node_ids() const;
};

/// Structural invariants of a world at rest (between operations): node
/// hosting and states, pod placement and per-node capacity, group
/// membership back-references and exclusivity. With `at_rest` false, nodes
/// in Draining/Reserved are tolerated. Returns one message per violation.
std::vector<std::string> check_invariants(const World& world, bool at_rest = true);

}  // namespace nbcg
