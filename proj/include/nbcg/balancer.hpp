#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "nbcg/model.hpp"
#include "nbcg/world.hpp"

namespace nbcg {

enum class OutcomeKind { Moved, Reversed, NoCandidate, NoAction };

/// Why a donor candidate was passed over.
enum class RejectReason { AlreadyParticipated, AtMinActiveNodes, DrainInfeasible, WouldExceedTHigh };

std::string_view to_string(OutcomeKind k);
std::string_view to_string(RejectReason r);

struct Attempt {
  ClusterId cluster;
  RejectReason reason;
  friend bool operator==(const Attempt&, const Attempt&) = default;
};

struct RebalanceOutcome {
  OutcomeKind kind = OutcomeKind::NoAction;
  std::optional<ClusterId> high_cluster;
  std::optional<ClusterId> low_cluster;
  std::optional<NodeId> node;
  std::vector<Attempt> attempts;
  /// Donor utilization measured after deprovisioning (Moved / Reversed).
  std::optional<double> donor_u_after;
};

/// Removes a Reserved node from the cluster and returns it InTransit with no
/// host. Throws NodeNotInCluster or NodeNotReserved.
Node deprovision_node(Cluster& cluster, const NodeId& node_id);

/// Adds an InTransit node to the cluster as Active. Throws NodeNotInTransit
/// or DuplicateNode.
void provision_node(Cluster& cluster, Node node);

/// Lowest node_utilization among Active nodes, ties by ascending id.
std::optional<NodeId> lowest_utilized_node(const Cluster& cluster);

/// One balancing pass over a group.
///
/// Each overutilized cluster, most loaded first, walks the underutilized
/// clusters from least loaded up. For a candidate donor the least utilized
/// node is drained and deprovisioned, then the donor is measured again. If
/// the donor would now exceed t_high the node goes straight back (a
/// reversal) and the next candidate is tried; otherwise the node is
/// provisioned into the hot cluster. At most one node moves per hot cluster,
/// and a cluster that donated or received is not used again in the pass.
///
/// A hot cluster with no underutilized peers yields NoAction; one whose
/// candidates all failed yields NoCandidate, preceded by a Reversed outcome
/// per reversal. A group with nothing over t_high yields a single NoAction.
/// Every step is logged to `world.log` at `world.tick`. If an error escapes
/// mid-move the in-flight node is returned to its donor first.
std::vector<RebalanceOutcome> rebalance_cycle(World& world, const GroupId& group_id);

std::int64_t pods_on_node(const Cluster& cluster, const NodeId& node_id);

/// Clusters that received a node in the outcomes.
std::vector<ClusterId> recipients(const std::vector<RebalanceOutcome>& outcomes);

}  // namespace nbcg
