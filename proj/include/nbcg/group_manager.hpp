#pragma once

#include <vector>

#include "nbcg/model.hpp"
#include "nbcg/world.hpp"

namespace nbcg {

enum class MembershipAction { Add, Remove };

struct MembershipChange {
  Tick tick = 0;
  MembershipAction action = MembershipAction::Add;
  ClusterId cluster;
  GroupId group;
  friend bool operator==(const MembershipChange&, const MembershipChange&) = default;
};

struct NodeMovement {
  NodeId node;
  ClusterId from;
  ClusterId to;
  friend bool operator==(const NodeMovement&, const NodeMovement&) = default;
};

struct PendingPod {
  ClusterId cluster;
  PodId pod;
  friend bool operator==(const PendingPod&, const PendingPod&) = default;
};

struct RestorationReport {
  GroupId group;
  ClusterId cluster;
  std::vector<NodeMovement> movements;
  std::vector<PendingPod> left_pending;
};

/// Throws DuplicateGroup, InvalidThresholds, or ScenarioInvalid for a
/// non-positive interval.
Group& create_group(World& world, const GroupId& id, Thresholds thresholds, int balance_interval);

/// Throws AlreadyGrouped (naming the current group), UnknownCluster,
/// UnknownGroup.
void add_cluster(World& world, const GroupId& group_id, const ClusterId& cluster_id);

/// Takes a cluster out of its group and gives it back exactly its original
/// nodes.
///
/// Borrowed nodes it hosts go back to their origin clusters first, then its
/// own nodes lent elsewhere are recalled. Both use forced drains, so pods
/// that cannot be relocated are left Pending where they were rather than
/// blocking the removal. If that leaves any cluster with no Active node, one
/// of its own nodes is recalled from wherever it is hosted, repeating until
/// every cluster has one. Throws NotAMember.
RestorationReport remove_cluster(World& world, const GroupId& group_id, const ClusterId& cluster_id);

}  // namespace nbcg
