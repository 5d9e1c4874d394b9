#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nbcg/error.hpp"

namespace nbcg {

using ClusterId = std::string;
using GroupId = std::string;
using NodeId = std::string;
using PodId = std::string;
using Tick = std::int64_t;

/// CPU in millicores, memory in MiB.
struct Resources {
  std::int64_t cpu = 0;
  std::int64_t memory = 0;

  Resources& operator+=(const Resources& o) {
    cpu += o.cpu;
    memory += o.memory;
    return *this;
  }
  Resources& operator-=(const Resources& o) {
    cpu -= o.cpu;
    memory -= o.memory;
    return *this;
  }
  friend Resources operator+(Resources a, const Resources& b) { return a += b; }
  friend Resources operator-(Resources a, const Resources& b) { return a -= b; }
  friend bool operator==(const Resources&, const Resources&) = default;

  /// Componentwise a <= b.
  bool fits_within(const Resources& limit) const { return cpu <= limit.cpu && memory <= limit.memory; }
  bool non_negative() const { return cpu >= 0 && memory >= 0; }
};

enum class NodeState { Active, Draining, Reserved, InTransit };
enum class PodState { Running, Pending };

std::string_view to_string(NodeState s);

struct Node {
  NodeId id;
  Resources capacity;
  ClusterId origin;
  std::optional<ClusterId> host;
  NodeState state = NodeState::Active;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Pod {
  PodId id;
  Resources demand;
  std::optional<NodeId> node;
  PodState state = PodState::Pending;

  friend bool operator==(const Pod&, const Pod&) = default;
};

/// A container cluster. Nodes and pods are kept sorted by id; pod ids are
/// zero-padded creation sequence numbers, so id order is creation order.
struct Cluster {
  ClusterId id;
  std::vector<Node> nodes;
  std::vector<Pod> pods;
  std::set<NodeId> original_node_ids;
  std::optional<GroupId> group;
  int min_active_nodes = 1;
  std::uint64_t next_pod_seq = 0;

  friend bool operator==(const Cluster&, const Cluster&) = default;

  /// Provisions `node_count` fresh nodes named "<id>-nNNN" and snapshots them
  /// as the original configuration.
  static Cluster create(ClusterId id, int node_count, Resources capacity, int min_active_nodes = 1);

  Node* find_node(const NodeId& node_id);
  const Node* find_node(const NodeId& node_id) const;
  Pod* find_pod(const PodId& pod_id);

  /// Appends a Pending pod with the next sequence id and returns its id.
  PodId add_pod(Resources demand);

  std::vector<NodeId> node_ids() const;
  std::set<NodeId> node_id_set() const;
  int active_node_count() const;

  /// Sum of demands of Running pods assigned to `node_id`.
  Resources node_load(const NodeId& node_id) const;
  Resources free_capacity(const Node& node) const { return node.capacity - node_load(node.id); }

  Resources running_demand() const;
  Resources pending_demand() const;
  Resources total_demand() const { return running_demand() + pending_demand(); }
  int pending_pod_count() const;

  /// Inserts keeping id order. Throws DuplicateNode on id clash.
  void insert_node(Node node);
};

struct Thresholds {
  double t_low = 0.0;
  double t_high = 1.0;

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct Group {
  GroupId id;
  std::vector<ClusterId> members;
  Thresholds thresholds;
  int balance_interval = 1;

  bool has_member(const ClusterId& c) const;
  friend bool operator==(const Group&, const Group&) = default;
};

struct Utilization {
  double cpu = 0.0;
  double memory = 0.0;
  double u = 0.0;
};

/// Utilization ratios are compared against thresholds with this slack.
inline constexpr double kUtilizationTolerance = 1e-9;

inline bool exceeds(double u, double threshold) { return u > threshold + kUtilizationTolerance; }
inline bool below(double u, double threshold) { return u < threshold - kUtilizationTolerance; }

/// Running-pod demand over Active-node capacity, per resource; u is the max.
/// Throws ZeroCapacity when the cluster has no Active node.
Utilization cluster_utilization(const Cluster& cluster);

/// Max over resources of the node's load ratio. Throws NodeNotInCluster or
/// NodeNotActive.
double node_utilization(const Cluster& cluster, const NodeId& node_id);

}  // namespace nbcg
