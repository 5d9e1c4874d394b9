#include "nbcg/model.hpp"

#include <algorithm>
#include <cstdio>

namespace nbcg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroCapacity: return "ZeroCapacity";
    case ErrorCode::NodeNotActive: return "NodeNotActive";
    case ErrorCode::NodeNotInCluster: return "NodeNotInCluster";
    case ErrorCode::LastNodeGuard: return "LastNodeGuard";
    case ErrorCode::NodeNotReserved: return "NodeNotReserved";
    case ErrorCode::NodeNotInTransit: return "NodeNotInTransit";
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::InvalidThresholds: return "InvalidThresholds";
    case ErrorCode::DuplicateGroup: return "DuplicateGroup";
    case ErrorCode::AlreadyGrouped: return "AlreadyGrouped";
    case ErrorCode::UnknownCluster: return "UnknownCluster";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::NotAMember: return "NotAMember";
    case ErrorCode::ScenarioInvalid: return "ScenarioInvalid";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

std::string_view to_string(NodeState s) {
  switch (s) {
    case NodeState::Active: return "Active";
    case NodeState::Draining: return "Draining";
    case NodeState::Reserved: return "Reserved";
    case NodeState::InTransit: return "InTransit";
  }
  return "Unknown";
}

Cluster Cluster::create(ClusterId id, int node_count, Resources capacity, int min_active_nodes) {
  Cluster c;
  c.id = std::move(id);
  c.min_active_nodes = min_active_nodes;
  for (int i = 0; i < node_count; ++i) {
    char suffix[16];
    std::snprintf(suffix, sizeof suffix, "-n%03d", i);
    Node n{c.id + suffix, capacity, c.id, c.id, NodeState::Active};
    c.original_node_ids.insert(n.id);
    c.nodes.push_back(std::move(n));
  }
  std::sort(c.nodes.begin(), c.nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
  return c;
}

Node* Cluster::find_node(const NodeId& node_id) {
  auto it = std::find_if(nodes.begin(), nodes.end(), [&](const Node& n) { return n.id == node_id; });
  return it == nodes.end() ? nullptr : &*it;
}

const Node* Cluster::find_node(const NodeId& node_id) const {
  return const_cast<Cluster*>(this)->find_node(node_id);
}

Pod* Cluster::find_pod(const PodId& pod_id) {
  auto it = std::find_if(pods.begin(), pods.end(), [&](const Pod& p) { return p.id == pod_id; });
  return it == pods.end() ? nullptr : &*it;
}

PodId Cluster::add_pod(Resources demand) {
  char suffix[32];
  std::snprintf(suffix, sizeof suffix, "-p%08llu", static_cast<unsigned long long>(next_pod_seq++));
  pods.push_back(Pod{id + suffix, demand, std::nullopt, PodState::Pending});
  return pods.back().id;
}

std::vector<NodeId> Cluster::node_ids() const {
  std::vector<NodeId> out;
  out.reserve(nodes.size());
  for (const auto& n : nodes) out.push_back(n.id);
  return out;
}

std::set<NodeId> Cluster::node_id_set() const {
  std::set<NodeId> out;
  for (const auto& n : nodes) out.insert(n.id);
  return out;
}

int Cluster::active_node_count() const {
  return static_cast<int>(
      std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return n.state == NodeState::Active; }));
}

Resources Cluster::node_load(const NodeId& node_id) const {
  Resources load;
  for (const auto& p : pods)
    if (p.state == PodState::Running && p.node == node_id) load += p.demand;
  return load;
}

Resources Cluster::running_demand() const {
  Resources r;
  for (const auto& p : pods)
    if (p.state == PodState::Running) r += p.demand;
  return r;
}

Resources Cluster::pending_demand() const {
  Resources r;
  for (const auto& p : pods)
    if (p.state == PodState::Pending) r += p.demand;
  return r;
}

int Cluster::pending_pod_count() const {
  return static_cast<int>(
      std::count_if(pods.begin(), pods.end(), [](const Pod& p) { return p.state == PodState::Pending; }));
}

void Cluster::insert_node(Node node) {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), node.id,
                             [](const Node& n, const NodeId& id) { return n.id < id; });
  if (it != nodes.end() && it->id == node.id)
    throw Error(ErrorCode::DuplicateNode, "node " + node.id + " already in cluster " + id);
  nodes.insert(it, std::move(node));
}

bool Group::has_member(const ClusterId& c) const {
  return std::find(members.begin(), members.end(), c) != members.end();
}

Utilization cluster_utilization(const Cluster& cluster) {
  Resources capacity;
  for (const auto& n : cluster.nodes)
    if (n.state == NodeState::Active) capacity += n.capacity;
  if (capacity.cpu <= 0 || capacity.memory <= 0)
    throw Error(ErrorCode::ZeroCapacity, "cluster " + cluster.id + " has no Active node");
  const Resources demand = cluster.running_demand();
  Utilization u;
  u.cpu = static_cast<double>(demand.cpu) / static_cast<double>(capacity.cpu);
  u.memory = static_cast<double>(demand.memory) / static_cast<double>(capacity.memory);
  u.u = std::max(u.cpu, u.memory);
  return u;
}

double node_utilization(const Cluster& cluster, const NodeId& node_id) {
  const Node* node = cluster.find_node(node_id);
  if (node == nullptr) throw Error(ErrorCode::NodeNotInCluster, node_id + " not in cluster " + cluster.id);
  if (node->state != NodeState::Active)
    throw Error(ErrorCode::NodeNotActive, node_id + " is " + std::string(to_string(node->state)));
  const Resources load = cluster.node_load(node_id);
  return std::max(static_cast<double>(load.cpu) / static_cast<double>(node->capacity.cpu),
                  static_cast<double>(load.memory) / static_cast<double>(node->capacity.memory));
}

}  // namespace nbcg
