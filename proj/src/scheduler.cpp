#include "nbcg/scheduler.hpp"

#include <algorithm>
#include <map>

namespace nbcg {

namespace {

// First-fit the given pods (already in FFD order) onto `targets`, tracking
// free capacity in `free`. Returns the pods that did not fit.
std::vector<Pod*> first_fit(std::vector<Pod*>& pods, const std::vector<const Node*>& targets,
                            std::map<NodeId, Resources>& free, std::vector<Placement>& placed) {
  std::vector<Pod*> unplaced;
  for (Pod* pod : pods) {
    bool done = false;
    for (const Node* n : targets) {
      Resources& room = free[n->id];
      if (pod->demand.fits_within(room)) {
        room -= pod->demand;
        pod->node = n->id;
        pod->state = PodState::Running;
        placed.push_back({pod->id, n->id});
        done = true;
        break;
      }
    }
    if (!done) unplaced.push_back(pod);
  }
  return unplaced;
}

std::map<NodeId, Resources> free_map(const Cluster& cluster, const std::vector<const Node*>& targets) {
  std::map<NodeId, Resources> free;
  for (const Node* n : targets) free[n->id] = cluster.free_capacity(*n);
  return free;
}

std::vector<const Node*> active_nodes_except(const Cluster& cluster, const NodeId* excluded) {
  std::vector<const Node*> out;
  for (const auto& n : cluster.nodes)
    if (n.state == NodeState::Active && (excluded == nullptr || n.id != *excluded)) out.push_back(&n);
  return out;
}

Node& require_active(Cluster& cluster, const NodeId& node_id) {
  Node* node = cluster.find_node(node_id);
  if (node == nullptr) throw Error(ErrorCode::NodeNotInCluster, node_id + " not in cluster " + cluster.id);
  if (node->state != NodeState::Active)
    throw Error(ErrorCode::NodeNotActive, node_id + " is " + std::string(to_string(node->state)));
  return *node;
}

// Evicts the node's pods and first-fits them onto the remaining Active nodes.
// Returns the pods that could not be placed; they are left Pending.
std::vector<Pod*> evict_and_relocate(Cluster& cluster, Node& node, DrainOutcome& out) {
  node.state = NodeState::Draining;
  std::vector<Pod*> evicted;
  for (auto& p : cluster.pods) {
    if (p.state == PodState::Running && p.node == node.id) {
      p.state = PodState::Pending;
      p.node.reset();
      evicted.push_back(&p);
    }
  }
  std::sort(evicted.begin(), evicted.end(), [](const Pod* a, const Pod* b) { return ffd_before(*a, *b); });
  const auto targets = active_nodes_except(cluster, &node.id);
  auto free = free_map(cluster, targets);
  return first_fit(evicted, targets, free, out.relocated);
}

}  // namespace

bool ffd_before(const Pod& a, const Pod& b) {
  if (a.demand.cpu != b.demand.cpu) return a.demand.cpu > b.demand.cpu;
  if (a.demand.memory != b.demand.memory) return a.demand.memory > b.demand.memory;
  return a.id < b.id;
}

std::vector<Placement> place_pending(Cluster& cluster) {
  std::vector<Pod*> pending;
  for (auto& p : cluster.pods)
    if (p.state == PodState::Pending) pending.push_back(&p);
  std::vector<Placement> placed;
  if (pending.empty()) return placed;
  std::sort(pending.begin(), pending.end(), [](const Pod* a, const Pod* b) { return ffd_before(*a, *b); });
  const auto targets = active_nodes_except(cluster, nullptr);
  auto free = free_map(cluster, targets);
  first_fit(pending, targets, free, placed);
  return placed;
}

DrainOutcome drain_node(Cluster& cluster, const NodeId& node_id) {
  require_active(cluster, node_id);
  if (cluster.active_node_count() <= cluster.min_active_nodes)
    throw Error(ErrorCode::LastNodeGuard, "draining " + node_id + " would leave cluster " + cluster.id +
                                              " below min_active_nodes");
  const std::vector<Pod> saved_pods = cluster.pods;
  DrainOutcome out;
  out.node = node_id;
  Node& node = *cluster.find_node(node_id);
  if (!evict_and_relocate(cluster, node, out).empty()) {
    cluster.pods = saved_pods;
    node.state = NodeState::Active;
    out.relocated.clear();
    out.restored = true;
    return out;
  }
  node.state = NodeState::Reserved;
  return out;
}

DrainOutcome force_drain_node(Cluster& cluster, const NodeId& node_id) {
  Node& node = require_active(cluster, node_id);
  DrainOutcome out;
  out.node = node_id;
  for (const Pod* p : evict_and_relocate(cluster, node, out)) out.left_pending.push_back(p->id);
  std::sort(out.left_pending.begin(), out.left_pending.end());
  node.state = NodeState::Reserved;
  return out;
}

}  // namespace nbcg
