#include "nbcg/group_manager.hpp"

#include <algorithm>

#include "nbcg/balancer.hpp"
#include "nbcg/rule_engine.hpp"
#include "nbcg/scheduler.hpp"

namespace nbcg {

using nlohmann::ordered_json;

Group& create_group(World& world, const GroupId& id, Thresholds thresholds, int balance_interval) {
  if (world.groups.count(id) != 0) throw Error(ErrorCode::DuplicateGroup, "group " + id + " already exists");
  validate_thresholds(thresholds);
  if (balance_interval <= 0)
    throw Error(ErrorCode::ScenarioInvalid, "group " + id + ": balance_interval must be positive");
  Group g{id, {}, thresholds, balance_interval};
  world.log.append(world.tick, EventKind::GroupCreated, {std::nullopt, id, std::nullopt},
                   {{"t_low", thresholds.t_low},
                    {"t_high", thresholds.t_high},
                    {"balance_interval", balance_interval}});
  return world.groups.emplace(id, std::move(g)).first->second;
}

void add_cluster(World& world, const GroupId& group_id, const ClusterId& cluster_id) {
  Group& group = world.group(group_id);
  Cluster& cluster = world.cluster(cluster_id);
  if (cluster.group)
    throw Error(ErrorCode::AlreadyGrouped, "cluster " + cluster_id + " already belongs to group " + *cluster.group);
  cluster.group = group_id;
  group.members.push_back(cluster_id);
  world.log.append(world.tick, EventKind::ClusterAdded, {cluster_id, group_id, std::nullopt});
}

namespace {

// Forced drain at `host`, deprovision, provision into `dest`.
void transfer(World& world, const GroupId& group_id, const NodeId& node_id, const ClusterId& host_id,
              const ClusterId& dest_id, RestorationReport& report) {
  Cluster& host = world.cluster(host_id);
  world.log.append(world.tick, EventKind::DrainStarted, {host_id, group_id, node_id},
                   {{"forced", true}, {"pods", pods_on_node(host, node_id)}});
  const DrainOutcome drain = force_drain_node(host, node_id);
  for (const auto& p : drain.left_pending) report.left_pending.push_back({host_id, p});
  Node node = deprovision_node(host, node_id);
  world.log.append(world.tick, EventKind::NodeDeprovisioned, {host_id, group_id, node_id},
                   {{"left_pending", drain.left_pending.size()}});
  const ClusterId origin = node.origin;
  provision_node(world.cluster(dest_id), std::move(node));
  world.log.append(world.tick, EventKind::NodeProvisioned, {dest_id, group_id, node_id},
                   {{"from", host_id}, {"origin", origin}});
  report.movements.push_back({node_id, host_id, dest_id});
}

std::optional<std::pair<NodeId, ClusterId>> find_displaced_original(const World& world, const ClusterId& origin) {
  for (const auto& [cid, c] : world.clusters) {
    if (cid == origin) continue;
    for (const auto& n : c.nodes)
      if (n.origin == origin) return std::pair{n.id, cid};
  }
  return std::nullopt;
}

}  // namespace

RestorationReport remove_cluster(World& world, const GroupId& group_id, const ClusterId& cluster_id) {
  Group& group = world.group(group_id);
  Cluster& cluster = world.cluster(cluster_id);
  if (!group.has_member(cluster_id) || cluster.group != group_id)
    throw Error(ErrorCode::NotAMember, "cluster " + cluster_id + " is not a member of group " + group_id);

  RestorationReport report;
  report.group = group_id;
  report.cluster = cluster_id;

  std::vector<std::pair<NodeId, ClusterId>> borrowed;
  for (const auto& n : cluster.nodes)
    if (n.origin != cluster_id) borrowed.emplace_back(n.id, n.origin);
  for (const auto& [node_id, origin] : borrowed) transfer(world, group_id, node_id, cluster_id, origin, report);

  while (auto lent = find_displaced_original(world, cluster_id))
    transfer(world, group_id, lent->first, lent->second, cluster_id, report);

  // A host may have been left without an Active node; pull its own nodes home.
  for (;;) {
    auto stranded = std::find_if(world.clusters.begin(), world.clusters.end(),
                                 [](const auto& kv) { return kv.second.active_node_count() == 0; });
    if (stranded == world.clusters.end()) break;
    auto lent = find_displaced_original(world, stranded->first);
    if (!lent) break;
    transfer(world, group_id, lent->first, lent->second, stranded->first, report);
  }

  cluster.group.reset();
  group.members.erase(std::remove(group.members.begin(), group.members.end(), cluster_id), group.members.end());

  ordered_json moves = ordered_json::array();
  for (const auto& m : report.movements) moves.push_back({{"node", m.node}, {"from", m.from}, {"to", m.to}});
  ordered_json pending = ordered_json::array();
  for (const auto& p : report.left_pending) pending.push_back({{"cluster", p.cluster}, {"pod", p.pod}});
  world.log.append(world.tick, EventKind::RestorationCompleted, {cluster_id, group_id, std::nullopt},
                   {{"movements", std::move(moves)}, {"left_pending", std::move(pending)}});
  world.log.append(world.tick, EventKind::ClusterRemoved, {cluster_id, group_id, std::nullopt});
  return report;
}

}  // namespace nbcg
