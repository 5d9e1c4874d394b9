#include "nbcg/balancer.hpp"

#include <algorithm>
#include <set>

#include "nbcg/rule_engine.hpp"
#include "nbcg/scheduler.hpp"

namespace nbcg {

using nlohmann::ordered_json;

std::string_view to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Moved: return "Moved";
    case OutcomeKind::Reversed: return "Reversed";
    case OutcomeKind::NoCandidate: return "NoCandidate";
    case OutcomeKind::NoAction: return "NoAction";
  }
  return "Unknown";
}

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::AlreadyParticipated: return "AlreadyParticipated";
    case RejectReason::AtMinActiveNodes: return "AtMinActiveNodes";
    case RejectReason::DrainInfeasible: return "DrainInfeasible";
    case RejectReason::WouldExceedTHigh: return "WouldExceedTHigh";
  }
  return "Unknown";
}

Node deprovision_node(Cluster& cluster, const NodeId& node_id) {
  auto it = std::find_if(cluster.nodes.begin(), cluster.nodes.end(),
                         [&](const Node& n) { return n.id == node_id; });
  if (it == cluster.nodes.end())
    throw Error(ErrorCode::NodeNotInCluster, node_id + " not in cluster " + cluster.id);
  if (it->state != NodeState::Reserved)
    throw Error(ErrorCode::NodeNotReserved, node_id + " is " + std::string(to_string(it->state)));
  Node node = std::move(*it);
  cluster.nodes.erase(it);
  node.state = NodeState::InTransit;
  node.host.reset();
  return node;
}

void provision_node(Cluster& cluster, Node node) {
  if (node.state != NodeState::InTransit || node.host.has_value())
    throw Error(node.host.has_value() ? ErrorCode::DuplicateNode : ErrorCode::NodeNotInTransit,
                node.id + " is " + std::string(to_string(node.state)) +
                    (node.host ? " on " + *node.host : std::string()));
  node.state = NodeState::Active;
  node.host = cluster.id;
  cluster.insert_node(std::move(node));
}

std::optional<NodeId> lowest_utilized_node(const Cluster& cluster) {
  std::optional<NodeId> best;
  double best_u = 0.0;
  for (const auto& n : cluster.nodes) {  // ascending id, so strict < keeps the lowest id on ties
    if (n.state != NodeState::Active) continue;
    const double u = node_utilization(cluster, n.id);
    if (!best || u < best_u) {
      best = n.id;
      best_u = u;
    }
  }
  return best;
}

std::vector<ClusterId> recipients(const std::vector<RebalanceOutcome>& outcomes) {
  std::vector<ClusterId> out;
  for (const auto& o : outcomes)
    if (o.kind == OutcomeKind::Moved) out.push_back(*o.high_cluster);
  return out;
}

namespace {

ordered_json attempts_json(const std::vector<Attempt>& attempts) {
  ordered_json arr = ordered_json::array();
  for (const auto& a : attempts) {
    ordered_json j;
    j["cluster"] = a.cluster;
    j["reason"] = std::string(to_string(a.reason));
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

std::int64_t pods_on_node(const Cluster& cluster, const NodeId& node_id) {
  return std::count_if(cluster.pods.begin(), cluster.pods.end(),
                       [&](const Pod& p) { return p.state == PodState::Running && p.node == node_id; });
}

std::vector<RebalanceOutcome> rebalance_cycle(World& world, const GroupId& group_id) {
  const Group& group = world.group(group_id);
  validate_thresholds(group.thresholds);
  const double t_high = group.thresholds.t_high;
  const Evaluation ev = evaluate_group(group, world.clusters, world.tick);
  EventLog& log = world.log;
  const Tick tick = world.tick;

  std::vector<RebalanceOutcome> outcomes;
  if (ev.overutilized.empty()) {
    outcomes.push_back({});
    return outcomes;
  }

  std::set<ClusterId> participated;
  for (const auto& high_id : ev.overutilized) {
    RebalanceOutcome result;
    result.high_cluster = high_id;
    if (ev.underutilized.empty()) {
      result.kind = OutcomeKind::NoAction;
      outcomes.push_back(std::move(result));
      continue;
    }

    bool moved = false;
    for (const auto& low_id : ev.underutilized) {
      if (participated.count(low_id) != 0) {
        result.attempts.push_back({low_id, RejectReason::AlreadyParticipated});
        continue;
      }
      Cluster& donor = world.cluster(low_id);
      if (donor.active_node_count() <= donor.min_active_nodes) {
        result.attempts.push_back({low_id, RejectReason::AtMinActiveNodes});
        continue;
      }
      const std::optional<NodeId> node_id = lowest_utilized_node(donor);
      if (!node_id) {
        result.attempts.push_back({low_id, RejectReason::AtMinActiveNodes});
        continue;
      }

      log.append(tick, EventKind::DrainStarted, {low_id, group_id, *node_id},
                 {{"forced", false}, {"pods", pods_on_node(donor, *node_id)}});
      const DrainOutcome drain = drain_node(donor, *node_id);
      if (drain.restored) {
        log.append(tick, EventKind::DrainRestored, {low_id, group_id, *node_id});
        result.attempts.push_back({low_id, RejectReason::DrainInfeasible});
        continue;
      }

      std::optional<Node> in_flight = deprovision_node(donor, *node_id);
      log.append(tick, EventKind::NodeDeprovisioned, {low_id, group_id, *node_id});
      try {
        const Utilization after = cluster_utilization(donor);
        if (exceeds(after.u, t_high)) {
          provision_node(donor, *in_flight);
          in_flight.reset();
          log.append(tick, EventKind::NodeProvisioned, {low_id, group_id, *node_id},
                     {{"from", low_id}, {"origin", donor.find_node(*node_id)->origin}});
          log.append(tick, EventKind::MoveReversed, {low_id, group_id, *node_id},
                     {{"recipient", high_id},
                      {"reason", std::string(to_string(RejectReason::WouldExceedTHigh))},
                      {"donor_u_before", ev.utilization.at(low_id).u},
                      {"donor_u_after", after.u},
                      {"t_high", t_high}});
          RebalanceOutcome rev;
          rev.kind = OutcomeKind::Reversed;
          rev.high_cluster = high_id;
          rev.low_cluster = low_id;
          rev.node = *node_id;
          rev.donor_u_after = after.u;
          outcomes.push_back(std::move(rev));
          result.attempts.push_back({low_id, RejectReason::WouldExceedTHigh});
          continue;
        }

        Cluster& recipient = world.cluster(high_id);
        const std::string origin = in_flight->origin;
        provision_node(recipient, *in_flight);  // copy: a throw must leave in_flight intact
        in_flight.reset();
        log.append(tick, EventKind::NodeProvisioned, {high_id, group_id, *node_id},
                   {{"from", low_id}, {"origin", origin}});
        log.append(tick, EventKind::MoveCompleted, {high_id, group_id, *node_id},
                   {{"donor", low_id},
                    {"recipient", high_id},
                    {"donor_u_before", ev.utilization.at(low_id).u},
                    {"donor_u_after", after.u},
                    {"recipient_u_before", ev.utilization.at(high_id).u},
                    {"t_high", t_high},
                    {"attempts", attempts_json(result.attempts)}});
        result.kind = OutcomeKind::Moved;
        result.low_cluster = low_id;
        result.node = *node_id;
        result.donor_u_after = after.u;
        participated.insert(low_id);
        participated.insert(high_id);
        moved = true;
        break;
      } catch (...) {
        if (in_flight) {
          in_flight->state = NodeState::InTransit;
          in_flight->host.reset();
          provision_node(donor, std::move(*in_flight));
        }
        throw;
      }
    }

    if (!moved) {
      result.kind = OutcomeKind::NoCandidate;
      log.append(tick, EventKind::NoCandidate, {high_id, group_id, std::nullopt},
                 {{"attempts", attempts_json(result.attempts)}});
    }
    outcomes.push_back(std::move(result));
  }
  return outcomes;
}

}  // namespace nbcg
