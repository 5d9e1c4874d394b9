#include <algorithm>
#include <array>

#include "nbcg/events.hpp"
#include "nbcg/world.hpp"

namespace nbcg {

namespace {
constexpr std::array kKindNames = {
    std::pair{EventKind::GroupCreated, std::string_view("GroupCreated")},
    std::pair{EventKind::ClusterAdded, std::string_view("ClusterAdded")},
    std::pair{EventKind::ClusterRemoved, std::string_view("ClusterRemoved")},
    std::pair{EventKind::DrainStarted, std::string_view("DrainStarted")},
    std::pair{EventKind::DrainRestored, std::string_view("DrainRestored")},
    std::pair{EventKind::NodeDeprovisioned, std::string_view("NodeDeprovisioned")},
    std::pair{EventKind::NodeProvisioned, std::string_view("NodeProvisioned")},
    std::pair{EventKind::MoveCompleted, std::string_view("MoveCompleted")},
    std::pair{EventKind::MoveReversed, std::string_view("MoveReversed")},
    std::pair{EventKind::NoCandidate, std::string_view("NoCandidate")},
    std::pair{EventKind::RestorationCompleted, std::string_view("RestorationCompleted")},
};
}  // namespace

std::string_view to_string(EventKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "Unknown";
}

std::optional<EventKind> parse_event_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  return std::nullopt;
}

const RebalanceEvent& EventLog::append(Tick tick, EventKind kind, Subjects subjects,
                                       nlohmann::ordered_json detail) {
  RebalanceEvent e;
  e.tick = tick;
  e.sequence = static_cast<std::int64_t>(events_.size());
  e.kind = kind;
  e.cluster = std::move(subjects.cluster);
  e.group = std::move(subjects.group);
  e.node = std::move(subjects.node);
  e.detail = std::move(detail);
  events_.push_back(std::move(e));
  return events_.back();
}

Cluster& World::cluster(const ClusterId& id) {
  auto it = clusters.find(id);
  if (it == clusters.end()) throw Error(ErrorCode::UnknownCluster, "no cluster " + id);
  return it->second;
}

const Cluster& World::cluster(const ClusterId& id) const { return const_cast<World*>(this)->cluster(id); }

Group& World::group(const GroupId& id) {
  auto it = groups.find(id);
  if (it == groups.end()) throw Error(ErrorCode::UnknownGroup, "no group " + id);
  return it->second;
}

const Group& World::group(const GroupId& id) const { return const_cast<World*>(this)->group(id); }

Cluster& World::add_cluster(Cluster c) {
  if (clusters.count(c.id) != 0) throw Error(ErrorCode::ScenarioInvalid, "duplicate cluster id " + c.id);
  const auto existing = all_node_ids();
  for (const auto& n : c.nodes)
    if (std::binary_search(existing.begin(), existing.end(), n.id))
      throw Error(ErrorCode::DuplicateNode, "node " + n.id + " already exists");
  auto id = c.id;
  return clusters.emplace(id, std::move(c)).first->second;
}

std::vector<NodeId> World::all_node_ids() const {
  std::vector<NodeId> out;
  for (const auto& [_, c] : clusters)
    for (const auto& n : c.nodes) out.push_back(n.id);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nbcg
