#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nbcg/model.hpp"

namespace nbcg {

enum class EventKind {
  GroupCreated,
  ClusterAdded,
  ClusterRemoved,
  DrainStarted,
  DrainRestored,
  NodeDeprovisioned,
  NodeProvisioned,
  MoveCompleted,
  MoveReversed,
  NoCandidate,
  RestorationCompleted,
};

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view name);

/// Audit record. `detail` is a JSON object whose key order is part of the
/// serialized form.
struct RebalanceEvent {
  Tick tick = 0;
  std::int64_t sequence = 0;
  EventKind kind = EventKind::GroupCreated;
  std::optional<ClusterId> cluster;
  std::optional<GroupId> group;
  std::optional<NodeId> node;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();

  friend bool operator==(const RebalanceEvent&, const RebalanceEvent&) = default;
};

struct Subjects {
  std::optional<ClusterId> cluster;
  std::optional<GroupId> group;
  std::optional<NodeId> node;
};

/// Append-only, gap-free sequence numbering per run.
class EventLog {
 public:
  const RebalanceEvent& append(Tick tick, EventKind kind, Subjects subjects,
                               nlohmann::ordered_json detail = nlohmann::ordered_json::object());

  const std::vector<RebalanceEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }

 private:
  std::vector<RebalanceEvent> events_;
};

}  // namespace nbcg
