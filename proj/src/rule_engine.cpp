#include "nbcg/rule_engine.hpp"

#include <algorithm>
#include <string>

namespace nbcg {

void validate_thresholds(const Thresholds& t) {
  const auto fmt = [&](const char* relation) {
    return std::string("violated ") + relation + " (t_low=" + std::to_string(t.t_low) +
           ", t_high=" + std::to_string(t.t_high) + ")";
  };
  if (!(t.t_low > 0.0)) throw Error(ErrorCode::InvalidThresholds, fmt("0 < t_low"));
  if (!(t.t_low < t.t_high)) throw Error(ErrorCode::InvalidThresholds, fmt("t_low < t_high"));
  if (!(t.t_high <= 1.0)) throw Error(ErrorCode::InvalidThresholds, fmt("t_high <= 1"));
}

Evaluation evaluate_group(const Group& group, const std::map<ClusterId, Cluster>& clusters, Tick tick) {
  Evaluation ev;
  ev.sampled_at = tick;
  for (const auto& id : group.members) {
    auto it = clusters.find(id);
    if (it == clusters.end()) throw Error(ErrorCode::UnknownCluster, "group " + group.id + " names " + id);
    const Utilization u = cluster_utilization(it->second);
    ev.utilization[id] = u;
    if (exceeds(u.u, group.thresholds.t_high))
      ev.overutilized.push_back(id);
    else if (below(u.u, group.thresholds.t_low))
      ev.underutilized.push_back(id);
  }
  const auto& util = ev.utilization;
  std::sort(ev.overutilized.begin(), ev.overutilized.end(), [&](const ClusterId& a, const ClusterId& b) {
    const double ua = util.at(a).u, ub = util.at(b).u;
    return ua != ub ? ua > ub : a < b;
  });
  std::sort(ev.underutilized.begin(), ev.underutilized.end(), [&](const ClusterId& a, const ClusterId& b) {
    const double ua = util.at(a).u, ub = util.at(b).u;
    return ua != ub ? ua < ub : a < b;
  });
  return ev;
}

}  // namespace nbcg
