#pragma once

#include <map>
#include <vector>

#include "nbcg/model.hpp"

namespace nbcg {

/// CHigh candidates by descending u and CLow candidates by ascending u, ties
/// on ascending cluster id in both lists.
struct Evaluation {
  std::vector<ClusterId> overutilized;
  std::vector<ClusterId> underutilized;
  std::map<ClusterId, Utilization> utilization;
  Tick sampled_at = 0;
};

/// Accepts iff 0 < t_low < t_high <= 1; otherwise throws InvalidThresholds
/// naming the violated relation.
void validate_thresholds(const Thresholds& t);

/// Partitions the group's members into u > t_high, u < t_low, or neither.
/// Propagates ZeroCapacity.
Evaluation evaluate_group(const Group& group, const std::map<ClusterId, Cluster>& clusters, Tick tick = 0);

}  // namespace nbcg
