#include "nbcg/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nbcg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double trace_level(const TraceSpec& trace, Tick tick) {
  const double level = std::visit(
      overloaded{
          [](const ConstantTrace& c) { return static_cast<double>(c.level); },
          [&](const StepTrace& s) {
            if (s.levels.empty()) return 0.0;
            const auto k = std::upper_bound(s.switch_ticks.begin(), s.switch_ticks.end(), tick) -
                           s.switch_ticks.begin();
            return static_cast<double>(s.levels[std::min<std::size_t>(k, s.levels.size() - 1)]);
          },
          [&](const SineTrace& s) {
            return s.base +
                   s.amplitude * std::sin(2.0 * std::numbers::pi * (static_cast<double>(tick) + s.phase) / s.period);
          },
          [&](const SpikeTrace& s) {
            return static_cast<double>(tick >= s.start && tick < s.start + s.duration ? s.peak : s.base);
          },
      },
      trace.shape);
  return std::max(0.0, level);
}

Resources target_demand(const TraceSpec& trace, Tick tick) {
  const auto pods = static_cast<std::int64_t>(
      std::llround(trace_level(trace, tick) / static_cast<double>(trace.pod_quantum.cpu)));
  return {pods * trace.pod_quantum.cpu, pods * trace.pod_quantum.memory};
}

WorkloadDelta apply_target(Cluster& cluster, const Resources& target, const Resources& quantum) {
  WorkloadDelta delta;
  Resources current = cluster.total_demand();
  // Pods are id-sorted, so the back is the newest.
  while (!cluster.pods.empty()) {
    const Resources after = current - cluster.pods.back().demand;
    if (!target.fits_within(after)) break;
    current = after;
    delta.deleted.push_back(cluster.pods.back().id);
    cluster.pods.pop_back();
  }
  while (current.cpu < target.cpu || current.memory < target.memory) {
    delta.created.push_back(cluster.add_pod(quantum));
    current += quantum;
  }
  return delta;
}

WorkloadDelta apply_workload(Cluster& cluster, const TraceSpec& trace, Tick tick) {
  return apply_target(cluster, target_demand(trace, tick), trace.pod_quantum);
}

}  // namespace nbcg
