#pragma once

#include <variant>
#include <vector>

#include "nbcg/model.hpp"

namespace nbcg {

// Demand traces. Levels are CPU millicores; the memory target follows from
// the pod count, so both components are always whole quanta.

struct ConstantTrace {
  std::int64_t level = 0;
};

/// levels.size() == switch_ticks.size() + 1; levels[k] holds from
/// switch_ticks[k-1] (inclusive), switch_ticks ascending.
struct StepTrace {
  std::vector<std::int64_t> levels;
  std::vector<Tick> switch_ticks;
};

struct SineTrace {
  double base = 0;
  double amplitude = 0;
  double period = 1;
  double phase = 0;
};

/// `peak` for start <= tick < start + duration, `base` otherwise.
struct SpikeTrace {
  std::int64_t base = 0;
  std::int64_t peak = 0;
  Tick start = 0;
  Tick duration = 0;
};

struct TraceSpec {
  std::variant<ConstantTrace, StepTrace, SineTrace, SpikeTrace> shape;
  Resources pod_quantum{100, 128};
};

/// Raw level before quantization (clamped at zero).
double trace_level(const TraceSpec& trace, Tick tick);

/// Level rounded to the nearest whole number of pod quanta.
Resources target_demand(const TraceSpec& trace, Tick tick);

struct WorkloadDelta {
  std::vector<PodId> created;
  std::vector<PodId> deleted;
  bool empty() const { return created.empty() && deleted.empty(); }
};

/// Brings total pod demand (Running + Pending) to `target`. Deletes newest
/// pods first while the remainder stays >= target componentwise, then adds
/// Pending quantum pods while any component is short. The result overshoots
/// the target by less than one quantum when pods are quantum-sized.
WorkloadDelta apply_target(Cluster& cluster, const Resources& target, const Resources& quantum);

WorkloadDelta apply_workload(Cluster& cluster, const TraceSpec& trace, Tick tick);

}  // namespace nbcg
