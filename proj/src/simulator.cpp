#include "nbcg/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nbcg/balancer.hpp"
#include "nbcg/group_manager.hpp"
#include "nbcg/scheduler.hpp"
#include "nbcg/workload.hpp"

namespace nbcg {

using nlohmann::ordered_json;

World build_world(const Scenario& scenario) {
  World world;
  world.tick = 0;
  for (const auto& c : scenario.clusters) world.add_cluster(Cluster::create(c.id, c.node_count, c.node_capacity));
  for (const auto& g : scenario.groups) {
    create_group(world, g.id, g.thresholds, g.balance_interval);
    for (const auto& m : g.members) add_cluster(world, g.id, m);
  }
  return world;
}

TickRecord make_record(Tick tick, const Cluster& cluster) {
  const Utilization u = cluster_utilization(cluster);
  TickRecord r;
  r.tick = tick;
  r.cluster = cluster.id;
  r.u_cpu = u.cpu;
  r.u_mem = u.memory;
  r.u = u.u;
  r.active_nodes = cluster.active_node_count();
  r.pending_pods = cluster.pending_pod_count();
  r.pending_demand = cluster.pending_demand();
  return r;
}

RunArtifacts run(const Scenario& scenario, const TickObserver& observer) {
  validate_scenario(scenario);
  std::map<ClusterId, const TraceSpec*> traces;
  for (const auto& c : scenario.clusters) traces[c.id] = &c.trace;
  std::vector<MembershipChange> changes = scenario.membership_changes;
  std::stable_sort(changes.begin(), changes.end(),
                   [](const MembershipChange& a, const MembershipChange& b) { return a.tick < b.tick; });

  RunArtifacts out;
  Tick last_consistent = -1;
  try {
    World world = build_world(scenario);
    auto next_change = changes.begin();
    for (Tick tick = 0; tick < scenario.ticks; ++tick) {
      world.tick = tick;
      for (; next_change != changes.end() && next_change->tick == tick; ++next_change) {
        if (next_change->action == MembershipAction::Add)
          add_cluster(world, next_change->group, next_change->cluster);
        else
          remove_cluster(world, next_change->group, next_change->cluster);
      }
      for (auto& [id, c] : world.clusters) apply_workload(c, *traces.at(id), tick);
      for (auto& [_, c] : world.clusters) place_pending(c);

      std::set<ClusterId> received;
      for (const auto& [gid, g] : world.groups) {
        if (g.members.empty() || tick % g.balance_interval != 0) continue;
        for (const auto& r : recipients(rebalance_cycle(world, gid))) received.insert(r);
      }
      for (const auto& id : received) place_pending(world.cluster(id));

      for (const auto& [_, c] : world.clusters) out.records.push_back(make_record(tick, c));
      last_consistent = tick;
      if (observer) observer(tick, world);
    }
    out.events = world.log.events();
  } catch (const Error& e) {
    throw RunFailure(last_consistent, std::string(e.what()) + " (last consistent tick " +
                                          std::to_string(last_consistent) + ")");
  }
  out.summary = summarize(out.events, out.records);
  return out;
}

Scenario strip_groups(const Scenario& scenario) {
  Scenario s = scenario;
  s.groups.clear();
  s.membership_changes.clear();
  return s;
}

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

}  // namespace

Comparison compare(const Scenario& scenario) {
  Comparison c;
  c.balanced = run(scenario);
  c.static_run = run(strip_groups(scenario));
  const auto& b = c.balanced.summary;
  const auto& s = c.static_run.summary;
  ordered_json delta;
  for (const char* key : {"pending_pod_ticks", "moves", "reversals", "no_candidates", "restorations"})
    delta[key] = b.at(key).get<std::int64_t>() - s.at(key).get<std::int64_t>();
  ordered_json peaks = ordered_json::object();
  for (const auto& [id, bc] : b.at("clusters").items())
    peaks[id] = round6(bc.at("peak_u").get<double>() - s.at("clusters").at(id).at("peak_u").get<double>());
  delta["peak_u"] = std::move(peaks);

  c.report["balanced"] = b;
  c.report["static"] = s;
  c.report["delta"] = std::move(delta);
  return c;
}

void write_run(const std::filesystem::path& dir, const RunArtifacts& artifacts) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / kEventsFile, write_events(artifacts.events));
  write_file(dir / kMetricsFile, write_metrics(artifacts.records));
  write_file(dir / kSummaryFile, dump_json(artifacts.summary));
}

}  // namespace nbcg
