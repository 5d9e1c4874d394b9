// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Optional argv[1]: path to the nbcg-sim binary (criterion 7).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "acceptance/random_scenarios.hpp"
#include "nbcg/balancer.hpp"
#include "nbcg/group_manager.hpp"
#include "nbcg/scheduler.hpp"
#include "nbcg/simulator.hpp"
#include "nbcg/workload.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace nbcg;
using namespace nbcg::testing;

namespace {

constexpr double kTol = 1e-9;

struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string scenario_path(const char* name) { return std::string(NBCG_SCENARIO_DIR) + "/" + name; }

std::vector<const RebalanceEvent*> of_kind(const std::vector<RebalanceEvent>& events, EventKind k) {
  std::vector<const RebalanceEvent*> out;
  for (const auto& e : events)
    if (e.kind == k) out.push_back(&e);
  return out;
}

ClusterSpec spec(const ClusterId& id, int nodes, std::int64_t level) { return constant_cluster(id, nodes, level); }

// 1 and 9 share the randomized runs.
struct RandomRunStats {
  std::size_t scenarios = 0, ticks = 0, moves = 0, reversals = 0, restorations = 0;
};

Verdict node_conservation_and_donor_safety(Verdict& donor_safety, RandomRunStats& stats) {
  Verdict v;
  std::mt19937_64 rng(20261014);
  for (int i = 0; i < 1000; ++i) {
    const Scenario s = acceptance::random_scenario(rng);
    std::vector<NodeId> initial;
    for (const auto& c : s.clusters)
      for (const auto& id : Cluster::create(c.id, c.node_count, c.node_capacity).original_node_ids)
        initial.push_back(id);
    std::sort(initial.begin(), initial.end());

    RunArtifacts r;
    try {
      r = run(s, [&](Tick tick, const World& w) {
        ++stats.ticks;
        if (node_multiset(w) != initial) v.fail("scenario " + std::to_string(i) + " tick " + std::to_string(tick));
        for (const auto& [_, c] : w.clusters)
          for (const auto& n : c.nodes)
            if (n.state != NodeState::Active)
              v.fail("scenario " + std::to_string(i) + ": node " + n.id + " not Active at tick end");
      });
    } catch (const std::exception& e) {
      v.fail("scenario " + std::to_string(i) + " threw: " + e.what());
      donor_safety.fail("scenario " + std::to_string(i) + " threw");
      continue;
    }
    ++stats.scenarios;
    for (const auto* e : of_kind(r.events, EventKind::MoveCompleted)) {
      ++stats.moves;
      const double after = e->detail.at("donor_u_after").get<double>();
      const double t_high = e->detail.at("t_high").get<double>();
      if (!(after <= t_high))
        donor_safety.fail("scenario " + std::to_string(i) + " seq " + std::to_string(e->sequence) +
                          ": donor_u_after " + fmt(after) + " > t_high " + fmt(t_high));
    }
    stats.reversals += of_kind(r.events, EventKind::MoveReversed).size();
    stats.restorations += of_kind(r.events, EventKind::RestorationCompleted).size();
  }
  if (stats.moves == 0) donor_safety.fail("no MoveCompleted events were generated");
  return v;
}

Verdict move_scenario() {
  Verdict v;
  const RunArtifacts r = run(parse_scenario(read_file(scenario_path("move.json"))));
  const auto moves = of_kind(r.events, EventKind::MoveCompleted);
  if (moves.size() != 1) return v.fail("expected 1 MoveCompleted, got " + std::to_string(moves.size())), v;
  if (moves[0]->tick != 0) v.fail("move at tick " + std::to_string(moves[0]->tick));
  double ua = -1, ub = -1;
  int na = -1, nb = -1;
  for (const auto& rec : r.records) {
    if (rec.tick != 0) continue;
    (rec.cluster == "A" ? ua : ub) = rec.u;
    (rec.cluster == "A" ? na : nb) = rec.active_nodes;
  }
  if (std::abs(ua - 0.625) > kTol) v.fail("u(A) = " + fmt(ua));
  if (std::abs(ub - 0.25) > kTol) v.fail("u(B) = " + fmt(ub));
  if (na != 3 || nb != 2) v.fail("node counts " + std::to_string(na) + "," + std::to_string(nb));
  v.detail = v.pass ? "u(A)=" + fmt(ua) + " u(B)=" + fmt(ub) + " nodes=(3,2)" : v.detail;
  return v;
}

Verdict reversal_scenario() {
  Verdict v;
  const Scenario s = parse_scenario(read_file(scenario_path("reversal.json")));
  std::set<NodeId> donor_before = Cluster::create("B", 3, kNode4k).original_node_ids, donor_after;
  const RunArtifacts r = run(s, [&](Tick, const World& w) { donor_after = w.cluster("B").node_id_set(); });
  const auto rev = of_kind(r.events, EventKind::MoveReversed);
  if (rev.size() != 1) return v.fail("expected 1 MoveReversed, got " + std::to_string(rev.size())), v;
  if (rev[0]->detail.at("reason") != "WouldExceedTHigh") v.fail("reason " + rev[0]->detail.at("reason").dump());
  if (rev[0]->cluster != "B") v.fail("reversed donor is not B");
  const double after = rev[0]->detail.at("donor_u_after").get<double>();
  if (std::abs(after - 0.875) > kTol) v.fail("donor_u_after = " + fmt(after));
  if (donor_after != donor_before) v.fail("donor node-id set changed");
  if (!of_kind(r.events, EventKind::MoveCompleted).empty()) v.fail("unexpected MoveCompleted");
  if (v.pass) v.detail = "donor_u_after=" + fmt(after) + ", donor nodes unchanged";
  return v;
}

Verdict candidate_iteration() {
  Verdict v;
  Scenario s;
  // Post-removal: C1 2400/4000 = 0.6, C2 2800/4000 = 0.7, C3 5800/12000 = 0.483 against t_high 0.5.
  s.clusters = {spec("H", 1, 3900), spec("C1", 2, 2400), spec("C2", 2, 2800), spec("C3", 4, 5800)};
  s.groups = {{"g", {0.45, 0.5}, 1, {"H", "C1", "C2", "C3"}}};
  s.ticks = 1;
  const RunArtifacts r = run(s);
  const auto moves = of_kind(r.events, EventKind::MoveCompleted);
  if (moves.size() != 1) return v.fail("expected 1 MoveCompleted, got " + std::to_string(moves.size())), v;
  const auto& d = moves[0]->detail;
  if (d.at("donor") != "C3") v.fail("donor " + d.at("donor").dump());
  const auto& attempts = d.at("attempts");
  if (attempts.size() != 2) return v.fail("attempts " + attempts.dump()), v;
  if (attempts[0].at("cluster") != "C1" || attempts[1].at("cluster") != "C2") v.fail("order " + attempts.dump());
  for (const auto& a : attempts)
    if (a.at("reason") != "WouldExceedTHigh") v.fail("reason " + a.dump());
  // Ascending-u check from the reversal records.
  const auto revs = of_kind(r.events, EventKind::MoveReversed);
  if (revs.size() != 2 || !(revs[0]->detail.at("donor_u_before").get<double>() <
                            revs[1]->detail.at("donor_u_before").get<double>()))
    v.fail("reversals not in ascending-u order");
  if (v.pass) v.detail = "donor C3 after rejecting C1, C2";
  return v;
}

Verdict restoration_property() {
  Verdict v;
  std::mt19937_64 rng(5150);
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  std::size_t lent_or_borrowed = 0;
  for (int trial = 0; trial < 500; ++trial) {
    World w;
    const auto lo = pick(1, 10), hi = pick(lo + 1, 20);
    create_group(w, "g", {lo / 20.0, hi / 20.0}, 1);
    const int n = static_cast<int>(pick(2, 6));
    for (int i = 0; i < n; ++i) {
      const auto id = "c" + std::to_string(i);
      w.add_cluster(Cluster::create(id, static_cast<int>(pick(1, 8)), kNode4k));
      add_cluster(w, "g", id);
    }
    const auto initial = node_multiset(w);
    const auto cycles = pick(0, 20);
    for (Tick t = 0; t < cycles; ++t) {
      w.tick = t;
      for (auto& [_, c] : w.clusters) {
        const auto cap = static_cast<std::int64_t>(c.nodes.size()) * kNode4k.cpu;
        const auto pods = pick(0, cap * 12 / 10 / kQuantum.cpu);
        apply_target(c, {pods * kQuantum.cpu, pods * kQuantum.memory}, kQuantum);
        place_pending(c);
      }
      for (const auto& r : recipients(rebalance_cycle(w, "g"))) place_pending(w.cluster(r));
    }
    const ClusterId victim = "c" + std::to_string(pick(0, n - 1));
    const Cluster& vc = w.cluster(victim);
    if (vc.node_id_set() != vc.original_node_ids) ++lent_or_borrowed;
    remove_cluster(w, "g", victim);
    if (w.cluster(victim).node_id_set() != w.cluster(victim).original_node_ids)
      v.fail("trial " + std::to_string(trial) + ": node set differs from original");
    for (const auto& [id, c] : w.clusters)
      if (id != victim)
        for (const auto& node : c.nodes)
          if (node.origin == victim) v.fail("trial " + std::to_string(trial) + ": " + id + " kept " + node.id);
    if (node_multiset(w) != initial) v.fail("trial " + std::to_string(trial) + ": node multiset changed");
    if (!check_invariants(w).empty()) v.fail("trial " + std::to_string(trial) + ": " + check_invariants(w)[0]);
  }
  if (lent_or_borrowed == 0) v.fail("no trial exercised a non-trivial restoration");
  if (v.pass) v.detail = "500 trials, " + std::to_string(lent_or_borrowed) + " with nodes displaced before removal";
  return v;
}

Verdict drain_atomicity() {
  Verdict v;
  std::mt19937_64 rng(77);
  auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  std::size_t restored = 0, drained = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    Cluster c = Cluster::create("A", static_cast<int>(pick(2, 6)), {4000, 8192});
    const auto n_pods = pick(0, 30);
    for (int i = 0; i < n_pods; ++i) c.add_pod({pick(1, 30) * 100, pick(1, 24) * 128});
    place_pending(c);
    const NodeId target = c.nodes[static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(c.nodes.size()) - 1))].id;
    const Cluster before = c;
    const DrainOutcome out = drain_node(c, target);
    if (out.restored) {
      ++restored;
      if (!(c == before)) v.fail("trial " + std::to_string(trial) + ": restored drain changed state");
      if (!out.relocated.empty()) v.fail("trial " + std::to_string(trial) + ": restored with relocations");
    } else {
      ++drained;
      for (const auto& p : c.pods)
        if (p.node == target) v.fail("trial " + std::to_string(trial) + ": pod still on drained node");
      for (const auto& n : c.nodes)
        if (!c.node_load(n.id).fits_within(n.capacity)) v.fail("trial " + std::to_string(trial) + ": over capacity");
      if (c.find_node(target)->state != NodeState::Reserved) v.fail("trial " + std::to_string(trial) + ": not Reserved");
      if (c.pending_pod_count() != before.pending_pod_count()) v.fail("trial " + std::to_string(trial) + ": pods lost");
    }
  }
  if (restored == 0 || drained == 0) v.fail("both drain paths must be exercised");
  if (v.pass) v.detail = std::to_string(restored) + " restored, " + std::to_string(drained) + " completed";
  return v;
}

std::size_t file_hash(const fs::path& p) { return std::hash<std::string>{}(read_file(p)); }

Verdict determinism(const std::string& sim) {
  Verdict v;
  if (sim.empty()) return v.fail("nbcg-sim path not given"), v;
  const fs::path base = fs::temp_directory_path() / "nbcg_acceptance_determinism";
  fs::remove_all(base);
  for (const char* run_dir : {"first", "second"}) {
    const std::string cmd = "\"" + sim + "\" run --scenario \"" + scenario_path("diurnal.json") + "\" --out \"" +
                            (base / run_dir).string() + "\"";
    if (std::system(cmd.c_str()) != 0) return v.fail("run failed: " + cmd), v;
  }
  for (const char* f : {kEventsFile, kMetricsFile, kSummaryFile}) {
    if (file_hash(base / "first" / f) != file_hash(base / "second" / f) ||
        read_file(base / "first" / f) != read_file(base / "second" / f))
      v.fail(std::string(f) + " differs");
  }
  if (v.pass) v.detail = "events.jsonl, metrics.csv, summary.json identical";
  return v;
}

Verdict compare_benefit() {
  Verdict v;
  const Scenario s = parse_scenario(read_file(scenario_path("antiphase_spike.json")));
  const Comparison c1 = compare(s);
  const Comparison c2 = compare(s);
  const auto b = c1.report.at("balanced").at("pending_pod_ticks").get<std::int64_t>();
  const auto st = c1.report.at("static").at("pending_pod_ticks").get<std::int64_t>();
  const auto b2 = c2.report.at("balanced").at("pending_pod_ticks").get<std::int64_t>();
  if (st <= 0) v.fail("static pending-pod-ticks is " + std::to_string(st));
  if (!(b < st)) v.fail("balanced " + std::to_string(b) + " not < static " + std::to_string(st));
  if (b != b2) v.fail("balanced count unstable: " + std::to_string(b) + " vs " + std::to_string(b2));
  v.detail = "pending-pod-ticks balanced=" + std::to_string(b) + " static=" + std::to_string(st) +
             (v.pass ? "" : " (" + v.detail + ")");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string sim = argc > 1 ? argv[1] : "";
  int failures = 0;
  auto report = [&](int id, const std::string& name, const Verdict& v, double seconds) {
    std::printf("[%s] %d. %s: %s (%.2fs)\n", v.pass ? "PASS" : "FAIL", id, name.c_str(), v.detail.c_str(), seconds);
    failures += v.pass ? 0 : 1;
  };
  auto timed = [](const std::function<Verdict()>& f, double& seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return v;
  };

  double secs = 0;
  Verdict donor_safety;
  RandomRunStats stats;
  Verdict conservation = timed([&] { return node_conservation_and_donor_safety(donor_safety, stats); }, secs);
  if (conservation.pass)
    conservation.detail = std::to_string(stats.scenarios) + " scenarios, " + std::to_string(stats.ticks) +
                          " ticks, " + std::to_string(stats.moves) + " moves, " + std::to_string(stats.reversals) +
                          " reversals, " + std::to_string(stats.restorations) + " restorations";
  if (donor_safety.pass) donor_safety.detail = std::to_string(stats.moves) + " MoveCompleted events checked";
  report(1, "node conservation", conservation, secs);
  report(2, "move scenario", timed(move_scenario, secs), secs);
  report(3, "reversal scenario", timed(reversal_scenario, secs), secs);
  report(4, "candidate iteration", timed(candidate_iteration, secs), secs);
  report(5, "restoration property", timed(restoration_property, secs), secs);
  report(6, "drain atomicity", timed(drain_atomicity, secs), secs);
  report(7, "determinism", timed([&] { return determinism(sim); }, secs), secs);
  report(8, "compare-mode benefit", timed(compare_benefit, secs), secs);
  report(9, "donor safety", donor_safety, 0.0);
  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
