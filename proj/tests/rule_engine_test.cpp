#include <algorithm>
#include <random>

#include "doctest.h"
#include "nbcg/rule_engine.hpp"
#include "test_support.hpp"

using namespace nbcg;
using namespace nbcg::testing;

namespace {

std::map<ClusterId, Cluster> by_id(std::vector<Cluster> cs) {
  std::map<ClusterId, Cluster> m;
  for (auto& c : cs) m.emplace(c.id, std::move(c));
  return m;
}

ErrorCode code_of(const Thresholds& t) {
  try {
    validate_thresholds(t);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoFailure;  // sentinel: no error
}

}  // namespace

TEST_CASE("validate_thresholds") {
  CHECK_NOTHROW(validate_thresholds({0.3, 0.8}));
  CHECK_NOTHROW(validate_thresholds({0.3, 1.0}));
  CHECK(code_of({0.8, 0.3}) == ErrorCode::InvalidThresholds);
  CHECK(code_of({0.5, 0.5}) == ErrorCode::InvalidThresholds);
  CHECK(code_of({0.0, 0.5}) == ErrorCode::InvalidThresholds);
  CHECK(code_of({0.2, 1.01}) == ErrorCode::InvalidThresholds);
  try {
    validate_thresholds({0.5, 0.5});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("t_low < t_high") != std::string::npos);
  }
}

TEST_CASE("evaluate_group: u = 0.9, 0.3, 0.2 with (0.4, 0.8)") {
  // One 1000m node each so u is demand/1000.
  const Resources cap{1000, 100000};
  auto clusters = by_id({loaded_cluster("c1", 1, 900, cap), loaded_cluster("c2", 1, 300, cap),
                         loaded_cluster("c3", 1, 200, cap)});
  Group g{"g", {"c1", "c2", "c3"}, {0.4, 0.8}, 1};
  const auto ev = evaluate_group(g, clusters, 5);

  // Brute-force oracle: partition and sort directly.
  std::vector<std::pair<double, ClusterId>> hot, cold;
  for (const auto& id : g.members) {
    const double u = oracle_utilization(clusters.at(id));
    if (u > 0.8) hot.emplace_back(-u, id);
    if (u < 0.4) cold.emplace_back(u, id);
  }
  std::sort(hot.begin(), hot.end());
  std::sort(cold.begin(), cold.end());
  REQUIRE(hot.size() == 1);
  REQUIRE(cold.size() == 2);

  CHECK(ev.overutilized == std::vector<ClusterId>{hot[0].second});
  CHECK(ev.overutilized == std::vector<ClusterId>{"c1"});
  CHECK(ev.underutilized == std::vector<ClusterId>{"c3", "c2"});
  CHECK(ev.sampled_at == 5);
}

TEST_CASE("evaluate_group: nothing crosses") {
  const Resources cap{1000, 100000};
  auto clusters = by_id({loaded_cluster("a", 1, 500, cap), loaded_cluster("b", 1, 500, cap)});
  const auto ev = evaluate_group({"g", {"a", "b"}, {0.3, 0.8}, 1}, clusters);
  CHECK(ev.overutilized.empty());
  CHECK(ev.underutilized.empty());
}

TEST_CASE("evaluate_group: single hot member") {
  const Resources cap{1000, 100000};
  auto clusters = by_id({loaded_cluster("a", 1, 950, cap)});
  const auto ev = evaluate_group({"g", {"a"}, {0.3, 0.8}, 1}, clusters);
  CHECK(ev.overutilized == std::vector<ClusterId>{"a"});
  CHECK(ev.underutilized.empty());
}

TEST_CASE("evaluate_group: boundaries are strict") {
  const Resources cap{1000, 100000};
  auto clusters = by_id({loaded_cluster("a", 1, 800, cap), loaded_cluster("b", 1, 300, cap)});
  const auto ev = evaluate_group({"g", {"a", "b"}, {0.3, 0.8}, 1}, clusters);
  CHECK(ev.overutilized.empty());
  CHECK(ev.underutilized.empty());
}

TEST_CASE("evaluate_group: ties break on cluster id and ZeroCapacity propagates") {
  const Resources cap{1000, 100000};
  auto clusters = by_id({loaded_cluster("z", 1, 100, cap), loaded_cluster("m", 1, 100, cap),
                         loaded_cluster("y", 1, 900, cap), loaded_cluster("b", 1, 900, cap)});
  const auto ev = evaluate_group({"g", {"z", "y", "m", "b"}, {0.3, 0.8}, 1}, clusters);
  CHECK(ev.underutilized == std::vector<ClusterId>{"m", "z"});
  CHECK(ev.overutilized == std::vector<ClusterId>{"b", "y"});

  clusters.at("z").nodes[0].state = NodeState::Reserved;
  CHECK_THROWS_AS(evaluate_group({"g", {"z"}, {0.3, 0.8}, 1}, clusters), Error);
}

TEST_CASE("property: monotone in thresholds, order-invariant, disjoint") {
  std::mt19937_64 rng(3);
  const Resources cap{1000, 100000};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Cluster> cs;
    std::vector<ClusterId> ids;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      ids.push_back("c" + std::to_string(i));
      cs.push_back(loaded_cluster(ids.back(), 1, 100 * static_cast<std::int64_t>(rng() % 11), cap));
    }
    auto clusters = by_id(cs);
    const double lo = 0.05 + 0.05 * static_cast<double>(rng() % 8);
    const double hi = lo + 0.05 + 0.05 * static_cast<double>(rng() % 8);
    if (hi > 1.0) continue;
    Group g{"g", ids, {lo, hi}, 1};
    const auto ev = evaluate_group(g, clusters);
    for (const auto& h : ev.overutilized)
      CHECK(std::find(ev.underutilized.begin(), ev.underutilized.end(), h) == ev.underutilized.end());

    Group raised = g;
    raised.thresholds.t_high = std::min(1.0, hi + 0.1);
    CHECK(evaluate_group(raised, clusters).overutilized.size() <= ev.overutilized.size());
    Group lowered = g;
    lowered.thresholds.t_low = std::max(0.01, lo - 0.04);
    CHECK(evaluate_group(lowered, clusters).underutilized.size() <= ev.underutilized.size());

    Group shuffled = g;
    std::shuffle(shuffled.members.begin(), shuffled.members.end(), rng);
    const auto ev2 = evaluate_group(shuffled, clusters);
    CHECK(ev2.overutilized == ev.overutilized);
    CHECK(ev2.underutilized == ev.underutilized);
  }
}
