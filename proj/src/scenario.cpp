#include "nbcg/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "nbcg/rule_engine.hpp"

namespace nbcg {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ScenarioInvalid, (where.empty() ? std::string("scenario") : where) + ": " + what);
}

// Cursor over one JSON object that checks keys against an allow-list.
class Obj {
 public:
  Obj(const json& j, std::string path, std::initializer_list<const char*> required,
      std::initializer_list<const char*> optional = {})
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) invalid(path_, "expected an object");
    std::set<std::string> allowed;
    for (const char* k : required) {
      allowed.insert(k);
      if (!j_.contains(k)) invalid(at(k), "missing required key");
    }
    for (const char* k : optional) allowed.insert(k);
    for (const auto& [k, _] : j_.items())
      if (allowed.count(k) == 0) invalid(at(k), "unknown key");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const char* key) const { return j_.contains(key); }
  const json& raw(const char* key) const { return j_.at(key); }

  std::int64_t integer(const char* key) const {
    const json& v = j_.at(key);
    if (!v.is_number_integer()) invalid(at(key), "expected an integer");
    return v.get<std::int64_t>();
  }
  std::uint64_t unsigned_integer(const char* key) const {
    const json& v = j_.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      invalid(at(key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }
  double number(const char* key) const {
    const json& v = j_.at(key);
    if (!v.is_number()) invalid(at(key), "expected a number");
    return v.get<double>();
  }
  std::string string(const char* key) const {
    const json& v = j_.at(key);
    if (!v.is_string()) invalid(at(key), "expected a string");
    return v.get<std::string>();
  }
  const json& array(const char* key) const {
    const json& v = j_.at(key);
    if (!v.is_array()) invalid(at(key), "expected an array");
    return v;
  }

 private:
  const json& j_;
  std::string path_;
};

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

Resources parse_resources(const json& j, const std::string& path) {
  Obj o(j, path, {"cpu_millicores", "memory_mib"});
  return {o.integer("cpu_millicores"), o.integer("memory_mib")};
}

std::vector<std::int64_t> int_array(const json& arr, const std::string& path) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number_integer()) invalid(index_path(path, i), "expected an integer");
    out.push_back(arr[i].get<std::int64_t>());
  }
  return out;
}

TraceSpec parse_trace(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    invalid(path + ".kind", "expected a string naming Constant, Step, Sine or Spike");
  const std::string kind = j.at("kind").get<std::string>();
  TraceSpec t;
  auto quantum = [&](const Obj& o) {
    if (o.has("pod_quantum")) t.pod_quantum = parse_resources(o.raw("pod_quantum"), o.at("pod_quantum"));
  };
  if (kind == "Constant") {
    Obj o(j, path, {"kind", "level"}, {"pod_quantum"});
    t.shape = ConstantTrace{o.integer("level")};
    quantum(o);
  } else if (kind == "Step") {
    Obj o(j, path, {"kind", "levels", "switch_ticks"}, {"pod_quantum"});
    StepTrace s;
    s.levels = int_array(o.array("levels"), o.at("levels"));
    s.switch_ticks = int_array(o.array("switch_ticks"), o.at("switch_ticks"));
    t.shape = std::move(s);
    quantum(o);
  } else if (kind == "Sine") {
    Obj o(j, path, {"kind", "base", "amplitude", "period", "phase"}, {"pod_quantum"});
    t.shape = SineTrace{o.number("base"), o.number("amplitude"), o.number("period"), o.number("phase")};
    quantum(o);
  } else if (kind == "Spike") {
    Obj o(j, path, {"kind", "base", "peak", "start", "duration"}, {"pod_quantum"});
    t.shape = SpikeTrace{o.integer("base"), o.integer("peak"), o.integer("start"), o.integer("duration")};
    quantum(o);
  } else {
    invalid(path + ".kind", "unknown trace kind '" + kind + "'");
  }
  return t;
}

void validate_trace(const TraceSpec& t, const std::string& path) {
  if (t.pod_quantum.cpu <= 0 || t.pod_quantum.memory <= 0)
    invalid(path + ".pod_quantum", "components must be strictly positive");
  if (const auto* c = std::get_if<ConstantTrace>(&t.shape)) {
    if (c->level < 0) invalid(path + ".level", "must be non-negative");
  } else if (const auto* s = std::get_if<StepTrace>(&t.shape)) {
    if (s->levels.size() != s->switch_ticks.size() + 1)
      invalid(path + ".levels", "must have exactly one more entry than switch_ticks");
    for (std::size_t i = 0; i < s->levels.size(); ++i)
      if (s->levels[i] < 0) invalid(index_path(path + ".levels", i), "must be non-negative");
    for (std::size_t i = 1; i < s->switch_ticks.size(); ++i)
      if (s->switch_ticks[i] <= s->switch_ticks[i - 1])
        invalid(index_path(path + ".switch_ticks", i), "must be strictly ascending");
  } else if (const auto* sn = std::get_if<SineTrace>(&t.shape)) {
    if (!(sn->period > 0)) invalid(path + ".period", "must be positive");
    if (!std::isfinite(sn->base) || !std::isfinite(sn->amplitude) || !std::isfinite(sn->phase))
      invalid(path, "parameters must be finite");
  } else if (const auto* sp = std::get_if<SpikeTrace>(&t.shape)) {
    if (sp->base < 0) invalid(path + ".base", "must be non-negative");
    if (sp->peak < 0) invalid(path + ".peak", "must be non-negative");
    if (sp->duration < 0) invalid(path + ".duration", "must be non-negative");
  }
}

ordered_json resources_json(const Resources& r) {
  return ordered_json{{"cpu_millicores", r.cpu}, {"memory_mib", r.memory}};
}

ordered_json trace_json(const TraceSpec& t) {
  ordered_json j;
  if (const auto* c = std::get_if<ConstantTrace>(&t.shape)) {
    j["kind"] = "Constant";
    j["level"] = c->level;
  } else if (const auto* s = std::get_if<StepTrace>(&t.shape)) {
    j["kind"] = "Step";
    j["levels"] = s->levels;
    j["switch_ticks"] = s->switch_ticks;
  } else if (const auto* sn = std::get_if<SineTrace>(&t.shape)) {
    j["kind"] = "Sine";
    j["base"] = sn->base;
    j["amplitude"] = sn->amplitude;
    j["period"] = sn->period;
    j["phase"] = sn->phase;
  } else if (const auto* sp = std::get_if<SpikeTrace>(&t.shape)) {
    j["kind"] = "Spike";
    j["base"] = sp->base;
    j["peak"] = sp->peak;
    j["start"] = sp->start;
    j["duration"] = sp->duration;
  }
  j["pod_quantum"] = resources_json(t.pod_quantum);
  return j;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    invalid("", std::string("not valid JSON: ") + e.what());
  }
  Obj top(root, "", {"clusters", "groups", "membership_changes", "ticks", "seed"});
  Scenario s;

  const json& clusters = top.array("clusters");
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const std::string path = index_path("clusters", i);
    Obj o(clusters[i], path, {"id", "node_count", "node_capacity", "trace"});
    ClusterSpec c;
    c.id = o.string("id");
    const auto count = o.integer("node_count");
    if (count < 1 || count > kMaxNodesPerCluster)
      invalid(o.at("node_count"), "must be between 1 and " + std::to_string(kMaxNodesPerCluster));
    c.node_count = static_cast<int>(count);
    c.node_capacity = parse_resources(o.raw("node_capacity"), o.at("node_capacity"));
    c.trace = parse_trace(o.raw("trace"), o.at("trace"));
    s.clusters.push_back(std::move(c));
  }

  const json& groups = top.array("groups");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::string path = index_path("groups", i);
    Obj o(groups[i], path, {"id", "thresholds", "balance_interval", "members"});
    GroupSpec g;
    g.id = o.string("id");
    Obj t(o.raw("thresholds"), o.at("thresholds"), {"t_low", "t_high"});
    g.thresholds = {t.number("t_low"), t.number("t_high")};
    const auto interval = o.integer("balance_interval");
    if (interval < 1 || interval > INT32_MAX) invalid(o.at("balance_interval"), "must be a positive integer");
    g.balance_interval = static_cast<int>(interval);
    const json& members = o.array("members");
    for (std::size_t m = 0; m < members.size(); ++m) {
      if (!members[m].is_string()) invalid(index_path(o.at("members"), m), "expected a cluster id string");
      g.members.push_back(members[m].get<std::string>());
    }
    s.groups.push_back(std::move(g));
  }

  const json& changes = top.array("membership_changes");
  for (std::size_t i = 0; i < changes.size(); ++i) {
    Obj o(changes[i], index_path("membership_changes", i), {"tick", "action", "cluster", "group"});
    MembershipChange mc;
    mc.tick = o.integer("tick");
    const std::string action = o.string("action");
    if (action == "Add")
      mc.action = MembershipAction::Add;
    else if (action == "Remove")
      mc.action = MembershipAction::Remove;
    else
      invalid(o.at("action"), "must be Add or Remove");
    mc.cluster = o.string("cluster");
    mc.group = o.string("group");
    s.membership_changes.push_back(std::move(mc));
  }

  s.ticks = top.integer("ticks");
  s.seed = top.unsigned_integer("seed");
  validate_scenario(s);
  return s;
}

void validate_scenario(const Scenario& s) {
  if (s.ticks < 1) invalid("ticks", "must be positive");
  if (s.clusters.empty()) invalid("clusters", "at least one cluster is required");

  std::set<ClusterId> cluster_ids;
  for (std::size_t i = 0; i < s.clusters.size(); ++i) {
    const auto& c = s.clusters[i];
    const std::string path = index_path("clusters", i);
    if (c.id.empty()) invalid(path + ".id", "must be non-empty");
    if (!cluster_ids.insert(c.id).second) invalid(path + ".id", "duplicate cluster id '" + c.id + "'");
    if (c.node_count < 1 || c.node_count > kMaxNodesPerCluster)
      invalid(path + ".node_count", "must be between 1 and " + std::to_string(kMaxNodesPerCluster));
    if (c.node_capacity.cpu <= 0 || c.node_capacity.memory <= 0)
      invalid(path + ".node_capacity", "components must be strictly positive");
    validate_trace(c.trace, path + ".trace");
  }

  std::set<GroupId> group_ids;
  std::map<ClusterId, GroupId> membership;
  for (std::size_t i = 0; i < s.groups.size(); ++i) {
    const auto& g = s.groups[i];
    const std::string path = index_path("groups", i);
    if (g.id.empty()) invalid(path + ".id", "must be non-empty");
    if (!group_ids.insert(g.id).second) invalid(path + ".id", "duplicate group id '" + g.id + "'");
    try {
      validate_thresholds(g.thresholds);
    } catch (const Error& e) {
      invalid(path + ".thresholds", e.what());
    }
    if (g.balance_interval < 1) invalid(path + ".balance_interval", "must be positive");
    for (std::size_t m = 0; m < g.members.size(); ++m) {
      const auto& cid = g.members[m];
      const std::string mpath = index_path(path + ".members", m);
      if (cluster_ids.count(cid) == 0) invalid(mpath, "unknown cluster id '" + cid + "'");
      auto [it, fresh] = membership.emplace(cid, g.id);
      if (!fresh) invalid(mpath, "cluster '" + cid + "' is already a member of group '" + it->second + "'");
    }
  }

  // Replay membership changes in tick order against the initial membership.
  std::vector<std::size_t> order(s.membership_changes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s.membership_changes[a].tick < s.membership_changes[b].tick;
  });
  for (std::size_t i : order) {
    const auto& mc = s.membership_changes[i];
    const std::string path = index_path("membership_changes", i);
    if (mc.tick < 0 || mc.tick >= s.ticks) invalid(path + ".tick", "must be in [0, ticks)");
    if (cluster_ids.count(mc.cluster) == 0) invalid(path + ".cluster", "unknown cluster id '" + mc.cluster + "'");
    if (group_ids.count(mc.group) == 0) invalid(path + ".group", "unknown group id '" + mc.group + "'");
    auto it = membership.find(mc.cluster);
    if (mc.action == MembershipAction::Add) {
      if (it != membership.end())
        invalid(path, "cluster '" + mc.cluster + "' is already a member of group '" + it->second + "'");
      membership.emplace(mc.cluster, mc.group);
    } else {
      if (it == membership.end() || it->second != mc.group)
        invalid(path, "cluster '" + mc.cluster + "' is not a member of group '" + mc.group + "'");
      membership.erase(it);
    }
  }
}

ordered_json to_json(const Scenario& s) {
  ordered_json j;
  j["clusters"] = ordered_json::array();
  for (const auto& c : s.clusters) {
    j["clusters"].push_back({{"id", c.id},
                             {"node_count", c.node_count},
                             {"node_capacity", resources_json(c.node_capacity)},
                             {"trace", trace_json(c.trace)}});
  }
  j["groups"] = ordered_json::array();
  for (const auto& g : s.groups) {
    j["groups"].push_back({{"id", g.id},
                           {"thresholds", {{"t_low", g.thresholds.t_low}, {"t_high", g.thresholds.t_high}}},
                           {"balance_interval", g.balance_interval},
                           {"members", g.members}});
  }
  j["membership_changes"] = ordered_json::array();
  for (const auto& mc : s.membership_changes) {
    j["membership_changes"].push_back({{"tick", mc.tick},
                                       {"action", mc.action == MembershipAction::Add ? "Add" : "Remove"},
                                       {"cluster", mc.cluster},
                                       {"group", mc.group}});
  }
  j["ticks"] = s.ticks;
  j["seed"] = s.seed;
  return j;
}

}  // namespace nbcg
