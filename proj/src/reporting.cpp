#include "nbcg/reporting.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace nbcg {

using nlohmann::ordered_json;

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double round6(double v) { return std::stod(fixed6(v)); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string write_events(const std::vector<RebalanceEvent>& events) {
  std::string out;
  for (const auto& e : events) {
    ordered_json j;
    j["tick"] = e.tick;
    j["sequence"] = e.sequence;
    j["kind"] = std::string(to_string(e.kind));
    if (e.cluster) j["cluster"] = *e.cluster;
    if (e.group) j["group"] = *e.group;
    if (e.node) j["node"] = *e.node;
    j["detail"] = e.detail;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<RebalanceEvent> parse_events(const std::string& jsonl) {
  std::vector<RebalanceEvent> events;
  std::istringstream in(jsonl);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fail = [&](const std::string& why) {
      return Error(ErrorCode::IoFailure, "events line " + std::to_string(lineno) + ": " + why);
    };
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      throw fail(ex.what());
    }
    if (!j.is_object() || !j.contains("tick") || !j.contains("sequence") || !j.contains("kind"))
      throw fail("missing tick/sequence/kind");
    RebalanceEvent e;
    e.tick = j.at("tick").get<Tick>();
    e.sequence = j.at("sequence").get<std::int64_t>();
    const auto kind = parse_event_kind(j.at("kind").get<std::string>());
    if (!kind) throw fail("unknown kind " + j.at("kind").dump());
    e.kind = *kind;
    if (j.contains("cluster")) e.cluster = j.at("cluster").get<std::string>();
    if (j.contains("group")) e.group = j.at("group").get<std::string>();
    if (j.contains("node")) e.node = j.at("node").get<std::string>();
    if (j.contains("detail")) e.detail = j.at("detail");
    events.push_back(std::move(e));
  }
  return events;
}

std::string write_metrics(std::vector<TickRecord> records) {
  std::stable_sort(records.begin(), records.end(), [](const TickRecord& a, const TickRecord& b) {
    return a.tick != b.tick ? a.tick < b.tick : a.cluster < b.cluster;
  });
  std::string out = kMetricsHeader;
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.tick) + ',' + r.cluster + ',' + fixed6(r.u_cpu) + ',' + fixed6(r.u_mem) + ',' +
           fixed6(r.u) + ',' + std::to_string(r.active_nodes) + ',' + std::to_string(r.pending_pods) + ',' +
           std::to_string(r.pending_demand.cpu) + ',' + std::to_string(r.pending_demand.memory) + '\n';
  }
  return out;
}

std::vector<TickRecord> parse_metrics(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader)
    throw Error(ErrorCode::IoFailure, "metrics: unexpected header");
  std::vector<TickRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) throw Error(ErrorCode::IoFailure, "metrics line " + std::to_string(lineno) + ": 9 fields expected");
    try {
      TickRecord r;
      r.tick = std::stoll(f[0]);
      r.cluster = f[1];
      r.u_cpu = std::stod(f[2]);
      r.u_mem = std::stod(f[3]);
      r.u = std::stod(f[4]);
      r.active_nodes = std::stoi(f[5]);
      r.pending_pods = std::stoi(f[6]);
      r.pending_demand = {std::stoll(f[7]), std::stoll(f[8])};
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::IoFailure, "metrics line " + std::to_string(lineno) + ": malformed number");
    }
  }
  return out;
}

ordered_json summarize(const std::vector<RebalanceEvent>& events, const std::vector<TickRecord>& records) {
  std::int64_t moves = 0, reversals = 0, no_candidates = 0, restorations = 0;
  for (const auto& e : events) {
    switch (e.kind) {
      case EventKind::MoveCompleted: ++moves; break;
      case EventKind::MoveReversed: ++reversals; break;
      case EventKind::NoCandidate: ++no_candidates; break;
      case EventKind::RestorationCompleted: ++restorations; break;
      default: break;
    }
  }
  struct Extrema {
    double peak_u = 0;
    int min_nodes = 0;
    int max_nodes = 0;
    std::int64_t pending_pod_ticks = 0;
    bool seen = false;
  };
  std::map<ClusterId, Extrema> per_cluster;
  std::int64_t pending_pod_ticks = 0;
  std::map<Tick, bool> ticks;
  for (const auto& r : records) {
    ticks[r.tick] = true;
    pending_pod_ticks += r.pending_pods;
    auto& x = per_cluster[r.cluster];
    const double u = round6(r.u);
    if (!x.seen) {
      x = {u, r.active_nodes, r.active_nodes, 0, true};
    } else {
      x.peak_u = std::max(x.peak_u, u);
      x.min_nodes = std::min(x.min_nodes, r.active_nodes);
      x.max_nodes = std::max(x.max_nodes, r.active_nodes);
    }
    x.pending_pod_ticks += r.pending_pods;
  }

  ordered_json s;
  s["ticks"] = ticks.size();
  s["moves"] = moves;
  s["reversals"] = reversals;
  s["no_candidates"] = no_candidates;
  s["restorations"] = restorations;
  s["pending_pod_ticks"] = pending_pod_ticks;
  ordered_json clusters = ordered_json::object();
  for (const auto& [id, x] : per_cluster) {
    ordered_json c;
    c["peak_u"] = x.peak_u;
    c["min_active_nodes"] = x.min_nodes;
    c["max_active_nodes"] = x.max_nodes;
    c["pending_pod_ticks"] = x.pending_pod_ticks;
    clusters[id] = std::move(c);
  }
  s["clusters"] = std::move(clusters);
  return s;
}

std::vector<std::string> validate_event_log(const std::vector<RebalanceEvent>& events) {
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].sequence != static_cast<std::int64_t>(i)) {
      problems.push_back("sequence gap: line " + std::to_string(i + 1) + " has sequence " +
                         std::to_string(events[i].sequence) + ", expected " + std::to_string(i));
      break;
    }
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& move = events[i];
    if (move.kind != EventKind::MoveCompleted) continue;
    const std::string label = "MoveCompleted seq " + std::to_string(move.sequence);
    if (!move.node) {
      problems.push_back(label + " has no node");
      continue;
    }
    // Walk backwards over this node's events within the tick.
    const EventKind chain[] = {EventKind::NodeProvisioned, EventKind::NodeDeprovisioned, EventKind::DrainStarted};
    std::size_t want = 0;
    for (std::size_t j = i; j-- > 0 && want < 3;) {
      const auto& e = events[j];
      if (e.tick != move.tick) break;
      if (e.node != move.node) continue;
      if (e.kind != chain[want]) break;
      ++want;
    }
    if (want < 3)
      problems.push_back(label + " for node " + *move.node + " is missing its preceding " +
                         std::string(to_string(chain[want])));
  }
  return problems;
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out << contents;
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

}  // namespace nbcg
