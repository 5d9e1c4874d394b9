// nbcg-sim: run, validate, compare and re-report node balancing scenarios.
//
// Exit codes: 0 success, 1 scenario error or log violation, 2 runtime failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nbcg/reporting.hpp"
#include "nbcg/scenario.hpp"
#include "nbcg/simulator.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kScenarioError = 1;
constexpr int kRuntimeFailure = 2;

struct Options {
  std::string scenario_path;
  std::string out_dir;
  std::optional<std::int64_t> ticks;
  std::optional<std::uint64_t> seed;
};

nbcg::Scenario load_scenario(const Options& opt) {
  std::string text;
  try {
    text = nbcg::read_file(opt.scenario_path);
  } catch (const nbcg::Error& e) {
    throw nbcg::Error(nbcg::ErrorCode::ScenarioInvalid, e.what());
  }
  nbcg::Scenario s = nbcg::parse_scenario(text);
  if (opt.ticks) s.ticks = *opt.ticks;
  if (opt.seed) s.seed = *opt.seed;
  nbcg::validate_scenario(s);
  return s;
}

// Runs `body`, mapping library failures onto the exit-code contract.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const nbcg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == nbcg::ErrorCode::ScenarioInvalid ? kScenarioError : kRuntimeFailure;
  } catch (const nbcg::RunFailure& e) {
    std::cerr << "run failed: " << e.what() << '\n';
    return kRuntimeFailure;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

int cmd_validate(const Options& opt) {
  return guarded([&] {
    const auto s = load_scenario(opt);
    std::cout << "ok: " << s.clusters.size() << " clusters, " << s.groups.size() << " groups, " << s.ticks
              << " ticks\n";
    return kOk;
  });
}

int cmd_run(const Options& opt) {
  return guarded([&] {
    const auto s = load_scenario(opt);
    const auto artifacts = nbcg::run(s);
    nbcg::write_run(opt.out_dir, artifacts);
    return kOk;
  });
}

int cmd_compare(const Options& opt) {
  return guarded([&] {
    const auto s = load_scenario(opt);
    const auto cmp = nbcg::compare(s);
    const fs::path out(opt.out_dir);
    nbcg::write_run(out / "balanced", cmp.balanced);
    nbcg::write_run(out / "static", cmp.static_run);
    nbcg::write_file(out / nbcg::kSummaryFile, nbcg::dump_json(cmp.report));
    const auto& d = cmp.report.at("delta");
    std::cout << "pending_pod_ticks balanced=" << cmp.report.at("balanced").at("pending_pod_ticks")
              << " static=" << cmp.report.at("static").at("pending_pod_ticks")
              << " delta=" << d.at("pending_pod_ticks") << '\n';
    return kOk;
  });
}

int cmd_report(const Options& opt) {
  const fs::path out(opt.out_dir);
  std::string events_text, metrics_text;
  try {
    events_text = nbcg::read_file(out / nbcg::kEventsFile);
    metrics_text = nbcg::read_file(out / nbcg::kMetricsFile);
  } catch (const nbcg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  std::vector<nbcg::RebalanceEvent> events;
  std::vector<nbcg::TickRecord> records;
  try {
    events = nbcg::parse_events(events_text);
    records = nbcg::parse_metrics(metrics_text);
  } catch (const nbcg::Error& e) {
    std::cerr << "invalid log: " << e.what() << '\n';
    return kScenarioError;
  }
  const auto problems = nbcg::validate_event_log(events);
  for (const auto& p : problems) std::cerr << "violation: " << p << '\n';
  if (!problems.empty()) return kScenarioError;
  return guarded([&] {
    nbcg::write_file(out / nbcg::kSummaryFile, nbcg::dump_json(nbcg::summarize(events, records)));
    return kOk;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Node balancing cluster group simulator"};
  app.require_subcommand(1);
  Options opt;

  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("--ticks", opt.ticks, "Override the scenario tick count");
    sub->add_option("--seed", opt.seed, "Override the scenario seed");
  };

  auto* run = app.add_subcommand("run", "Run a scenario and write events, metrics and summary");
  run->add_option("--scenario", opt.scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", opt.out_dir, "Output directory")->required();
  add_overrides(run);

  auto* validate = app.add_subcommand("validate", "Check a scenario without running it");
  validate->add_option("--scenario", opt.scenario_path, "Scenario JSON file")->required();
  add_overrides(validate);

  auto* compare = app.add_subcommand("compare", "Run balanced and static allocation side by side");
  compare->add_option("--scenario", opt.scenario_path, "Scenario JSON file")->required();
  compare->add_option("--out", opt.out_dir, "Output directory")->required();
  add_overrides(compare);

  auto* report = app.add_subcommand("report", "Rebuild summary.json from a run directory and check the event log");
  report->add_option("--out", opt.out_dir, "Run output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kScenarioError;
  }

  if (*run) return cmd_run(opt);
  if (*validate) return cmd_validate(opt);
  if (*compare) return cmd_compare(opt);
  return cmd_report(opt);
}
