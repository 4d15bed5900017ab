// Command-line front end: single runs, parameter sweeps over sides /
// protocols / adversaries / seeds, and trace replay with the full checker
// pipeline. Exit codes: 0 pass, 1 check failure, 2 usage/config error.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <future>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "griddisp/config.hpp"
#include "griddisp/constants.hpp"
#include "json.hpp"

namespace gd = griddisp;

namespace {

int cmd_run(const std::string& config_path) {
  gd::RunConfig cfg = gd::RunConfig::from_file(config_path);
  gd::RunOutcome out = gd::run_configured(cfg);

  if (!cfg.result_path.empty()) {
    std::ofstream rf(cfg.result_path);
    rf << out.result.to_json() << '\n';
  }
  if (!cfg.trace_path.empty()) {
    std::ofstream tf(cfg.trace_path);
    out.trace.write_jsonl(tf);
  }
  if (!cfg.csv_path.empty()) {
    const bool fresh = !std::ifstream(cfg.csv_path).good();
    std::ofstream cf(cfg.csv_path, std::ios::app);
    if (fresh) cf << gd::csv_header() << '\n';
    const std::string seed =
        cfg.placement ? "explicit"
                      : "p" + std::to_string(cfg.placement_seed.value_or(0)) + "g" +
                            std::to_string(cfg.grid.port_seed);
    cf << gd::csv_row(cfg, out, seed) << '\n';
  }
  std::cout << out.report.to_json() << '\n';
  if (!out.result.completed) {
    std::cerr << "round budget exhausted before termination\n";
    return 1;
  }
  return out.report.pass() ? 0 : 1;
}

struct SweepCell {
  gd::RunConfig cfg;
  std::string seed_label;
};

int cmd_sweep(const std::string& spec_path, const std::string& out_path, int jobs) {
  std::ifstream in(spec_path);
  if (!in) throw gd::ConfigError("sweep: cannot open " + spec_path);
  nlohmann::json j;
  in >> j;

  std::vector<gd::GridSpec> grids;
  const std::string orientation_any = j.value("orientation", "");
  auto add_grid = [&](gd::GridSpec base) { grids.push_back(base); };
  for (const auto& s : j.value("sides", nlohmann::json::array())) {
    add_grid(gd::GridSpec::square(s.get<int>(), gd::Orientation::Unoriented));
  }
  for (const auto& r : j.value("rects", nlohmann::json::array())) {
    add_grid(gd::GridSpec::rectangle(r.at(0).get<int>(), r.at(1).get<int>(),
                                     gd::Orientation::Unoriented));
  }
  std::vector<std::string> protocols;
  for (const auto& p : j.value("protocols", nlohmann::json::array())) {
    protocols.push_back(p.get<std::string>());
  }
  std::vector<std::string> adversaries;
  if (j.contains("adversaries")) {
    for (const auto& a : j.at("adversaries")) adversaries.push_back(a.dump());
  } else {
    adversaries.push_back(R"({"policy":"none"})");
  }
  std::vector<uint64_t> placement_seeds;
  for (const auto& s : j.value("placement_seeds", nlohmann::json::array({0}))) {
    placement_seeds.push_back(s.get<uint64_t>());
  }
  std::vector<uint64_t> port_seeds;
  for (const auto& s : j.value("port_seeds", nlohmann::json::array({0}))) {
    port_seeds.push_back(s.get<uint64_t>());
  }
  std::vector<std::string> ks;
  for (const auto& kspec : j.value("ks", nlohmann::json::array({"full"}))) {
    ks.push_back(kspec.is_string() ? kspec.get<std::string>() : std::to_string(kspec.get<int>()));
  }

  std::vector<SweepCell> cells;
  for (auto grid : grids) {
    for (const auto& protocol : protocols) {
      grid.orientation =
          protocol == "alg1" ? gd::Orientation::Oriented : gd::Orientation::Unoriented;
      for (const auto& adv : adversaries) {
        const std::string policy = nlohmann::json::parse(adv).value("policy", "none");
        if (protocol == "alg2" && policy != "none") continue;  // incompatible cell
        for (uint64_t ps : port_seeds) {
          grid.port_seed = ps;
          for (uint64_t pls : placement_seeds) {
            for (const auto& kspec : ks) {
              const int64_t n = grid.node_count();
              int k = 0;
              if (kspec == "full") {
                k = int(n);
              } else if (kspec == "half") {
                k = std::max<int>(1, int(n / 2));
              } else {
                k = std::stoi(kspec);
              }
              if (k < 1 || int64_t(k) > n) continue;
              gd::RunConfig cfg;
              cfg.grid = grid;
              cfg.k = k;
              cfg.placement_seed = pls;
              cfg.protocol = protocol;
              cfg.adversary_json = adv;
              cells.push_back({cfg, "p" + std::to_string(pls) + "g" + std::to_string(ps)});
            }
          }
        }
      }
    }
  }

  std::vector<std::string> rows(cells.size());
  std::atomic<size_t> next{0};
  std::atomic<bool> all_pass{true};
  const int nthreads = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        gd::RunOutcome out = gd::run_configured(cells[i].cfg);
        if (!out.report.pass() || !out.result.completed) all_pass = false;
        rows[i] = gd::csv_row(cells[i].cfg, out, cells[i].seed_label);
      }
    });
  }
  for (auto& th : pool) th.join();

  std::sort(rows.begin(), rows.end());
  std::ostream* os = &std::cout;
  std::ofstream of;
  if (!out_path.empty()) {
    of.open(out_path);
    os = &of;
  }
  *os << gd::csv_header() << '\n';
  for (const auto& r : rows) *os << r << '\n';
  return all_pass ? 0 : 1;
}

int cmd_replay(const std::string& config_path) {
  gd::RunConfig cfg = gd::RunConfig::from_file(config_path);
  if (cfg.trace_path.empty() || cfg.result_path.empty()) {
    throw gd::ConfigError("replay: config must name trace and result outputs");
  }
  std::ifstream tf(cfg.trace_path);
  if (!tf) throw gd::ConfigError("replay: cannot open " + cfg.trace_path);
  const gd::RoundTrace trace = gd::RoundTrace::read_jsonl(tf);

  std::ifstream rf(cfg.result_path);
  if (!rf) throw gd::ConfigError("replay: cannot open " + cfg.result_path);
  nlohmann::json stored;
  rf >> stored;
  const std::string stored_digest = stored.value("trace_digest", "");
  char digest[20];
  std::snprintf(digest, sizeof digest, "%016llx",
                static_cast<unsigned long long>(trace.digest()));
  if (stored_digest != digest) {
    std::cerr << "digest mismatch: stored " << stored_digest << ", trace " << digest << '\n';
    return 1;
  }

  const gd::Grid grid(cfg.grid);
  const gd::Placement placement =
      cfg.placement ? *cfg.placement
                    : gd::placement_from_seed(grid, cfg.k, cfg.placement_seed.value_or(0));
  gd::SimulationResult result;
  result.rounds_used = stored.value("rounds_used", gd::Round{0});
  result.peak_memory_bits_max = stored.value("peak_memory_bits_max", 0);
  result.crash_count = stored.value("crashes", 0);
  result.dispersed = stored.value("dispersed", false);
  result.completed = stored.value("completed", false);
  const gd::CheckReport rep =
      gd::check_run(grid, placement, cfg.grid, cfg.k, cfg.protocol, result, trace);
  std::cout << rep.to_json() << '\n';
  return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic simulator and verification harness for mobile-robot dispersion "
               "on port-labeled grids"};
  app.require_subcommand(1);

  std::string config_path;
  std::string sweep_out;
  int jobs = int(std::thread::hardware_concurrency());

  auto* run = app.add_subcommand("run", "Run one configured simulation and check it");
  run->add_option("--config", config_path, "Run config JSON")->required();

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and emit CSV");
  sweep->add_option("--config", config_path, "Sweep spec JSON")->required();
  sweep->add_option("--out", sweep_out, "CSV output path (default stdout)");
  sweep->add_option("--jobs", jobs, "Worker threads");

  auto* replay = app.add_subcommand("replay", "Re-check a stored trace against its result");
  replay->add_option("--config", config_path, "Run config JSON naming trace/result")->required();

  auto* consts = app.add_subcommand("constants", "Print the schedule constants table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path);
    if (sweep->parsed()) return cmd_sweep(config_path, sweep_out, jobs);
    if (replay->parsed()) return cmd_replay(config_path);
    if (consts->parsed()) {
      std::cout << gd::constants_table_markdown();
      return 0;
    }
  } catch (const gd::ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 2;
}
