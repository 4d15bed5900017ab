#include "griddisp/config.hpp"

#include <fstream>
#include <sstream>

#include "griddisp/alg1.hpp"
#include "griddisp/alg2.hpp"
#include "griddisp/alg3.hpp"
#include "griddisp/constants.hpp"
#include "json.hpp"

namespace griddisp {

RunConfig RunConfig::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& ex) {
    throw ConfigError(std::string("config: invalid JSON: ") + ex.what());
  }
  RunConfig cfg;
  cfg.grid = GridSpec::from_json(j.at("grid").dump());
  const auto& robots = j.at("robots");
  cfg.k = robots.at("k").get<int>();
  if (robots.contains("placement")) {
    Placement p;
    for (const auto& v : robots.at("placement")) p.push_back(v.get<NodeId>());
    cfg.placement = std::move(p);
  } else {
    cfg.placement_seed = robots.value("placement_seed", uint64_t{0});
  }
  cfg.protocol = j.at("protocol").get<std::string>();
  cfg.adversary_json = j.contains("adversary") ? j.at("adversary").dump() : R"({"policy":"none"})";
  cfg.round_budget = j.value("round_budget", Round{0});
  if (j.contains("outputs")) {
    const auto& o = j.at("outputs");
    cfg.result_path = o.value("result", "");
    cfg.trace_path = o.value("trace", "");
    cfg.csv_path = o.value("csv_append", "");
  }
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["grid"] = nlohmann::json::parse(grid.to_json());
  nlohmann::ordered_json robots;
  robots["k"] = k;
  if (placement) {
    robots["placement"] = *placement;
  } else {
    robots["placement_seed"] = placement_seed.value_or(0);
  }
  j["robots"] = std::move(robots);
  j["protocol"] = protocol;
  j["adversary"] = nlohmann::json::parse(adversary_json);
  j["round_budget"] = round_budget;
  nlohmann::ordered_json outputs;
  if (!result_path.empty()) outputs["result"] = result_path;
  if (!trace_path.empty()) outputs["trace"] = trace_path;
  if (!csv_path.empty()) outputs["csv_append"] = csv_path;
  j["outputs"] = std::move(outputs);
  return j.dump(2);
}

void RunConfig::validate() const {
  grid.validate();
  if (protocol != "alg1" && protocol != "alg2" && protocol != "alg3") {
    throw ConfigError("config: unknown protocol '" + protocol + "'");
  }
  if (k < 1) throw ConfigError("config: k must be >= 1");
  if (int64_t(k) > grid.node_count()) throw ConfigError("config: k exceeds node count");
  if (placement && int(placement->size()) != k) {
    throw ConfigError("config: placement size does not match k");
  }
  const auto adv = nlohmann::json::parse(adversary_json);
  const std::string policy = adv.value("policy", "none");
  if (protocol == "alg1" && grid.orientation != Orientation::Oriented) {
    throw ConfigError("config: alg1 requires an oriented grid");
  }
  if (protocol == "alg2" && policy != "none") {
    throw ConfigError("config: alg2 is not crash-tolerant; adversary must be none");
  }
  if (protocol == "alg3" && grid.orientation != Orientation::Unoriented) {
    throw ConfigError("config: alg3 requires an unoriented grid");
  }
}

Round default_budget(const std::string& protocol, const GridSpec& spec) {
  const ProgramConfig pc = ProgramConfig::from(spec, 1);
  if (protocol == "alg1") {
    return sched::alg1_even_total(pc.length) + 2 * pc.length;
  }
  if (protocol == "alg2") {
    return sched::alg2_t_end(pc.length) + 2 * pc.length;
  }
  return sched::alg3_t_end(pc.length, pc.log_n());
}

namespace {

template <class P>
RunOutcome run_with(const RunConfig& cfg, const Grid& grid, const P& program) {
  RunOutcome out;
  out.placement = cfg.placement ? *cfg.placement
                                : placement_from_seed(grid, cfg.k, *cfg.placement_seed);
  auto policy = CrashPolicy::from_json(cfg.adversary_json);
  out.adversary_name = policy->describe();
  const Round budget =
      cfg.round_budget > 0 ? cfg.round_budget : default_budget(cfg.protocol, cfg.grid);
  out.result = run_simulation(grid, out.placement, program, *policy, budget, out.trace);
  out.report =
      check_run(grid, out.placement, cfg.grid, cfg.k, cfg.protocol, out.result, out.trace);
  return out;
}

}  // namespace

RunOutcome run_configured(const RunConfig& cfg) {
  cfg.validate();
  const Grid grid(cfg.grid);
  const ProgramConfig pc = ProgramConfig::from(cfg.grid, cfg.k);
  if (cfg.protocol == "alg1") return run_with(cfg, grid, Alg1(pc));
  if (cfg.protocol == "alg2") return run_with(cfg, grid, Alg2(pc));
  return run_with(cfg, grid, Alg3(pc));
}

std::string csv_header() {
  return "protocol,n,k,adversary,seed,rounds,dispersed,peak_mem_bits,crashes,retries";
}

std::string csv_row(const RunConfig& cfg, const RunOutcome& out, const std::string& seed_label) {
  std::ostringstream os;
  os << cfg.protocol << ',' << cfg.grid.node_count() << ',' << cfg.k << ','
     << out.adversary_name << ',' << seed_label << ',' << out.result.rounds_used << ','
     << (out.result.dispersed ? 1 : 0) << ',' << out.result.peak_memory_bits_max << ','
     << out.result.crash_count << ',' << out.result.retries_total;
  return os.str();
}

}  // namespace griddisp
