#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gampc/core/json_io.hpp"
#include "gampc/harness/scenario.hpp"

using namespace gampc;

namespace {

void emit(const nlohmann::json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asynchronous MPC over general adversary structures: experiment runner"};
  app.require_subcommand(1);

  std::string config, out;
  std::uint64_t seeds = 0;
  int jobs = 1;
  auto* run = app.add_subcommand("run", "run a scenario and print its report");
  run->add_option("config", config, "scenario JSON file")->required();
  run->add_option("--out", out, "write the report here instead of stdout");
  run->add_option("--seeds", seeds, "override the seed count (seeds 1..N)");
  run->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  std::string pipeline = "perfect";
  std::vector<int> ns{5, 7, 9};
  int sweep_seeds = 2;
  std::size_t triples = 1;
  auto* sweep = app.add_subcommand("sweep", "field elements per triple against |Z| (singleton structures)");
  sweep->add_option("pipeline", pipeline, "perfect | statistical | rec");
  sweep->add_option("--n", ns, "party counts");
  sweep->add_option("--seeds", sweep_seeds, "runs per point");
  sweep->add_option("--triples", triples, "triples per run");
  sweep->add_option("--out", out, "write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    Scenario s;
    try {
      s = scenario_from_json(load_json_file(config));
      if (seeds) {
        s.seeds.clear();
        for (std::uint64_t k = 1; k <= seeds; ++k) s.seeds.push_back(k);
      }
      validate(s);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
    Report r = run_scenario(s, jobs);
    emit(r.to_json(), out);
    std::cerr << r.name << ": " << r.trials << " trials, " << r.violations << " violations, " << r.error_events
              << " error events, " << r.wall_seconds << " s\n";
    return r.clean() ? 0 : 1;
  }
  try {
    emit(complexity_sweep(pipeline, ns, sweep_seeds, triples).to_json(), out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
