#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gampc/core/adversary.hpp"
#include "gampc/netsim/metrics.hpp"

namespace gampc {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One experiment: a protocol run over many seeded trials.
//
// JSON: {"name", "protocol", "n", "Z": "singletons" | [[...]], "prime",
//        "corrupt": [..], "strategy", "seeds": N | [..] (or "trials": N),
//        "mode": "hybrid" | "composed", "security": "perfect" | "statistical",
//        "fairness": D, "bound": eps, "params": {...}}
struct Scenario {
  std::string name;
  std::string protocol;
  AdversaryStructure z;
  std::uint64_t prime = 0;
  PartySet corrupt;
  std::string strategy;
  std::vector<std::uint64_t> seeds;
  bool composed = false;
  bool statistical = false;
  int fairness = 4;
  std::optional<double> bound;  // upper bound on the error-event rate
  nlohmann::json params = nlohmann::json::object();
};

const std::vector<std::string>& protocol_names();

// Throws ConfigError on malformed input.
Scenario scenario_from_json(const nlohmann::json& j);
// Q^(k) needed by the protocol.
int required_q(const Scenario& s);
// Throws ConfigError: unknown protocol/strategy, corrupt set not in Z, Q^(k) unmet, bad prime.
void validate(const Scenario& s);
// Error-rate bound implied by the protocol and strategy (AICP forgery and
// non-repudiation, RandMultCI false success), unless the scenario sets one.
std::optional<double> default_bound(const Scenario& s);

struct TrialOutcome {
  enum class Kind { Success, Failure, Violation };
  Kind kind = Kind::Success;
  bool error_event = false;  // the event whose rate the scenario estimates
  std::string note;          // first violated invariant
  Counters metrics;
  nlohmann::json extra = nlohmann::json::object();
};

// One trial; exceptions escaping the protocol are reported as violations.
TrialOutcome run_trial(const Scenario& s, std::uint64_t seed);

// Wilson score interval for k events in n trials at z standard deviations.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z);

struct Report {
  std::string name;
  std::string protocol;
  std::uint64_t trials = 0, successes = 0, failures = 0, violations = 0;
  std::uint64_t error_events = 0;
  double error_rate = 0;
  std::pair<double, double> wilson{0, 0};  // z = 3
  std::optional<double> bound;
  bool bound_ok = true;  // the bound lies at or above the lower Wilson limit
  std::vector<std::string> notes;  // distinct violation notes, first few
  Counters metrics_total;
  nlohmann::json extra_summary = nlohmann::json::object();
  double wall_seconds = 0;  // not part of the JSON (reports are byte-reproducible)
  bool clean() const { return violations == 0 && bound_ok; }
  nlohmann::json to_json() const;
};

// Runs all trials (on `jobs` threads) and aggregates them in seed order.
Report run_scenario(const Scenario& s, int jobs = 1);

// Field elements per triple against |Z| over singleton structures.
struct SweepPoint {
  int n = 0;
  std::size_t z_size = 0;
  double fe_per_triple = 0;
  double normalized = 0;  // divided by n(n-1)
};
struct SweepReport {
  std::string pipeline;
  std::vector<SweepPoint> points;
  double slope_raw = 0;
  double slope_normalized = 0;
  nlohmann::json to_json() const;
};
// pipeline: "perfect" (pertriples), "statistical" (stattriples) or "rec"; hybrid mode.
SweepReport complexity_sweep(const std::string& pipeline, const std::vector<int>& ns, int seeds, std::size_t triples);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gampc
