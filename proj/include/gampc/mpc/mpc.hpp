#pragma once

#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "gampc/core/circuit.hpp"
#include "gampc/mult/summands.hpp"
#include "gampc/netsim/sim.hpp"

namespace gampc {

// Source of the Beaver triples.
enum class TripleSource {
  Oracle,       // F_Triples
  Perfect,      // pertriples_run
  Statistical,  // stattriples_run
};

// The ideal triple functionality: on the first (TriplesReq, sid, [M]) it samples
// M random triples with random sharings; every requester receives its bundle
// (TriplesOut, sid, ...) in the VSS output layout over the 3M sharings
// a_1..a_M, b_1..b_M, c_1..c_M.
class FtriplesOracle final : public Endpoint {
 public:
  explicit FtriplesOracle(Sim& sim) : sim_(&sim) {}
  void deliver(Envelope&& e) override;
  struct Bank {
    std::vector<FullSharing> a, b, c;
  };
  const Bank* bank(SidId sid) const;

 private:
  Sim* sim_;
  std::unordered_map<SidId, Bank> banks_;
};
FtriplesOracle& install_ftriples_oracle(Sim& sim);

// Beaver multiplication with triple (a, b, c): d = x - a and e = y - b are
// reconstructed in the sessions `sid/d` and `sid/e`;
// [z] = de + d[b] + e[a] + [c], the constant folded into the first group.
Task<ShareVector> beaver_mul(Party& p, SidId sid, ShareVector x, ShareVector y, Triple t);

// Termination tally: first ready value per sender.
struct ReadyTally {
  std::map<PartyId, Fp> first;
  PartySet senders_of(Fp y) const;
};

// Everything one party learns during a run.
struct MpcPartyOut {
  std::optional<Fp> computed;  // local output before termination
  std::optional<Fp> output;    // set by the termination rule
  PartySet cs;
  std::vector<std::vector<ShareVector>> inputs;  // per party (1-based), its input sharings
  std::size_t triples_used = 0;
};

// The party program of the MPC protocol. `inputs` are this party's
// inputs_per_party values. Termination runs concurrently from the start.
Task<void> mpc_party(Party& p, const Circuit& c, std::vector<Fp> inputs, TripleSource triples, MpcPartyOut* out);

// Reference functionality: zero-fill inputs of parties outside CS and evaluate.
// nullopt (request ignored) when P \ CS is not in Z.
std::optional<Fp> fampc_reference(const Circuit& c, const AdversaryStructure& z, const std::vector<Fp>& inputs,
                                  PartySet cs);

struct MpcRunConfig {
  AdversaryStructure z;
  Config cfg;
  Circuit circuit;
  std::vector<Fp> inputs;  // one per input wire
  std::uint64_t seed = 1;
  int fairness = 0;  // D; 0 keeps the schedule default
  PartySet corrupt;
  std::shared_ptr<Strategy> strategy;
  TripleSource triples = TripleSource::Oracle;
  bool record_transcript = false;  // enables the fairness check
};

struct MpcRunResult {
  std::optional<Fp> y;  // common output of the terminated honest parties, if they agree
  bool agreement = true;
  PartySet cs;
  PartySet terminated;             // honest parties that output
  std::vector<Fp> realized_inputs;  // inputs actually shared (0 outside CS), from honest views
  std::optional<Fp> reference;     // fampc_reference over realized inputs and CS
  std::size_t triples_used = 0;
  std::uint64_t mul_perrec_sessions = 0;
  Counters totals;
  nlohmann::json metrics;
  std::uint64_t seed = 0;
  bool fair = true;  // transcript met the fairness bound (when recorded)
  nlohmann::json to_json() const;
};

MpcRunResult run_mpc(const MpcRunConfig& rc);

}  // namespace gampc
