#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <utility>

#include "gampc/core/adversary.hpp"
#include "gampc/netsim/sim.hpp"

namespace gampc {

struct AbaOracleState {
  std::map<PartyId, bool> votes;
  PartySet voters;
  std::optional<PartySet> core_set;
  std::optional<bool> decided;
  bool timer_pending = false;
};

// Output bit for a recorded core set: the common honest vote in CS if the honest
// members agree, else the vote of the smallest-index corrupt member of CS.
bool faba_output(const AbaOracleState& st, PartySet cs, PartySet corrupt);

// Lexicographically least A within the voters with P \ A in Z, if any.
std::optional<PartySet> faba_default_core(const AbaOracleState& st, const AdversaryStructure& z);

// Decision rule. A present adversary_choice must satisfy P \ CS in Z and consist
// of voters (std::invalid_argument otherwise); without one the default core set
// is used. nullopt while no admissible core set exists.
std::optional<std::pair<PartySet, bool>> faba_decide(const AbaOracleState& st, const AdversaryStructure& z,
                                                     PartySet corrupt, std::optional<PartySet> adversary_choice);

// The F_ABA endpoint. Votes are (AbaVote, sid, [b]); the decision is pushed to
// every party as (AbaDecide, sid, [CS bits, y]). With corrupt parties present the
// strategy may pick CS; if it abstains, the default applies once a self-addressed
// timer (subject to the fairness bound) fires.
class AbaOracle final : public Endpoint {
 public:
  explicit AbaOracle(Sim& sim) : sim_(&sim) {}
  void deliver(Envelope&& e) override;
  const AbaOracleState* state(SidId sid) const;

 private:
  void try_decide(SidId sid, AbaOracleState& st, bool timer_fired);
  Sim* sim_;
  std::unordered_map<SidId, AbaOracleState> states_;
};

AbaOracle& install_aba_oracle(Sim& sim);

// Party side.
SidId aba_instance(SidRegistry& sids, SidId acs_base, PartyId j);
void aba_vote(Party& p, SidId sid, bool b);
bool aba_voted(Party& p, SidId sid);
std::optional<std::pair<PartySet, bool>> aba_result(const Party& p, SidId sid);

enum class AcsMode {
  UntilQualified,  // stop voting 1 once the decided-1 set has complement in Z
  UntilAny,        // stop voting 1 after the first 1-decision
};

// ACS over the n ABA instances under `base`: vote 1 for j once evidence(j) holds,
// switch to 0 per `mode`, return the set of parties whose instance decided 1.
// evidence is re-evaluated whenever something arrives under one of `watch`.
Task<PartySet> acs_run(Party& p, SidId base, AcsMode mode, std::vector<SidId> watch,
                       std::function<bool(PartyId)> evidence);

}  // namespace gampc
