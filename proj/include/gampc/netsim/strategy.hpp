#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gampc/core/field.hpp"
#include "gampc/netsim/types.hpp"

namespace gampc {

class Party;

// Named deviation points exposed by protocol code running for a corrupt party.
enum class Hook {
  Deal,           // VSS dealing: values = s_1..s_h
  DealMember,     // composed VSS: a = q, b = recipient; values = {share sent}
  Summand,        // OptMult/BasicMult summand sums
  Partition,      // MultCI partitions: withhold() skips sharing them
  AicpPoint,        // AICP signer: a = verifier; values = {alpha, v, m} per component
  AicpVerdict,      // AICP signer: values = {1 if check passed} per component; tamper may force OK
  AicpReveal,       // AICP intermediary: values = revealed coefficients, t+1 per component
  AicpRevealPoint,  // AICP verifier reveal: a = signer, b = intermediary;
                    // values = {alpha, v, m, d, B(alpha)} per component, tamper may change v, m
  Vote,           // ABA vote: values = {bit}
};

struct HookCtx {
  Hook kind;
  SidId sid = 0;
  int a = 0;
  int b = 0;
};

// Behaviour of the corrupt parties. Corrupt parties run the protocol code as a
// puppet of the strategy: every delivery to them and every envelope they emit
// passes through the strategy, and protocol code consults tamper()/withhold() at
// the deviation points above. Honest parties never see a strategy.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;

  // false: the delivery is swallowed (the puppet never sees it)
  virtual bool on_deliver(Party&, const Envelope&) { return true; }
  // rewrite / drop / duplicate an outgoing envelope of a corrupt party
  virtual void on_send(Party&, Envelope&& e, std::vector<Envelope>& out) { out.push_back(std::move(e)); }
  virtual void tamper(Party&, const HookCtx&, std::vector<Fp>&) {}
  virtual bool withhold(Party&, const HookCtx&) { return false; }
  // F_ABA core-set choice; nullopt leaves it to the oracle's default policy
  virtual std::optional<PartySet> choose_core_set(SidId, PartySet /*voters*/) { return std::nullopt; }
};

}  // namespace gampc
