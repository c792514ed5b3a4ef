#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "gampc/netsim/sim.hpp"
#include "gampc/sharing/sharing.hpp"

namespace gampc {

// Verifiable sharing of a batch of k secrets by one dealer. The backend follows
// Config::vss: the ideal F_VSS oracle, the perfect protocol or the statistical one.
//
// Every participant opens the session (composed modes start the participant role
// there); the dealer additionally deals. The output is one ShareVector per secret.

// Creates (or looks up) the session `parent/label` with the given dealer and
// joins it.
SidId vss_open(Party& p, SidId parent, std::string_view label, PartyId dealer);
SidId vss_open(Party& p, SidId parent, long long label, PartyId dealer);
// Dealer side. Corrupt dealers pass the flattened shares (secret-major) through
// the Deal hook first.
void vss_deal(Party& p, SidId sid, std::vector<FullSharing> shares);
// Deals fresh uniform sharings of the given secrets.
void vss_deal_secrets(Party& p, SidId sid, const std::vector<Fp>& secrets);
// nullptr until the output arrived.
const std::vector<ShareVector>* vss_result(Party& p, SidId sid);
Task<std::vector<ShareVector>> vss_output(Party& p, SidId sid);

// Output payload: [k, then for each own group q (ascending) the k shares].
Words vss_encode_output(const SharingSpec& spec, PartyId i, const std::vector<FullSharing>& shares);
std::optional<std::vector<ShareVector>> vss_decode_output(const SharingSpec& spec, PartyId i, const Words& w);

// The ideal functionality. The dealer sends (VssDeal, sid, [k, shares...]) and
// every party later receives its bundle as (VssOut, sid, ...). Only the first
// deal from the session's dealer counts.
class FvssOracle final : public Endpoint {
 public:
  explicit FvssOracle(Sim& sim) : sim_(&sim) {}
  void deliver(Envelope&& e) override;
  // dealt shares per session (global view, for tests)
  const std::vector<FullSharing>* dealt(SidId sid) const;

 private:
  Sim* sim_;
  std::unordered_map<SidId, std::vector<FullSharing>> dealt_;
};

FvssOracle& install_fvss_oracle(Sim& sim);

}  // namespace gampc
