#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gampc/netsim/strategy.hpp"

namespace gampc {

// Built-in Byzantine behaviours:
//   silent                 never sends anything, ignores everything
//   drop-all               runs the protocol but drops every party-bound envelope
//                          (oracle calls such as F_VSS dealing and F_ABA votes still go out)
//   equivocate-acast       as Acast sender, sends m to the lower half and m+1 to the rest
//   wrong-share-dealer     as VSS dealer, perturbs one share by +1
//   offset-summand         adds +1 to every summand sum it shares in (Opt/Basic)Mult
//   withhold-partitions    offset-summand, and never shares cheater-ID partitions
//   forge-icsig            as AICP intermediary, reveals F' != F agreeing with F at one guessed point,
//                          with its own verifier point made consistent with F'
//   bad-verification-point as AICP signer, hands the smallest honest verifier a shifted point that
//                          passes the blinded check for a guessed challenge, announces OK regardless
//                          and reveals its own point off F but consistent with B
//   lying-rec              sends random values in place of its shares during reconstruction
const std::vector<std::string>& strategy_names();
// Throws std::invalid_argument for unknown names.
std::shared_ptr<Strategy> make_strategy(const std::string& name);

}  // namespace gampc
