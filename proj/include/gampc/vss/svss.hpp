#pragma once

#include <vector>

#include "gampc/netsim/party.hpp"
#include "gampc/sharing/sharing.hpp"

namespace gampc {

// Statistically-secure VSS (needs Q^(3)). Sub-sessions under the VSS session X:
//   X/dist          dealer -> each party: its shares
//   X/ic/i/j/k      AICP with signer P_i, intermediary P_j, receiver P_k on P_i's
//                   shares of the groups containing all three (i, j, k distinct)
//   X/ok/i/j        Acast by P_i once every signature of P_j held by P_i completed
//                   and carries P_i's own shares
//   X/core          Acast by the dealer: [k, C]
// Members of C keep their shares; every other party P_k takes, per group q, the
// value of the first P_j in C ∩ S_q (by index) whose revealed signatures from all
// of C ∩ S_q \ {P_j} are accepted and agree.
void svss_join(Party& p, SidId sid, PartyId dealer);
void svss_deal(Party& p, SidId sid, std::vector<FullSharing> shares);

// Number of AICP instances one statistical VSS session runs.
std::size_t svss_aicp_instances(const SharingSpec& spec, int n);

}  // namespace gampc
