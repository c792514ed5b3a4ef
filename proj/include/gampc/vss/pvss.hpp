#pragma once

#include <optional>
#include <vector>

#include "gampc/netsim/party.hpp"
#include "gampc/sharing/sharing.hpp"

namespace gampc {

// Perfectly-secure VSS (needs Q^(4)). Sub-sessions under the VSS session X:
//   X/dist          dealer -> each party: its shares (group-major, k per group)
//   X/test          pairwise: the shares of the groups both parties belong to
//   X/ok/i/j        Acast by P_i: its shares agree with P_j's on every common group
//   X/ok/q/i/j      (per-group core sets) the same per group q
//   X/core          Acast by the dealer: [k, C] or [k, C_1..C_h]
// With a single core set C, an edge (j,k) needs OK(j,k) and OK(k,j); C must be a
// clique with S_q \ C in Z for every q. Members of C keep their own shares;
// the others adopt the value reported identically by a subset C' of C ∩ S_q with
// (C ∩ S_q) \ C' in Z.

// Symmetric adjacency as PartySet bits per party; index 0 unused.
using Graph = std::vector<std::uint32_t>;

bool is_clique(const Graph& g, PartySet c);
// Largest clique C within `universe` with S \ C in Z for every S in `targets`,
// lexicographically least among equal sizes.
std::optional<PartySet> find_core(const Graph& g, PartySet universe, const std::vector<PartySet>& targets,
                                  const AdversaryStructure& z);
bool core_admissible(PartySet c, const std::vector<PartySet>& targets, const AdversaryStructure& z);

void pvss_join(Party& p, SidId sid, PartyId dealer);
void pvss_deal(Party& p, SidId sid, std::vector<FullSharing> shares);

}  // namespace gampc
