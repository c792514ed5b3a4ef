#pragma once

// Pieces shared by the perfect and statistical VSS: sub-session layout, the OK
// graph, the core-set announcement and the dealer role.

#include <optional>
#include <vector>

#include "gampc/netsim/party.hpp"
#include "gampc/sharing/sharing.hpp"
#include "gampc/vss/pvss.hpp"

namespace gampc::vss_detail {

struct Layout {
  SidId dist, test, ok, core;
  int n;
  std::vector<SidId> ok_ids;  // [(q + 1) * (n + 1) + i] * (n + 1) + j, q = -1 for the single graph

  SidId ok_sid(int q, PartyId i, PartyId j) const { return ok_ids[((q + 1) * (n + 1) + i) * (n + 1) + j]; }
};

Layout layout(Party& p, SidId x, bool per_q);
std::vector<int> groups_list(std::uint64_t mask);
// Graph of delivered OK pairs (per group q, or the single graph for q < 0).
Graph ok_graph(Party& p, const Layout& l, int q, PartySet universe);

struct Core {
  std::uint64_t k;
  std::vector<PartySet> c;  // one entry, or one per group
};

std::optional<Core> parse_core(const Words& w, std::size_t h, bool per_q);

// Distributes the shares, then announces core set(s) once the OK graph has them.
Task<void> dealer_role(Party& p, SidId x, std::vector<FullSharing> shares, bool per_q, Tag dist_tag);

}  // namespace gampc::vss_detail
