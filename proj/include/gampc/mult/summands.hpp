#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "gampc/netsim/sim.hpp"
#include "gampc/sharing/sharing.hpp"

namespace gampc {

struct Triple {
  ShareVector a, b, c;
};

// Ordered group pairs (p, q) are encoded as p * h + q.
// Pairs whose product [a]_p [b]_q party j can compute: j in S_p and S_q.
std::vector<int> local_pairs(const SharingSpec& s, PartyId j);
std::vector<int> pair_intersection(const std::vector<int>& x, const std::vector<int>& y);

// For every pair (p, q), S_p ∩ S_q is covered by no union of k sets of Z.
// k = 2 is what the summand loop needs with one excluded set and the corrupt set
// (Q^(4) structures), k = 1 without the excluded set (Q^(3)).
bool summands_coverable(const AdversaryStructure& z, int k);

// sum over pairs of [a_m]_p [b_m]_q, for every m
std::vector<Fp> summand_sums(const SharingSpec& s, std::span<const int> pairs, const std::vector<ShareVector>& a,
                             const std::vector<ShareVector>& b);

struct SummandRun {
  std::vector<ShareVector> c;                         // one per pair
  std::vector<PartyId> selected;                      // in selection order
  std::map<PartyId, std::vector<int>> claimed;        // pairs claimed when selected
  std::map<PartyId, std::vector<ShareVector>> parts;  // c^(j) of the selected parties
  int hops = 0;
};

struct SummandParams {
  PartySet excluded;                      // neither share nor get votes
  std::function<bool(PartyId)> eligible;  // additional vote condition (may change over time)
  std::vector<SidId> watch;               // keys whose traffic can change eligible()
  int instance = 0;                       // reported to the Summand hook
  int iter = 0;
};

// The summand-sharing loop over a batch of pairs: in each hop every eligible
// party shares its remaining summand sums via VSS, an ACS picks the least-index
// party with a 1-decision, and its claimed pairs are removed. [c] = sum of the
// selected parties' sharings.
Task<SummandRun> summand_loop(Party& p, SidId sid, std::vector<ShareVector> a, std::vector<ShareVector> b,
                              SummandParams prm);

// Every party VSS-shares `count` random values; an ACS picks CS with P \ CS in Z.
struct RandomSharings {
  std::vector<ShareVector> values;
  PartySet cs;
};
Task<RandomSharings> random_sharings(Party& p, SidId sid, std::size_t count);

// Publicly opens the group shares of the given sharings for the groups in
// `groups` (bitmask over q): result[q][m].
Task<std::map<int, std::vector<Fp>>> open_groups(Party& p, SidId sid, std::vector<ShareVector> xs,
                                                 std::uint64_t groups);

}  // namespace gampc
