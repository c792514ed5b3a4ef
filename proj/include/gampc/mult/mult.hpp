#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "gampc/mult/summands.hpp"

namespace gampc {

// One party's cheater-identification state for a mult_run. Background
// cheater-identification tasks of failed iterations keep updating it, and later
// iterations consult it in their vote rule.
struct MultState {
  struct WaitList {
    PartySet members;
    std::map<PartyId, SidId> partition;  // VSS session of each member's partitions
  };
  PartySet gd;                  // globally discarded (ACS decided)
  std::map<int, PartySet> ld;   // LD per iteration
  std::map<int, WaitList> w;    // W per iteration
  SidId root = 0;

  // j is still wait-listed for iteration `iter`: some of its partitions missing
  bool waitlisted(Party& p, int iter, PartyId j) const;
  // in GD, or in some W or LD of an iteration before `iter`
  bool barred(Party& p, int iter, PartyId j) const;
  PartySet discarded_any() const;  // union of all LD
};

struct MultCiResult {
  bool success = false;
  std::vector<ShareVector> c;
  int conflict_z = -1;  // index of Z with a nonzero difference (Z' is index 0)
  std::vector<SummandRun> runs;
};

// One iteration: a summand loop per Z in Z (excluding Z), public differences
// against the first one; on failure the cheater identification keeps running
// in the background and updates `st`.
Task<MultCiResult> multci_run(Party& p, SidId sid, int iter, std::vector<ShareVector> a, std::vector<ShareVector> b,
                              std::shared_ptr<MultState> st);

struct MultResult {
  std::vector<ShareVector> c;
  int iterations = 0;
  std::shared_ptr<MultState> state;
};

// t(tn + 1) + 1
int mult_iteration_budget(const AdversaryStructure& z);

// [a_m b_m] for a batch of pairs, iterating multci_run; every tn+1 failed
// iterations an ACS moves one locally discarded party into GD.
Task<MultResult> mult_run(Party& p, SidId sid, std::vector<ShareVector> a, std::vector<ShareVector> b);

struct TriplesResult {
  std::vector<Triple> triples;
  PartySet cs;
  int iterations = 0;
  PartySet gd;
};

// M random multiplication triples: random [a], [b] from a common subset of
// dealers, then mult_run.
Task<TriplesResult> pertriples_run(Party& p, SidId sid, std::size_t m);

}  // namespace gampc
