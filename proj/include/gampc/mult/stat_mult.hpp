#pragma once

#include <vector>

#include "gampc/mult/mult.hpp"

namespace gampc {

// Non-robust multiplication: the summand loop with GD excluded.
Task<SummandRun> basicmult_run(Party& p, SidId sid, std::vector<ShareVector> a, std::vector<ShareVector> b,
                               PartySet gd, int iter);

struct RandMultResult {
  bool success = false;
  std::vector<Triple> triples;
  PartySet gd;  // GD after this iteration
  Fp r;         // the opened challenge
  std::vector<Fp> d;
};

// One iteration of detectable triple generation for a batch of m triples:
// random [a], [b], [b'] and a single challenge [r]; basicmult gives [c], [c'];
// r is opened only once both product batches are held, then e = r b + b' and
// d = e a - r c - c'. A nonzero d opens everything and discards every selected
// party whose claimed summands do not match.
Task<RandMultResult> randmultci_run(Party& p, SidId sid, std::size_t m, PartySet gd, int iter);

// Iterates randmultci_run until success (at most n iterations).
Task<TriplesResult> stattriples_run(Party& p, SidId sid, std::size_t m);

}  // namespace gampc
