#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gampc/netsim/party.hpp"

namespace gampc {

// Asynchronous information checking: signer S gives intermediary I an
// IC-signature on values that I can later reveal to receiver R; every party
// acts as a verifier. One instance signs K values; each component has its own
// polynomials F, M, evaluation points, challenge d and verdict, so an instance is
// K independent protocol runs sharing envelopes.
//
// Sub-sessions under the instance A:
//   A/poly  S -> I: F and M coefficients
//   A/pt    S -> each verifier: (alpha, v, m) per component
//   A/rcv   verifier -> I: received
//   A/ib    Acast by I: [K, d.., B coefficients.., SV]
//   A/sv    Acast by S: per component 1 (OK) or 0, s (NOK)
//   A/rev   I -> R: revealed F'; verifiers -> R: their points (or dummies)

Fp poly_eval(std::span<const Fp> coeffs, Fp x);
// Uniform polynomial of degree <= t with the given constant term.
std::vector<Fp> random_poly(Fp constant, int t, std::mt19937_64& rng);
// `count` distinct uniform nonzero field elements; throws std::invalid_argument
// when the field has fewer than count nonzero elements.
std::vector<Fp> distinct_nonzero(std::size_t count, std::mt19937_64& rng);

// Receiver acceptance of one revealed point for one component.
bool aicp_point_accepted(std::span<const Fp> f_revealed, Fp alpha, Fp v, Fp m, Fp d, std::span<const Fp> b);

struct IcSignature {
  bool is_public = false;
  Fp value;               // public value (NOK) or F(0)
  std::vector<Fp> poly;   // F, when held by the intermediary
};

struct AicpRoles {
  PartyId signer = 0, intermediary = 0, receiver = 0;
};

// Creates the instance `parent/label` and joins it as verifier (and as
// intermediary when applicable). Every party opens every instance it takes part in.
SidId aicp_open(Party& p, SidId parent, std::string_view label, AicpRoles roles);
void aicp_sign(Party& p, SidId a, std::vector<Fp> values);
bool aicp_auth_completed(Party& p, SidId a);
// At the intermediary after completion; one entry per component.
std::optional<std::vector<IcSignature>> aicp_signature(Party& p, SidId a);
// Every party calls this to run the reveal towards the receiver (the call waits
// for local authentication completion).
void aicp_reveal(Party& p, SidId a);
// At the receiver: nullopt while pending; then the revealed values, or an empty
// optional when the reveal was rejected.
std::optional<std::optional<std::vector<Fp>>> aicp_revealed(Party& p, SidId a);

// Dispute-control state of a party (empty while Config::dispute_control is off).
PartySet aicp_discarded_signers(Party& p);
PartySet aicp_discarded_intermediaries(Party& p);

}  // namespace gampc
