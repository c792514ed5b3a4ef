#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gampc/core/adversary.hpp"
#include "gampc/netsim/party.hpp"

namespace gampc {

// Bracha-style reliable broadcast against a general structure Z (needs Q^(3)).
// Payload words are opaque; tallies are keyed by the exact words.
struct AcastState {
  PartyId sender = 0;
  bool echoed = false;
  bool readied = false;
  std::optional<Words> output;
  PartySet echo_seen;   // first echo per party counts
  PartySet ready_seen;  // first ready per party counts
  std::map<Words, PartySet> echoes;
  std::map<Words, PartySet> readies;
};

enum class AcastKind { Input, Inp, Echo, Ready };

struct AcastEvent {
  AcastKind kind;
  PartyId from;
  Words m;
};

struct AcastAction {
  std::vector<std::pair<Tag, Words>> send_all;
  std::optional<Words> output;
};

AcastAction acast_step(AcastState& st, const AdversaryStructure& z, const AcastEvent& ev);

// ---- party-level API ----
// Declares `session` as an acast session with the given sender (receivers only
// accept inp from the owner).
SidId acast_session(SidRegistry& sids, SidId parent, std::string_view label, PartyId sender);
// Sender side. field_elems is the metered size of m.
void acast_send(Party& p, SidId session, const Words& m, std::uint32_t field_elems);
// Output if already delivered.
const Words* acast_output(const Party& p, SidId session);
Task<Words> acast_await(Party& p, SidId session);

}  // namespace gampc
