#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gampc/core/party_set.hpp"

namespace gampc {

using Words = std::vector<std::uint64_t>;
using SidId = std::uint32_t;

// Oracle endpoints live above the party id range.
inline constexpr PartyId kVssOracle = kMaxParties + 1;
inline constexpr PartyId kAbaOracle = kMaxParties + 2;
inline constexpr PartyId kTriplesOracle = kMaxParties + 3;
inline constexpr PartyId kMaxEndpoint = kMaxParties + 4;

enum class Tag : std::uint8_t {
  Ping,
  AcastInp,
  AcastEcho,
  AcastReady,
  AcastOut,  // local: acast output, src = sender
  AbaVote,
  AbaDecide,
  AbaTimer,
  VssDeal,
  VssOut,
  PvssDist,
  PvssTest,
  SvssDist,
  AicpPoly,
  AicpPoint,
  AicpReceived,
  AicpRevealPoly,
  AicpRevealPoint,
  AicpDummy,
  RecShare,
  TriplesReq,
  TriplesOut,
  Ready,
  Local,  // local bookkeeping posts
  Count_
};

inline constexpr std::size_t kTagCount = static_cast<std::size_t>(Tag::Count_);

std::string_view tag_name(Tag t);
// Protocol family a tag belongs to, used as the metrics key.
std::string_view tag_protocol(Tag t);

struct Envelope {
  PartyId src = 0;
  PartyId dst = 0;
  SidId sid = 0;
  Tag tag = Tag::Ping;
  Words w;
  std::uint32_t field_elems = 0;
  std::uint32_t bytes = 0;
  // scheduler bookkeeping
  std::uint64_t send_step = 0;
  std::uint64_t queue_at_send = 0;
  std::uint64_t deadline = 0;
  std::uint64_t tiebreak = 0;
  std::uint64_t seq = 0;
};

struct LivelockDetected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IterationBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gampc
