#pragma once

#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "gampc/core/adversary.hpp"
#include "gampc/core/field.hpp"
#include "gampc/netsim/party.hpp"

namespace gampc {

// One party's view of an additive sharing: [s]_q for every group q containing it.
struct ShareVector {
  PartyId owner = 0;
  std::map<int, Fp> shares;

  Fp at(int q) const;
  bool operator==(const ShareVector&) const = default;
};

// The global view (oracles and tests only): secret = sum of values.
struct FullSharing {
  std::vector<Fp> values;

  Fp secret() const;
  ShareVector view(const SharingSpec& s, PartyId i) const;
};

// Per-group linear combination. Throws std::invalid_argument on owner or group mismatch.
ShareVector lin_combine(std::span<const Fp> coeffs, std::span<const ShareVector> inputs);
ShareVector operator+(const ShareVector& a, const ShareVector& b);
ShareVector operator-(const ShareVector& a, const ShareVector& b);
ShareVector operator*(Fp c, const ShareVector& a);
// Adds a public constant, folded into the first group (the default-sharing convention).
ShareVector add_constant(const ShareVector& a, Fp c);

// (s, 0, ..., 0)
FullSharing default_share(Fp s, std::size_t h);
// Own view of default_share(s), computed locally without communication.
ShareVector default_share_view(Fp s, const SharingSpec& spec, PartyId i);
// Uniform shares summing to s.
FullSharing random_sharing(Fp s, std::size_t h, std::mt19937_64& rng);
// Own view of the all-zero sharing.
ShareVector zero_view(const SharingSpec& spec, PartyId i);

Words to_words(std::span<const Fp> v);
std::vector<Fp> from_words(const Words& w);

// ---- reconstruction of one group's share ----
// Non-member filtering: candidate values are cached per sender; a value is
// adopted once the senders agreeing on it form S' within S_q with S_q \ S' in Z.
struct RecShareState {
  PartySet group;
  std::map<PartyId, Words> got;
  std::optional<Words> out;
};

// Records a value from `from` (first value per sender counts, non-members are
// ignored) and returns the output once it is determined.
const std::optional<Words>& rec_share_step(RecShareState& st, const AdversaryStructure& z, PartyId from,
                                           const Words& v);

// Members of S_q send their batch of [.]_q values to P \ S_q and output at once;
// non-members wait for a qualifying consistent subset. `mine` is ignored for
// non-members.
Task<std::vector<Fp>> rec_share(Party& p, SidId sid, int q, std::vector<Fp> mine);

// Public reconstruction of a batch of shared values (one rec_share per group,
// outputs summed).
Task<std::vector<Fp>> rec(Party& p, SidId sid, std::vector<ShareVector> batch);
Task<Fp> rec(Party& p, SidId sid, ShareVector x);

// Envelopes and field elements of one rec over a batch of k values.
std::uint64_t rec_envelopes(const SharingSpec& spec, int n);
std::uint64_t rec_field_elems(const SharingSpec& spec, int n, std::size_t k);

}  // namespace gampc
