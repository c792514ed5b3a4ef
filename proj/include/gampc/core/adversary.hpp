#pragma once

#include <cstdint>
#include <vector>

#include "gampc/core/party_set.hpp"

namespace gampc {

// Explicit list of potentially corrupt subsets, canonically ordered. Membership
// queries ("A in Z") are monotone: A is in Z iff A is a subset of some listed set.
class AdversaryStructure {
 public:
  AdversaryStructure() = default;
  AdversaryStructure(int n, std::vector<PartySet> sets);

  static AdversaryStructure singletons(int n);
  static AdversaryStructure threshold(int n, int t);

  int n() const { return n_; }
  const std::vector<PartySet>& sets() const { return sets_; }
  std::size_t size() const { return sets_.size(); }
  const std::vector<PartySet>& maximal() const { return maximal_; }
  int t() const { return t_; }
  PartySet all() const { return PartySet::all(n_); }

  // A in Z (monotone reading).
  bool covers(PartySet a) const {
    for (PartySet z : maximal_)
      if (a.subset_of(z)) return true;
    return false;
  }
  // P \ A in Z: A is large enough to contain all honest parties for some Z.
  bool complement_in(PartySet a) const { return covers(all() - a); }

 private:
  int n_ = 0;
  std::vector<PartySet> sets_;
  std::vector<PartySet> maximal_;
  int t_ = 0;
};

// Q^(k)(subset, Z): no union of k sets of Z covers subset.
bool q_condition(PartySet subset, const AdversaryStructure& z, int k);

// The groups S_q = P \ Z_q, in the same order as Z.
class SharingSpec {
 public:
  SharingSpec() = default;
  explicit SharingSpec(const AdversaryStructure& z);

  int n() const { return n_; }
  std::size_t size() const { return groups_.size(); }
  PartySet group(std::size_t q) const { return groups_[q]; }
  const std::vector<PartySet>& groups() const { return groups_; }
  // bitmask over q of groups containing party i
  std::uint64_t groups_of(PartyId i) const { return member_mask_[i]; }
  bool member(PartyId i, std::size_t q) const { return (member_mask_[i] >> q) & 1u; }

 private:
  int n_ = 0;
  std::vector<PartySet> groups_;
  std::vector<std::uint64_t> member_mask_;
};

inline SharingSpec sharing_spec(const AdversaryStructure& z) { return SharingSpec(z); }

// Q^(k)(S, Z): every group satisfies Q^(k).
bool q_condition_spec(const SharingSpec& s, const AdversaryStructure& z, int k);

}  // namespace gampc
