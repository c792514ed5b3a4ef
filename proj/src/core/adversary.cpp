#include "gampc/core/adversary.hpp"

#include <algorithm>
#include <stdexcept>

namespace gampc {

bool PartySet::lex_less(PartySet a, PartySet b) {
  auto ma = a.members();
  auto mb = b.members();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

std::string PartySet::str() const {
  std::string s = "{";
  bool first = true;
  for (PartyId p : members()) {
    if (!first) s += ",";
    s += std::to_string(p);
    first = false;
  }
  return s + "}";
}

AdversaryStructure::AdversaryStructure(int n, std::vector<PartySet> sets) : n_(n) {
  if (n < 2 || n > kMaxParties) throw std::invalid_argument("party count out of range");
  for (PartySet s : sets)
    if (!s.subset_of(PartySet::all(n))) throw std::invalid_argument("adversary set mentions unknown party");
  std::sort(sets.begin(), sets.end(), PartySet::lex_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  if (sets.empty()) throw std::invalid_argument("adversary structure must list at least one set");
  sets_ = std::move(sets);
  for (PartySet s : sets_) {
    t_ = std::max(t_, s.size());
    bool dominated = false;
    for (PartySet o : sets_)
      if (!(o == s) && s.subset_of(o)) dominated = true;
    if (!dominated) maximal_.push_back(s);
  }
}

AdversaryStructure AdversaryStructure::singletons(int n) {
  std::vector<PartySet> v;
  for (PartyId i = 1; i <= n; ++i) v.push_back(PartySet{i});
  return AdversaryStructure(n, v);
}

AdversaryStructure AdversaryStructure::threshold(int n, int t) {
  std::vector<PartySet> v;
  for (std::uint32_t b = 1; b < (1u << n); ++b)
    if (std::popcount(b) == t) v.push_back(PartySet(b));
  return AdversaryStructure(n, v);
}

namespace {

// k-combinations with repetition over the maximal sets, pruned once covered.
bool covered_by_k(PartySet target, const std::vector<PartySet>& sets, std::size_t from, int k, PartySet acc) {
  if (target.subset_of(acc)) return true;
  if (k == 0) return false;
  for (std::size_t i = from; i < sets.size(); ++i)
    if (covered_by_k(target, sets, i, k - 1, acc | sets[i])) return true;
  return false;
}

}  // namespace

bool q_condition(PartySet subset, const AdversaryStructure& z, int k) {
  if (k < 1) throw std::invalid_argument("q_condition needs k >= 1");
  return !covered_by_k(subset, z.maximal(), 0, k, PartySet{});
}

SharingSpec::SharingSpec(const AdversaryStructure& z) : n_(z.n()), member_mask_(z.n() + 1, 0) {
  if (z.size() > 64) throw std::invalid_argument("at most 64 groups supported");
  for (PartySet s : z.sets()) groups_.push_back(z.all() - s);
  for (std::size_t q = 0; q < groups_.size(); ++q)
    for (PartyId i : groups_[q].members()) member_mask_[i] |= std::uint64_t{1} << q;
}

bool q_condition_spec(const SharingSpec& s, const AdversaryStructure& z, int k) {
  for (PartySet g : s.groups())
    if (!q_condition(g, z, k)) return false;
  return true;
}

}  // namespace gampc
