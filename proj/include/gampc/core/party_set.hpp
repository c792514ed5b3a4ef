#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace gampc {

using PartyId = int;  // 1..n for parties; larger ids are oracles
inline constexpr int kMaxParties = 30;

// Subset of {1..n} as a bitmask (bit i-1 <-> P_i).
class PartySet {
 public:
  constexpr PartySet() = default;
  constexpr explicit PartySet(std::uint32_t bits) : bits_(bits) {}
  PartySet(std::initializer_list<PartyId> ids) {
    for (PartyId p : ids) insert(p);
  }
  static PartySet from_vector(const std::vector<PartyId>& ids) {
    PartySet s;
    for (PartyId p : ids) s.insert(p);
    return s;
  }
  static constexpr PartySet all(int n) { return PartySet(n >= 32 ? ~0u : ((1u << n) - 1)); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool contains(PartyId p) const { return (bits_ >> (p - 1)) & 1u; }
  void insert(PartyId p) { bits_ |= 1u << (p - 1); }
  void erase(PartyId p) { bits_ &= ~(1u << (p - 1)); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool subset_of(PartySet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(PartySet o) const { return (bits_ & o.bits_) != 0; }
  // smallest member, 0 if empty
  constexpr PartyId min() const { return bits_ ? std::countr_zero(bits_) + 1 : 0; }

  friend constexpr PartySet operator|(PartySet a, PartySet b) { return PartySet(a.bits_ | b.bits_); }
  friend constexpr PartySet operator&(PartySet a, PartySet b) { return PartySet(a.bits_ & b.bits_); }
  friend constexpr PartySet operator-(PartySet a, PartySet b) { return PartySet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(PartySet a, PartySet b) { return a.bits_ == b.bits_; }
  PartySet& operator|=(PartySet o) { bits_ |= o.bits_; return *this; }

  std::vector<PartyId> members() const {
    std::vector<PartyId> out;
    for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }
  // Lexicographic order on sorted member lists ({1} < {1,2} < {1,3} < {2}).
  static bool lex_less(PartySet a, PartySet b);
  std::string str() const;

 private:
  std::uint32_t bits_ = 0;
};

}  // namespace gampc
