#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gampc/netsim/types.hpp"

namespace gampc {

// Interned session ids. Paths are "/"-joined labels; the root (id 0) is "".
class SidRegistry {
 public:
  SidRegistry();

  static constexpr SidId root() { return 0; }
  SidId child(SidId parent, std::string_view label);
  SidId child(SidId parent, long long label) { return child(parent, std::string_view(std::to_string(label))); }
  SidId path(std::string_view full);  // interns every prefix

  const std::string& str(SidId s) const { return nodes_[s].path; }
  SidId parent(SidId s) const { return nodes_[s].parent; }
  bool descends(SidId s, SidId ancestor) const;
  // first path component ("prep", "inp", ...); "" for the root
  std::string_view head(SidId s) const;
  std::size_t size() const { return nodes_.size(); }

  // Owner party of a session (acast sender, VSS dealer); 0 if none.
  PartyId owner(SidId s) const { return nodes_[s].owner; }
  void set_owner(SidId s, PartyId p) { nodes_[s].owner = p; }

 private:
  struct Node {
    std::string path;
    SidId parent;
    PartyId owner;
  };
  std::vector<Node> nodes_;
  std::unordered_map<std::string, SidId> index_;
};

}  // namespace gampc
