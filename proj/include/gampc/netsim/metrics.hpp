#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gampc/netsim/sid.hpp"

namespace gampc {

struct Counters {
  std::uint64_t envelopes = 0;
  std::uint64_t field_elems_sent = 0;
  std::uint64_t bytes_sent = 0;
  std::uint64_t fvss_calls = 0;
  std::uint64_t faba_calls = 0;
  std::uint64_t facast_calls = 0;
  std::uint64_t perrec_calls = 0;
  std::uint64_t hops = 0;
  std::uint64_t iterations = 0;

  Counters& operator+=(const Counters& o);
  nlohmann::json to_json() const;
};

enum class Event { FvssCall, FabaCall, FacastCall, PerrecCall, Hop, Iteration };

// Counters keyed by (protocol family, top-level session namespace). Counters only grow.
class RunMetrics {
 public:
  explicit RunMetrics(const SidRegistry& sids) : sids_(&sids) {}

  void on_send(const Envelope& e);
  // Session-level events are counted once per distinct sid.
  void on_event(Event ev, std::string_view protocol, SidId sid);

  const std::map<std::pair<std::string, std::string>, Counters>& table() const { return table_; }
  Counters total() const;
  Counters protocol(std::string_view name) const;
  Counters session(std::string_view head) const;
  // traffic under a session prefix (envelopes sent with a descendant sid)
  std::uint64_t field_elems_under(SidId prefix) const;
  std::uint64_t envelopes_under(SidId prefix) const;
  nlohmann::json to_json() const;

 private:
  Counters& slot(std::string_view protocol, SidId sid);
  const SidRegistry* sids_;
  std::map<std::pair<std::string, std::string>, Counters> table_;
  std::set<std::pair<int, SidId>> seen_events_;
  std::vector<std::uint64_t> fe_by_sid_;
  std::vector<std::uint64_t> env_by_sid_;
};

}  // namespace gampc
