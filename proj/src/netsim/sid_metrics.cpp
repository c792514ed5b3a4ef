#include <algorithm>

#include "gampc/netsim/metrics.hpp"
#include "gampc/netsim/sid.hpp"

namespace gampc {

std::string_view tag_name(Tag t) {
  static constexpr std::string_view names[] = {
      "ping",       "acast.inp",  "acast.echo", "acast.ready",  "acast.out",     "aba.vote",
      "aba.decide", "aba.timer",  "vss.deal",   "vss.out",      "pvss.dist",     "pvss.test",
      "svss.dist",  "aicp.poly",  "aicp.point", "aicp.received", "aicp.revealpoly", "aicp.revealpoint",
      "aicp.dummy", "rec.share",  "triples.req", "triples.out", "ready",         "local"};
  static_assert(std::size(names) == kTagCount);
  return names[static_cast<std::size_t>(t)];
}

std::string_view tag_protocol(Tag t) {
  switch (t) {
    case Tag::AcastInp:
    case Tag::AcastEcho:
    case Tag::AcastReady:
    case Tag::AcastOut:
      return "acast";
    case Tag::AbaVote:
    case Tag::AbaDecide:
    case Tag::AbaTimer:
      return "faba";
    case Tag::VssDeal:
    case Tag::VssOut:
      return "fvss";
    case Tag::PvssDist:
    case Tag::PvssTest:
      return "pvss";
    case Tag::SvssDist:
      return "svss";
    case Tag::AicpPoly:
    case Tag::AicpPoint:
    case Tag::AicpReceived:
    case Tag::AicpRevealPoly:
    case Tag::AicpRevealPoint:
    case Tag::AicpDummy:
      return "aicp";
    case Tag::RecShare:
      return "perrec";
    case Tag::TriplesReq:
    case Tag::TriplesOut:
      return "ftriples";
    case Tag::Ready:
      return "term";
    default:
      return "misc";
  }
}

SidRegistry::SidRegistry() { nodes_.push_back({"", 0, 0}); }

SidId SidRegistry::child(SidId parent, std::string_view label) {
  std::string p = nodes_[parent].path;
  if (!p.empty()) p += '/';
  p += label;
  auto it = index_.find(p);
  if (it != index_.end()) return it->second;
  auto id = static_cast<SidId>(nodes_.size());
  nodes_.push_back({p, parent, 0});
  index_.emplace(std::move(p), id);
  return id;
}

SidId SidRegistry::path(std::string_view full) {
  SidId cur = root();
  std::size_t start = 0;
  while (start <= full.size() && !full.empty()) {
    std::size_t slash = full.find('/', start);
    if (slash == std::string_view::npos) slash = full.size();
    cur = child(cur, full.substr(start, slash - start));
    start = slash + 1;
  }
  return cur;
}

bool SidRegistry::descends(SidId s, SidId ancestor) const {
  while (true) {
    if (s == ancestor) return true;
    if (s == root()) return false;
    s = nodes_[s].parent;
  }
}

std::string_view SidRegistry::head(SidId s) const {
  std::string_view p = nodes_[s].path;
  return p.substr(0, p.find('/'));
}

Counters& Counters::operator+=(const Counters& o) {
  envelopes += o.envelopes;
  field_elems_sent += o.field_elems_sent;
  bytes_sent += o.bytes_sent;
  fvss_calls += o.fvss_calls;
  faba_calls += o.faba_calls;
  facast_calls += o.facast_calls;
  perrec_calls += o.perrec_calls;
  hops += o.hops;
  iterations += o.iterations;
  return *this;
}

nlohmann::json Counters::to_json() const {
  return {{"envelopes", envelopes},       {"field_elems_sent", field_elems_sent},
          {"bytes_sent", bytes_sent},     {"fvss_calls", fvss_calls},
          {"faba_calls", faba_calls},     {"facast_calls", facast_calls},
          {"perrec_calls", perrec_calls}, {"hops", hops},
          {"iterations", iterations}};
}

Counters& RunMetrics::slot(std::string_view protocol, SidId sid) {
  return table_[{std::string(protocol), std::string(sids_->head(sid))}];
}

void RunMetrics::on_send(const Envelope& e) {
  Counters& c = slot(tag_protocol(e.tag), e.sid);
  c.envelopes += 1;
  c.field_elems_sent += e.field_elems;
  c.bytes_sent += e.bytes;
  if (fe_by_sid_.size() <= e.sid) {
    fe_by_sid_.resize(e.sid + 1024, 0);
    env_by_sid_.resize(e.sid + 1024, 0);
  }
  fe_by_sid_[e.sid] += e.field_elems;
  env_by_sid_[e.sid] += 1;
}

void RunMetrics::on_event(Event ev, std::string_view protocol, SidId sid) {
  if (!seen_events_.insert({static_cast<int>(ev), sid}).second) return;
  Counters& c = slot(protocol, sid);
  switch (ev) {
    case Event::FvssCall: ++c.fvss_calls; break;
    case Event::FabaCall: ++c.faba_calls; break;
    case Event::FacastCall: ++c.facast_calls; break;
    case Event::PerrecCall: ++c.perrec_calls; break;
    case Event::Hop: ++c.hops; break;
    case Event::Iteration: ++c.iterations; break;
  }
}

Counters RunMetrics::total() const {
  Counters t;
  for (const auto& [k, c] : table_) t += c;
  return t;
}

Counters RunMetrics::protocol(std::string_view name) const {
  Counters t;
  for (const auto& [k, c] : table_)
    if (k.first == name) t += c;
  return t;
}

Counters RunMetrics::session(std::string_view head) const {
  Counters t;
  for (const auto& [k, c] : table_)
    if (k.second == head) t += c;
  return t;
}

std::uint64_t RunMetrics::field_elems_under(SidId prefix) const {
  std::uint64_t sum = 0;
  for (SidId s = 0; s < fe_by_sid_.size(); ++s)
    if (fe_by_sid_[s] && sids_->descends(s, prefix)) sum += fe_by_sid_[s];
  return sum;
}

std::uint64_t RunMetrics::envelopes_under(SidId prefix) const {
  std::uint64_t sum = 0;
  for (SidId s = 0; s < env_by_sid_.size(); ++s)
    if (env_by_sid_[s] && sids_->descends(s, prefix)) sum += env_by_sid_[s];
  return sum;
}

nlohmann::json RunMetrics::to_json() const {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& [k, c] : table_) {
    nlohmann::json row = c.to_json();
    row["protocol"] = k.first;
    row["session"] = k.second;
    per.push_back(row);
  }
  return {{"total", total().to_json()}, {"by_protocol_session", per}};
}

}  // namespace gampc
