#include "gampc/bcast/acast.hpp"

#include <unordered_map>

#include "gampc/netsim/sim.hpp"

namespace gampc {

AcastAction acast_step(AcastState& st, const AdversaryStructure& z, const AcastEvent& ev) {
  AcastAction act;
  auto ready = [&](const Words& m) {
    if (st.readied) return;
    st.readied = true;
    act.send_all.emplace_back(Tag::AcastReady, m);
  };
  switch (ev.kind) {
    case AcastKind::Input:
      act.send_all.emplace_back(Tag::AcastInp, ev.m);
      break;
    case AcastKind::Inp:
      if (ev.from == st.sender && !st.echoed) {
        st.echoed = true;
        act.send_all.emplace_back(Tag::AcastEcho, ev.m);
      }
      break;
    case AcastKind::Echo: {
      if (st.echo_seen.contains(ev.from)) break;
      st.echo_seen.insert(ev.from);
      PartySet& s = st.echoes[ev.m];
      s.insert(ev.from);
      if (z.complement_in(s)) ready(ev.m);
      break;
    }
    case AcastKind::Ready: {
      if (st.ready_seen.contains(ev.from)) break;
      st.ready_seen.insert(ev.from);
      PartySet& s = st.readies[ev.m];
      s.insert(ev.from);
      if (!z.covers(s)) ready(ev.m);  // amplification: some honest party is ready
      if (!st.output && z.complement_in(s)) act.output = st.output = ev.m;
      break;
    }
  }
  return act;
}

namespace {

struct AcastService : PartyService {
  std::unordered_map<SidId, AcastState> states;
};

// words on the wire: [field_elems, m...]
void apply(Party& p, SidId sid, AcastState& st, const AcastAction& act) {
  for (const auto& [tag, m] : act.send_all) p.send_all(sid, tag, m, static_cast<std::uint32_t>(m.at(0)));
  if (act.output) p.post(sid, Tag::AcastOut, st.sender, Words(act.output->begin() + 1, act.output->end()));
}

AcastState& state_for(Party& p, SidId sid) {
  auto& svc = p.service<AcastService>();
  auto [it, fresh] = svc.states.try_emplace(sid);
  if (fresh) it->second.sender = p.sids().owner(sid);
  return it->second;
}

void on_acast(Party& p, Envelope&& e) {
  if (e.w.empty()) return;  // malformed
  AcastState& st = state_for(p, e.sid);
  AcastKind kind = e.tag == Tag::AcastInp ? AcastKind::Inp : e.tag == Tag::AcastEcho ? AcastKind::Echo : AcastKind::Ready;
  apply(p, e.sid, st, acast_step(st, p.ctx().z, {kind, e.src, std::move(e.w)}));
}

[[maybe_unused]] const bool registered = [] {
  tag_handlers()[static_cast<std::size_t>(Tag::AcastInp)] = &on_acast;
  tag_handlers()[static_cast<std::size_t>(Tag::AcastEcho)] = &on_acast;
  tag_handlers()[static_cast<std::size_t>(Tag::AcastReady)] = &on_acast;
  return true;
}();

}  // namespace

SidId acast_session(SidRegistry& sids, SidId parent, std::string_view label, PartyId sender) {
  SidId s = sids.child(parent, label);
  sids.set_owner(s, sender);
  return s;
}

void acast_send(Party& p, SidId session, const Words& m, std::uint32_t field_elems) {
  if (p.sids().owner(session) != p.id()) throw std::logic_error("acast from a party that does not own the session");
  p.sim().metrics().on_event(Event::FacastCall, "acast", session);
  Words w;
  w.reserve(m.size() + 1);
  w.push_back(field_elems);
  w.insert(w.end(), m.begin(), m.end());
  AcastState& st = state_for(p, session);
  apply(p, session, st, acast_step(st, p.ctx().z, {AcastKind::Input, p.id(), std::move(w)}));
  p.drain();
}

const Words* acast_output(const Party& p, SidId session) {
  const Msg* m = p.find(session, Tag::AcastOut);
  return m ? &m->w : nullptr;
}

Task<Words> acast_await(Party& p, SidId session) {
  co_await p.until(session, [&] { return acast_output(p, session) != nullptr; });
  co_return *acast_output(p, session);
}

}  // namespace gampc
