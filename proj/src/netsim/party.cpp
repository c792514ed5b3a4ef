#include <algorithm>

#include "gampc/netsim/party.hpp"
#include "gampc/netsim/sim.hpp"

namespace gampc {

std::array<TagHandler, kTagCount>& tag_handlers() {
  static std::array<TagHandler, kTagCount> table{};
  return table;
}

Party::Party(Sim& sim, PartyId id, std::uint64_t seed) : sim_(&sim), id_(id), rng_(seed) {}

Party::~Party() { shutdown(); }

int Party::n() const { return sim_->n(); }
const Context& Party::ctx() const { return sim_->ctx(); }
SidRegistry& Party::sids() { return sim_->sids(); }

void Party::send(PartyId dst, SidId sid, Tag tag, Words w, std::uint32_t field_elems) {
  Envelope e;
  e.src = id_;
  e.dst = dst;
  e.sid = sid;
  e.tag = tag;
  e.w = std::move(w);
  e.field_elems = field_elems;
  if (!strategy_) {
    sim_->net().send(std::move(e));
    return;
  }
  std::vector<Envelope> out;
  strategy_->on_send(*this, std::move(e), out);
  for (auto& o : out) sim_->net().inject(std::move(o));
}

void Party::send_to(PartySet dsts, SidId sid, Tag tag, const Words& w, std::uint32_t field_elems) {
  for (PartyId j : dsts.members()) send(j, sid, tag, w, field_elems);
}

void Party::send_all(SidId sid, Tag tag, const Words& w, std::uint32_t field_elems) {
  for (PartyId j = 1; j <= n(); ++j) send(j, sid, tag, w, field_elems);
}

void Party::post(SidId sid, Tag tag, PartyId src, Words w) {
  inbox_[sid].push_back({src, tag, std::move(w)});
  wake(sid);
}

void Party::signal(SidId sid) { wake(sid); }

const std::vector<Msg>& Party::inbox(SidId sid) const {
  static const std::vector<Msg> empty;
  auto it = inbox_.find(sid);
  return it == inbox_.end() ? empty : it->second;
}

const Msg* Party::find(SidId sid, Tag tag, PartyId src) const {
  for (const Msg& m : inbox(sid))
    if (m.tag == tag && m.src == src) return &m;
  return nullptr;
}

const Msg* Party::find(SidId sid, Tag tag) const {
  for (const Msg& m : inbox(sid))
    if (m.tag == tag) return &m;
  return nullptr;
}

void Party::deliver(Envelope&& e) {
  if (shut_down_) return;
  if (strategy_ && !strategy_->on_deliver(*this, e)) return;
  if (TagHandler h = tag_handlers()[static_cast<std::size_t>(e.tag)])
    h(*this, std::move(e));
  else
    post(e.sid, e.tag, e.src, std::move(e.w));
  drain();
}

void Party::wake(SidId sid) {
  const SidRegistry& reg = sim_->sids();
  SidId s = sid;
  while (true) {
    auto it = waiters_.find(s);
    if (it != waiters_.end()) {
      for (WaitAwaiter* w : it->second) {
        if (!w->queued_) {
          w->queued_ = true;
          pending_.push_back(w);
        }
      }
    }
    if (s == SidRegistry::root()) break;
    s = reg.parent(s);
  }
}

void Party::unregister(WaitAwaiter* w) {
  if (w->registered_) {
    for (SidId k : w->keys_) {
      auto it = waiters_.find(k);
      if (it == waiters_.end()) continue;
      auto& v = it->second;
      v.erase(std::remove(v.begin(), v.end(), w), v.end());
      if (v.empty()) waiters_.erase(it);
    }
    w->registered_ = false;
  }
  if (w->queued_) {
    pending_.erase(std::remove(pending_.begin(), pending_.end(), w), pending_.end());
    w->queued_ = false;
  }
}

void Party::WaitAwaiter::await_suspend(std::coroutine_handle<> h) {
  handle_ = h;
  for (SidId k : keys_) party_->waiters_[k].push_back(this);
  registered_ = true;
}

Party::WaitAwaiter::~WaitAwaiter() {
  if (registered_ || queued_) party_->unregister(this);
}

void Party::drain() {
  if (draining_) return;
  draining_ = true;
  while (!pending_.empty()) {
    WaitAwaiter* w = pending_.front();
    pending_.pop_front();
    w->queued_ = false;
    if (!w->pred_()) continue;
    unregister(w);
    w->handle_.resume();
  }
  draining_ = false;
}

void Party::spawn(Task<void> t) {
  if (shut_down_) return;
  auto h = t.handle();
  roots_.push_back(std::move(t));
  if (roots_.size() >= roots_compact_at_) {
    std::erase_if(roots_, [](const Task<void>& r) { return r.done() && !r.handle().promise().error; });
    roots_compact_at_ = std::max<std::size_t>(64, roots_.size() * 2);
  }
  h.resume();
  drain();
}

void Party::shutdown() {
  if (shut_down_) return;
  shut_down_ = true;
  pending_.clear();
  for (auto& [k, v] : waiters_)
    for (WaitAwaiter* w : v) {
      w->registered_ = false;
      w->queued_ = false;
    }
  waiters_.clear();
  roots_.clear();
  services_.clear();
}

}  // namespace gampc
