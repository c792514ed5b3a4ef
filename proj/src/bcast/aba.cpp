#include "gampc/bcast/aba.hpp"

#include <unordered_set>

namespace gampc {

bool faba_output(const AbaOracleState& st, PartySet cs, PartySet corrupt) {
  std::optional<bool> common;
  bool agree = true;
  for (PartyId i : (cs - corrupt).members()) {
    bool v = st.votes.at(i);
    if (common && *common != v) agree = false;
    common = v;
  }
  if (agree && common) return *common;
  PartySet bad = cs & corrupt;
  // CS without corrupt members and split honest votes: not covered by the rule;
  // fall back to the smallest member of CS.
  return st.votes.at(bad.empty() ? cs.min() : bad.min());
}

std::optional<PartySet> faba_default_core(const AbaOracleState& st, const AdversaryStructure& z) {
  if (!z.complement_in(st.voters)) return std::nullopt;
  std::optional<PartySet> best;
  std::uint32_t v = st.voters.bits();
  for (std::uint32_t sub = v;; sub = (sub - 1) & v) {
    PartySet a(sub);
    if (z.complement_in(a) && (!best || PartySet::lex_less(a, *best))) best = a;
    if (sub == 0) break;
  }
  return best;
}

std::optional<std::pair<PartySet, bool>> faba_decide(const AbaOracleState& st, const AdversaryStructure& z,
                                                     PartySet corrupt, std::optional<PartySet> adversary_choice) {
  if (adversary_choice) {
    if (!z.complement_in(*adversary_choice) || !adversary_choice->subset_of(st.voters))
      throw std::invalid_argument("core set rejected: complement not in Z or non-voter included");
    return std::make_pair(*adversary_choice, faba_output(st, *adversary_choice, corrupt));
  }
  auto cs = faba_default_core(st, z);
  if (!cs) return std::nullopt;
  return std::make_pair(*cs, faba_output(st, *cs, corrupt));
}

void AbaOracle::deliver(Envelope&& e) {
  AbaOracleState& st = states_[e.sid];
  if (st.decided) return;
  if (e.tag == Tag::AbaVote) {
    if (e.src < 1 || e.src > sim_->n() || e.w.size() != 1 || st.voters.contains(e.src)) return;
    if (st.voters.empty()) sim_->metrics().on_event(Event::FabaCall, "faba", e.sid);
    st.voters.insert(e.src);
    st.votes[e.src] = e.w[0] != 0;
    try_decide(e.sid, st, false);
  } else if (e.tag == Tag::AbaTimer) {
    st.timer_pending = false;
    try_decide(e.sid, st, true);
  }
}

void AbaOracle::try_decide(SidId sid, AbaOracleState& st, bool timer_fired) {
  const auto& z = sim_->ctx().z;
  std::optional<std::pair<PartySet, bool>> d;
  if (Strategy* adv = sim_->strategy()) {
    std::optional<PartySet> choice = adv->choose_core_set(sid, st.voters);
    if (choice && z.complement_in(*choice) && choice->subset_of(st.voters)) {
      d = faba_decide(st, z, sim_->corrupt(), choice);
    } else if (timer_fired) {
      d = faba_decide(st, z, sim_->corrupt(), std::nullopt);
    } else if (!st.timer_pending && z.complement_in(st.voters)) {
      st.timer_pending = true;
      Envelope t;
      t.src = kAbaOracle;
      t.dst = kAbaOracle;
      t.sid = sid;
      t.tag = Tag::AbaTimer;
      sim_->net().send(std::move(t));
    }
  } else {
    d = faba_decide(st, z, sim_->corrupt(), std::nullopt);
  }
  if (!d) return;
  st.core_set = d->first;
  st.decided = d->second;
  for (PartyId i = 1; i <= sim_->n(); ++i) {
    Envelope out;
    out.src = kAbaOracle;
    out.dst = i;
    out.sid = sid;
    out.tag = Tag::AbaDecide;
    out.w = {d->first.bits(), d->second ? 1u : 0u};
    sim_->net().send(std::move(out));
  }
}

const AbaOracleState* AbaOracle::state(SidId sid) const {
  auto it = states_.find(sid);
  return it == states_.end() ? nullptr : &it->second;
}

AbaOracle& install_aba_oracle(Sim& sim) {
  if (auto* o = sim.oracle<AbaOracle>(kAbaOracle)) return *o;
  auto o = std::make_unique<AbaOracle>(sim);
  AbaOracle& ref = *o;
  sim.install(kAbaOracle, std::move(o));
  return ref;
}

namespace {
struct VoteLog : PartyService {
  std::unordered_set<SidId> voted;
};
}  // namespace

SidId aba_instance(SidRegistry& sids, SidId acs_base, PartyId j) { return sids.child(sids.child(acs_base, "aba"), j); }

void aba_vote(Party& p, SidId sid, bool b) {
  if (!p.service<VoteLog>().voted.insert(sid).second) return;
  install_aba_oracle(p.sim());
  std::uint64_t bit = b;
  if (Strategy* s = p.strategy()) {
    std::vector<Fp> v{Fp(bit)};
    s->tamper(p, {Hook::Vote, sid}, v);
    bit = v[0].is_zero() ? 0 : 1;
  }
  p.send(kAbaOracle, sid, Tag::AbaVote, {bit}, 0);
}

bool aba_voted(Party& p, SidId sid) { return p.service<VoteLog>().voted.count(sid) != 0; }

std::optional<std::pair<PartySet, bool>> aba_result(const Party& p, SidId sid) {
  const Msg* m = p.find(sid, Tag::AbaDecide, kAbaOracle);
  if (!m) return std::nullopt;
  return std::make_pair(PartySet(static_cast<std::uint32_t>(m->w[0])), m->w[1] != 0);
}

Task<PartySet> acs_run(Party& p, SidId base, AcsMode mode, std::vector<SidId> watch,
                       std::function<bool(PartyId)> evidence) {
  const int n = p.n();
  const auto& z = p.ctx().z;
  std::vector<SidId> inst(n + 1);
  for (PartyId j = 1; j <= n; ++j) inst[j] = aba_instance(p.sids(), base, j);
  watch.push_back(p.sids().child(base, "aba"));
  PartySet ones, decided;
  auto refresh = [&] {
    for (PartyId j = 1; j <= n; ++j) {
      if (decided.contains(j)) continue;
      if (auto r = aba_result(p, inst[j])) {
        decided.insert(j);
        if (r->second) ones.insert(j);
      }
    }
  };
  while (true) {
    refresh();
    bool stop_ones = mode == AcsMode::UntilAny ? !ones.empty() : z.complement_in(ones);
    for (PartyId j = 1; j <= n; ++j) {
      if (aba_voted(p, inst[j])) continue;
      if (stop_ones)
        aba_vote(p, inst[j], false);
      else if (evidence(j))
        aba_vote(p, inst[j], true);
    }
    if (decided.size() == n) co_return ones;
    int before_ones = ones.size(), before_dec = decided.size();
    co_await p.until(watch, [&] {
      refresh();
      if (decided.size() != before_dec || ones.size() != before_ones) return true;
      for (PartyId j = 1; j <= n; ++j)
        if (!aba_voted(p, inst[j]) && evidence(j)) return true;
      return false;
    });
  }
}

}  // namespace gampc
