#include "gampc/mpc/mpc.hpp"

#include <stdexcept>

#include "gampc/bcast/aba.hpp"
#include "gampc/mult/mult.hpp"
#include "gampc/mult/stat_mult.hpp"
#include "gampc/vss/vss.hpp"

namespace gampc {

void FtriplesOracle::deliver(Envelope&& e) {
  if (e.tag != Tag::TriplesReq || e.w.size() != 1 || e.src < 1 || e.src > sim_->n()) return;
  const std::size_t m = e.w[0];
  const auto& spec = sim_->ctx().s;
  auto it = banks_.find(e.sid);
  if (it == banks_.end()) {
    Bank b;
    auto& rng = sim_->rng();
    for (std::size_t l = 0; l < m; ++l) {
      Fp x = Fp::random(rng), y = Fp::random(rng);
      b.a.push_back(random_sharing(x, spec.size(), rng));
      b.b.push_back(random_sharing(y, spec.size(), rng));
      b.c.push_back(random_sharing(x * y, spec.size(), rng));
    }
    it = banks_.emplace(e.sid, std::move(b)).first;
  }
  const Bank& b = it->second;
  if (b.a.size() != m) return;
  std::vector<FullSharing> all = b.a;
  all.insert(all.end(), b.b.begin(), b.b.end());
  all.insert(all.end(), b.c.begin(), b.c.end());
  Envelope out;
  out.src = kTriplesOracle;
  out.dst = e.src;
  out.sid = e.sid;
  out.tag = Tag::TriplesOut;
  out.w = vss_encode_output(spec, e.src, all);
  out.field_elems = static_cast<std::uint32_t>(out.w.size() - 1);
  sim_->net().send(std::move(out));
}

const FtriplesOracle::Bank* FtriplesOracle::bank(SidId sid) const {
  auto it = banks_.find(sid);
  return it == banks_.end() ? nullptr : &it->second;
}

FtriplesOracle& install_ftriples_oracle(Sim& sim) {
  if (auto* o = sim.oracle<FtriplesOracle>(kTriplesOracle)) return *o;
  auto o = std::make_unique<FtriplesOracle>(sim);
  FtriplesOracle& ref = *o;
  sim.install(kTriplesOracle, std::move(o));
  return ref;
}

Task<ShareVector> beaver_mul(Party& p, SidId sid, ShareVector x, ShareVector y, Triple t) {
  auto& sids = p.sids();
  Fp d = co_await rec(p, sids.child(sid, "d"), x - t.a);
  Fp e = co_await rec(p, sids.child(sid, "e"), y - t.b);
  co_return add_constant(d * t.b + e * t.a + t.c, d * e);
}

PartySet ReadyTally::senders_of(Fp y) const {
  PartySet s;
  for (const auto& [j, v] : first)
    if (v == y) s.insert(j);
  return s;
}

namespace {

struct TermState : PartyService {
  bool sent = false;
};

void send_ready(Party& p, SidId term, Fp y) {
  auto& st = p.service<TermState>();
  if (st.sent) return;
  st.sent = true;
  Words w{y.value()};
  p.send_all(term, Tag::Ready, w, 1);
}

// Echo ready(y) once the senders of y are not a possible corrupt set; output
// once they include all honest parties for some Z.
Task<void> terminate(Party& p, SidId term, MpcPartyOut* out) {
  const auto& z = p.ctx().z;
  ReadyTally tally;
  std::size_t seen = 0;
  while (!out->output) {
    co_await p.until(term, [&] { return p.inbox(term).size() != seen; });
    const auto& box = p.inbox(term);
    for (; seen < box.size(); ++seen) {
      const Msg& m = box[seen];
      if (m.tag != Tag::Ready || m.w.size() != 1 || tally.first.count(m.src)) continue;
      tally.first.emplace(m.src, Fp(m.w[0]));
      Fp y(m.w[0]);
      PartySet a = tally.senders_of(y);
      if (!z.covers(a)) send_ready(p, term, y);
      if (z.complement_in(a) && !out->output) out->output = y;
    }
  }
}

Task<std::vector<Triple>> obtain_triples(Party& p, SidId prep, std::size_t m, TripleSource src) {
  std::vector<Triple> out;
  if (m == 0) co_return out;
  auto& sids = p.sids();
  switch (src) {
    case TripleSource::Oracle: {
      install_ftriples_oracle(p.sim());
      SidId sid = sids.child(prep, "triples");
      Words req{m};
      p.send(kTriplesOracle, sid, Tag::TriplesReq, req, 0);
      const Msg* msg = nullptr;
      co_await p.until(sid, [&] { return (msg = p.find(sid, Tag::TriplesOut, kTriplesOracle)) != nullptr; });
      auto v = vss_decode_output(p.ctx().s, p.id(), msg->w);
      if (!v || v->size() != 3 * m) throw std::runtime_error("malformed triple bundle");
      for (std::size_t l = 0; l < m; ++l) out.push_back({(*v)[l], (*v)[m + l], (*v)[2 * m + l]});
      co_return out;
    }
    case TripleSource::Perfect: {
      auto r = co_await pertriples_run(p, sids.child(prep, "tri"), m);
      co_return r.triples;
    }
    case TripleSource::Statistical: {
      auto r = co_await stattriples_run(p, sids.child(prep, "tri"), m);
      co_return r.triples;
    }
  }
  co_return out;
}

}  // namespace

Task<void> mpc_party(Party& p, const Circuit& c, std::vector<Fp> inputs, TripleSource triples, MpcPartyOut* out) {
  if (static_cast<int>(inputs.size()) != c.inputs_per_party) throw std::invalid_argument("mpc_party: input arity");
  auto& sids = p.sids();
  const int n = p.n();
  const auto& spec = p.ctx().s;
  const std::size_t ipp = inputs.size();
  SidId term = sids.path("term");
  p.spawn(terminate(p, term, out));

  const std::size_t mcount = static_cast<std::size_t>(c.mul_count());
  auto bank = co_await obtain_triples(p, sids.path("prep"), mcount, triples);

  // input phase
  SidId inp = sids.path("inp");
  SidId inp_vss = sids.child(inp, "vss");
  std::vector<SidId> vs(n + 1);
  for (PartyId j = 1; j <= n; ++j) vs[j] = vss_open(p, inp_vss, j, j);
  vss_deal_secrets(p, vs[p.id()], inputs);
  auto evidence = [&](PartyId j) {
    const auto* r = vss_result(p, vs[j]);
    return r && r->size() == ipp;
  };
  std::vector<SidId> watch{inp};
  out->cs = co_await acs_run(p, sids.child(inp, "acs"), AcsMode::UntilQualified, watch, evidence);
  out->inputs.assign(n + 1, {});
  for (PartyId j = 1; j <= n; ++j) {
    if (out->cs.contains(j)) {
      out->inputs[j] = co_await vss_output(p, vs[j]);
    } else {
      out->inputs[j].assign(ipp, default_share_view(Fp(0), spec, p.id()));
    }
  }

  // circuit evaluation
  std::vector<ShareVector> wires;
  for (PartyId j = 1; j <= n; ++j)
    for (std::size_t r = 0; r < ipp; ++r) wires.push_back(out->inputs[j][r]);
  SidId mul = sids.path("mul");
  for (const Gate& g : c.gates) {
    if (g.op == Gate::Op::Add) {
      wires.push_back(wires[g.left] + wires[g.right]);
      continue;
    }
    const std::size_t l = out->triples_used++;
    if (l >= bank.size()) throw std::logic_error("mpc_party: triple bank exhausted");
    auto z = co_await beaver_mul(p, sids.child(mul, static_cast<long long>(l)), wires[g.left], wires[g.right], bank[l]);
    wires.push_back(std::move(z));
  }

  Fp y = co_await rec(p, sids.path("out"), wires[c.output]);
  out->computed = y;
  send_ready(p, term, y);
}

std::optional<Fp> fampc_reference(const Circuit& c, const AdversaryStructure& z, const std::vector<Fp>& inputs,
                                  PartySet cs) {
  if (!z.complement_in(cs)) return std::nullopt;
  std::vector<Fp> x = inputs;
  for (PartyId j = 1; j <= c.parties; ++j)
    if (!cs.contains(j))
      for (int r = 0; r < c.inputs_per_party; ++r) x[(j - 1) * c.inputs_per_party + r] = Fp(0);
  return eval_plaintext(c, x);
}

namespace {

// Value of a sharing from the honest parties' views (first honest member per group).
Fp honest_value(const SharingSpec& s, PartySet honest, const std::vector<const ShareVector*>& views) {
  Fp sum;
  for (std::size_t q = 0; q < s.size(); ++q) {
    PartySet members = s.group(q) & honest;
    if (members.empty()) throw std::logic_error("group without honest member");
    sum += views[members.min()]->at(static_cast<int>(q));
  }
  return sum;
}

}  // namespace

MpcRunResult run_mpc(const MpcRunConfig& rc) {
  rc.circuit.validate();
  if (rc.circuit.parties != rc.z.n()) throw std::invalid_argument("run_mpc: circuit party count differs from n");
  if (static_cast<int>(rc.inputs.size()) != rc.circuit.num_inputs())
    throw std::invalid_argument("run_mpc: wrong number of inputs");
  Schedule sch;
  sch.seed = rc.seed;
  if (rc.fairness > 0) sch.fairness_bound = rc.fairness;
  sch.step_budget = 50'000'000;
  Sim sim(rc.z, rc.cfg, sch, rc.corrupt, rc.strategy);
  if (rc.cfg.vss == VssMode::Oracle) install_fvss_oracle(sim);
  install_aba_oracle(sim);
  sim.net().set_record_transcript(rc.record_transcript);

  const int n = sim.n();
  const int ipp = rc.circuit.inputs_per_party;
  std::vector<MpcPartyOut> outs(n + 1);
  for (PartyId i = 1; i <= n; ++i) {
    std::vector<Fp> mine(rc.inputs.begin() + (i - 1) * ipp, rc.inputs.begin() + i * ipp);
    sim.party(i).spawn(mpc_party(sim.party(i), rc.circuit, std::move(mine), rc.triples, &outs[i]));
  }
  sim.run();

  MpcRunResult res;
  res.seed = rc.seed;
  if (rc.record_transcript) res.fair = check_fairness(sim.net().transcript(), sch.fairness_bound);
  const PartySet honest = sim.honest();
  for (PartyId i : honest.members()) {
    const auto& o = outs[i];
    if (!o.output) continue;
    res.terminated.insert(i);
    if (!res.y) res.y = o.output;
    res.agreement &= *res.y == *o.output;
  }
  if (!res.agreement) res.y.reset();

  // CS and the realized inputs, from honest parties that got past the input phase
  PartySet have;
  for (PartyId i : honest.members())
    if (!outs[i].inputs.empty()) have.insert(i);
  if (have == honest) {
    res.cs = outs[honest.min()].cs;
    for (PartyId i : honest.members()) res.agreement &= outs[i].cs == res.cs;
    res.realized_inputs.assign(rc.inputs.size(), Fp(0));
    for (PartyId j : res.cs.members())
      for (int r = 0; r < ipp; ++r) {
        std::vector<const ShareVector*> views(n + 1, nullptr);
        for (PartyId i : honest.members()) views[i] = &outs[i].inputs[j][r];
        res.realized_inputs[(j - 1) * ipp + r] = honest_value(sim.ctx().s, honest, views);
      }
    res.reference = fampc_reference(rc.circuit, rc.z, res.realized_inputs, res.cs);
  }
  for (PartyId i : honest.members()) res.triples_used = std::max(res.triples_used, outs[i].triples_used);
  res.mul_perrec_sessions = sim.metrics().session("mul").perrec_calls;
  res.totals = sim.metrics().total();
  res.metrics = sim.metrics().to_json();
  return res;
}

nlohmann::json MpcRunResult::to_json() const {
  nlohmann::json j;
  j["y"] = y ? nlohmann::json(y->value()) : nlohmann::json(nullptr);
  j["CS"] = cs.members();
  j["terminated_parties"] = terminated.members();
  j["metrics"] = metrics;
  j["seed"] = seed;
  return j;
}

}  // namespace gampc
