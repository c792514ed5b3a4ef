#include "gampc/mult/mult.hpp"

#include <algorithm>

#include "gampc/bcast/aba.hpp"
#include "gampc/vss/vss.hpp"

namespace gampc {

bool MultState::waitlisted(Party& p, int iter, PartyId j) const {
  auto it = w.find(iter);
  if (it == w.end() || !it->second.members.contains(j)) return false;
  return vss_result(p, it->second.partition.at(j)) == nullptr;
}

bool MultState::barred(Party& p, int iter, PartyId j) const {
  if (gd.contains(j)) return true;
  for (const auto& [r, set] : ld)
    if (r < iter && set.contains(j)) return true;
  for (const auto& [r, wl] : w)
    if (r < iter && waitlisted(p, r, j)) return true;
  return false;
}

PartySet MultState::discarded_any() const {
  PartySet out;
  for (const auto& [r, set] : ld) out |= set;
  return out;
}

int mult_iteration_budget(const AdversaryStructure& z) {
  const int t = z.t();
  return t * (t * z.n() + 1) + 1;
}

namespace {

// Cheater identification for one failed iteration with conflicting instances
// Z (run rz) and Z' (run rzp). Members of Selected_Z share partitions
// d^(jk) = sum over claimed_Z[j] ∩ claimed_Z'[k], members of Selected_Z' share
// e^(kj) symmetrically; one VSS per party carries its d blocks (k in
// Selected_Z' order) followed by its e blocks (j in Selected_Z order).
struct CheaterId {
  std::shared_ptr<MultState> st;
  SidId base = 0;
  int iter = 0;
  std::size_t m = 0;
  SummandRun rz, rzp;
  std::vector<ShareVector> a, b;
  std::map<PartyId, SidId> part;
};

struct Partitions {
  std::map<PartyId, std::vector<ShareVector>> d, e;
};

bool in_selected(const SummandRun& r, PartyId j) { return r.claimed.count(j) != 0; }

Partitions split_partitions(Party& p, const CheaterId& c, PartyId j, const std::vector<ShareVector>& flat) {
  const bool dz = in_selected(c.rz, j), ez = in_selected(c.rzp, j);
  const std::size_t blocks = (dz ? c.rzp.selected.size() : 0) + (ez ? c.rz.selected.size() : 0);
  // a malformed batch counts as all-zero partitions (the checks then catch the dealer)
  std::vector<ShareVector> v = flat;
  if (v.size() != blocks * c.m) v.assign(blocks * c.m, zero_view(p.ctx().s, p.id()));
  Partitions out;
  std::size_t at = 0;
  auto take = [&] {
    std::vector<ShareVector> blk(v.begin() + at, v.begin() + at + c.m);
    at += c.m;
    return blk;
  };
  if (dz)
    for (PartyId k : c.rzp.selected) out.d[k] = take();
  if (ez)
    for (PartyId k : c.rz.selected) out.e[k] = take();
  return out;
}

void mark(Party& p, const CheaterId& c, PartyId j) {
  c.st->ld[c.iter].insert(j);
  p.signal(c.st->root);
}

bool any_nonzero(const std::vector<Fp>& v) {
  return std::any_of(v.begin(), v.end(), [](Fp x) { return !x.is_zero(); });
}

// c^(j) minus the sum of j's own partitions must open to zero.
Task<void> check_sum(Party& p, std::shared_ptr<CheaterId> c, PartyId j, bool z_side) {
  auto flat = co_await vss_output(p, c->part.at(j));
  Partitions parts = split_partitions(p, *c, j, flat);
  const SummandRun& run = z_side ? c->rz : c->rzp;
  const auto& blocks = z_side ? parts.d : parts.e;
  std::vector<ShareVector> batch = run.parts.at(j);
  for (const auto& [k, blk] : blocks)
    for (std::size_t i = 0; i < c->m; ++i) batch[i] = batch[i] - blk[i];
  auto& sids = p.sids();
  SidId sid = sids.child(sids.child(c->base, z_side ? "sum_z" : "sum_zp"), j);
  auto v = co_await rec(p, sid, std::move(batch));
  if (any_nonzero(v)) mark(p, *c, j);
}

// d^(jk) against e^(kj); on a mismatch both are opened together with the
// overlapping group shares of a and b, and whoever lied is discarded.
Task<void> check_cross(Party& p, std::shared_ptr<CheaterId> c, PartyId j, PartyId k) {
  auto fj = co_await vss_output(p, c->part.at(j));
  auto fk = co_await vss_output(p, c->part.at(k));
  const std::vector<ShareVector> d = split_partitions(p, *c, j, fj).d.at(k);
  const std::vector<ShareVector> e = split_partitions(p, *c, k, fk).e.at(j);
  auto& sids = p.sids();
  SidId sid = sids.child(sids.child(sids.child(c->base, "cross"), j), k);

  std::vector<ShareVector> diff;
  for (std::size_t i = 0; i < c->m; ++i) diff.push_back(d[i] - e[i]);
  auto dv = co_await rec(p, sids.child(sid, "diff"), std::move(diff));
  if (!any_nonzero(dv)) co_return;

  std::vector<ShareVector> both = d;
  both.insert(both.end(), e.begin(), e.end());
  auto opened = co_await rec(p, sids.child(sid, "open"), std::move(both));

  const int h = static_cast<int>(p.ctx().s.size());
  auto overlap = pair_intersection(c->rz.claimed.at(j), c->rzp.claimed.at(k));
  std::uint64_t mask = 0;
  for (int pq : overlap) mask |= (std::uint64_t{1} << (pq / h)) | (std::uint64_t{1} << (pq % h));
  std::vector<ShareVector> ab = c->a;
  ab.insert(ab.end(), c->b.begin(), c->b.end());
  auto g = co_await open_groups(p, sids.child(sid, "groups"), std::move(ab), mask);

  bool d_lies = false, e_lies = false;
  for (std::size_t i = 0; i < c->m; ++i) {
    Fp truth;
    for (int pq : overlap) truth += g.at(pq / h)[i] * g.at(pq % h)[c->m + i];
    d_lies |= opened[i] != truth;
    e_lies |= opened[c->m + i] != truth;
  }
  if (d_lies) mark(p, *c, j);
  if (e_lies) mark(p, *c, k);
}

void start_cheater_id(Party& p, SidId sid, int iter, std::shared_ptr<MultState> st, const SummandRun& rz,
                      const SummandRun& rzp, const std::vector<ShareVector>& a, const std::vector<ShareVector>& b) {
  auto c = std::make_shared<CheaterId>();
  c->st = st;
  c->base = p.sids().child(sid, "cid");
  c->iter = iter;
  c->m = a.size();
  c->rz = rz;
  c->rzp = rzp;
  c->a = a;
  c->b = b;

  MultState::WaitList wl;
  for (PartyId j : rz.selected) wl.members.insert(j);
  for (PartyId j : rzp.selected) wl.members.insert(j);
  SidId part_base = p.sids().child(c->base, "part");
  for (PartyId j : wl.members.members()) wl.partition[j] = vss_open(p, part_base, j, j);
  c->part = wl.partition;
  st->w[iter] = wl;

  const PartyId me = p.id();
  const auto& spec = p.ctx().s;
  if (wl.members.contains(me) && !(p.strategy() && p.strategy()->withhold(p, {Hook::Partition, sid, 0, iter}))) {
    std::vector<Fp> values;
    auto append = [&](const std::vector<int>& pairs) {
      auto s = summand_sums(spec, pairs, a, b);
      values.insert(values.end(), s.begin(), s.end());
    };
    if (in_selected(rz, me))
      for (PartyId k : rzp.selected) append(pair_intersection(rz.claimed.at(me), rzp.claimed.at(k)));
    if (in_selected(rzp, me))
      for (PartyId k : rz.selected) append(pair_intersection(rzp.claimed.at(me), rz.claimed.at(k)));
    vss_deal_secrets(p, wl.partition[me], values);
  }

  for (PartyId j : rz.selected) p.spawn(check_sum(p, c, j, true));
  for (PartyId k : rzp.selected) p.spawn(check_sum(p, c, k, false));
  for (PartyId j : rz.selected)
    for (PartyId k : rzp.selected) p.spawn(check_cross(p, c, j, k));
}

}  // namespace

Task<MultCiResult> multci_run(Party& p, SidId sid, int iter, std::vector<ShareVector> a, std::vector<ShareVector> b,
                              std::shared_ptr<MultState> st) {
  const auto& zsets = p.ctx().z.sets();
  const std::size_t M = a.size();
  auto& sids = p.sids();
  MultCiResult res;

  SidId zbase = sids.child(sid, "z");
  for (std::size_t zi = 0; zi < zsets.size(); ++zi) {
    SummandParams prm;
    prm.excluded = zsets[zi] | st->gd;
    prm.eligible = [&p, st, iter](PartyId j) { return !st->barred(p, iter, j); };
    prm.watch = {st->root};
    prm.instance = static_cast<int>(zi);
    prm.iter = iter;
    auto run = co_await summand_loop(p, sids.child(zbase, static_cast<long long>(zi)), a, b, std::move(prm));
    res.runs.push_back(std::move(run));
  }

  std::vector<ShareVector> diffs;
  for (std::size_t zi = 1; zi < zsets.size(); ++zi)
    for (std::size_t m = 0; m < M; ++m) diffs.push_back(res.runs[zi].c[m] - res.runs[0].c[m]);
  std::vector<Fp> opened;
  if (!diffs.empty()) opened = co_await rec(p, sids.child(sid, "diff"), std::move(diffs));

  for (std::size_t zi = 1; zi < zsets.size() && res.conflict_z < 0; ++zi)
    for (std::size_t m = 0; m < M; ++m)
      if (!opened[(zi - 1) * M + m].is_zero()) {
        res.conflict_z = static_cast<int>(zi);
        break;
      }
  if (res.conflict_z < 0) {
    res.success = true;
    res.c = res.runs[0].c;
    co_return res;
  }
  start_cheater_id(p, sid, iter, st, res.runs[res.conflict_z], res.runs[0], a, b);
  co_return res;
}

Task<MultResult> mult_run(Party& p, SidId sid, std::vector<ShareVector> a, std::vector<ShareVector> b) {
  const auto& z = p.ctx().z;
  const int budget = mult_iteration_budget(z);
  const int period = z.t() * z.n() + 1;
  auto& sids = p.sids();
  auto st = std::make_shared<MultState>();
  st->root = sid;

  for (int iter = 1;; ++iter) {
    if (iter > budget) throw IterationBudgetExceeded("mult_run: iteration budget exceeded");
    if (iter % period == 0) {
      auto evidence = [&](PartyId j) { return !st->gd.contains(j) && st->discarded_any().contains(j); };
      std::vector<SidId> watch{sid};
      PartySet ones = co_await acs_run(p, sids.child(sids.child(sid, "gd"), iter), AcsMode::UntilAny, watch, evidence);
      if (!ones.empty()) st->gd.insert(ones.min());
    }
    SidId it = sids.child(sids.child(sid, "it"), iter);
    p.sim().metrics().on_event(Event::Iteration, "mult", it);
    auto r = co_await multci_run(p, it, iter, a, b, st);
    if (r.success) {
      MultResult out;
      out.c = std::move(r.c);
      out.iterations = iter;
      out.state = st;
      co_return out;
    }
  }
}

Task<TriplesResult> pertriples_run(Party& p, SidId sid, std::size_t m) {
  auto& sids = p.sids();
  auto rs = co_await random_sharings(p, sids.child(sid, "gen"), 2 * m);
  std::vector<ShareVector> a(rs.values.begin(), rs.values.begin() + m);
  std::vector<ShareVector> b(rs.values.begin() + m, rs.values.end());
  auto mr = co_await mult_run(p, sids.child(sid, "mult"), a, b);
  TriplesResult out;
  out.cs = rs.cs;
  out.iterations = mr.iterations;
  out.gd = mr.state->gd;
  for (std::size_t i = 0; i < m; ++i) out.triples.push_back({a[i], b[i], mr.c[i]});
  co_return out;
}

}  // namespace gampc
