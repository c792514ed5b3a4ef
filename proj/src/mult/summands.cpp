#include "gampc/mult/summands.hpp"

#include <algorithm>
#include <stdexcept>

#include "gampc/bcast/aba.hpp"
#include "gampc/vss/vss.hpp"

namespace gampc {

std::vector<int> local_pairs(const SharingSpec& s, PartyId j) {
  const int h = static_cast<int>(s.size());
  std::vector<int> out;
  for (int p = 0; p < h; ++p)
    if (s.member(j, p))
      for (int q = 0; q < h; ++q)
        if (s.member(j, q)) out.push_back(p * h + q);
  return out;
}

std::vector<int> pair_intersection(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

bool summands_coverable(const AdversaryStructure& z, int k) {
  SharingSpec s(z);
  for (PartySet sp : s.groups())
    for (PartySet sq : s.groups())
      if (!q_condition(sp & sq, z, k)) return false;
  return true;
}

std::vector<Fp> summand_sums(const SharingSpec& s, std::span<const int> pairs, const std::vector<ShareVector>& a,
                             const std::vector<ShareVector>& b) {
  const int h = static_cast<int>(s.size());
  std::vector<Fp> out(a.size());
  for (std::size_t m = 0; m < a.size(); ++m)
    for (int pq : pairs) out[m] += a[m].at(pq / h) * b[m].at(pq % h);
  return out;
}

Task<SummandRun> summand_loop(Party& p, SidId sid, std::vector<ShareVector> a, std::vector<ShareVector> b,
                              SummandParams prm) {
  if (a.size() != b.size()) throw std::invalid_argument("summand_loop: batch size mismatch");
  const auto& spec = p.ctx().s;
  const int n = p.n();
  const int h = static_cast<int>(spec.size());
  const std::size_t M = a.size();
  auto& sids = p.sids();

  std::vector<std::vector<int>> local(n + 1);
  for (PartyId j = 1; j <= n; ++j) local[j] = local_pairs(spec, j);
  std::vector<char> remaining(static_cast<std::size_t>(h) * h, 1);
  std::size_t left = remaining.size();
  PartySet selected;
  SummandRun run;

  SidId hops = sids.child(sid, "hop");
  for (int hop = 1; left > 0; ++hop) {
    SidId hs = sids.child(hops, hop);
    p.sim().metrics().on_event(Event::Hop, "mult", hs);
    run.hops = hop;

    std::vector<std::vector<int>> avail(n + 1);
    for (PartyId j = 1; j <= n; ++j)
      for (int pq : local[j])
        if (remaining[pq]) avail[j].push_back(pq);

    SidId vss_base = sids.child(hs, "vss");
    std::vector<SidId> vs(n + 1, 0);
    for (PartyId j = 1; j <= n; ++j)
      if (!selected.contains(j) && !prm.excluded.contains(j) && !avail[j].empty())
        vs[j] = vss_open(p, vss_base, j, j);

    const PartyId me = p.id();
    if (vs[me]) {
      auto sums = summand_sums(spec, avail[me], a, b);
      if (Strategy* s = p.strategy()) s->tamper(p, {Hook::Summand, hs, prm.instance, prm.iter}, sums);
      vss_deal_secrets(p, vs[me], sums);
    }

    auto evidence = [&](PartyId j) {
      if (!vs[j]) return false;
      if (prm.eligible && !prm.eligible(j)) return false;
      const auto* out = vss_result(p, vs[j]);
      return out && out->size() == M;
    };
    std::vector<SidId> watch = prm.watch;
    watch.push_back(hs);
    PartySet ones = co_await acs_run(p, sids.child(hs, "acs"), AcsMode::UntilAny, watch, evidence);
    if (ones.empty()) throw std::logic_error("summand_loop: ACS decided no party");
    PartyId j = ones.members().front();
    if (!vs[j]) throw std::logic_error("summand_loop: ineligible party selected");

    auto parts = co_await vss_output(p, vs[j]);
    run.selected.push_back(j);
    run.claimed[j] = avail[j];
    run.parts[j] = std::move(parts);
    for (int pq : avail[j]) {
      remaining[pq] = 0;
      --left;
    }
    selected.insert(j);
  }

  run.c.assign(M, zero_view(spec, p.id()));
  for (PartyId j : run.selected)
    for (std::size_t m = 0; m < M; ++m) run.c[m] = run.c[m] + run.parts[j][m];
  co_return run;
}

Task<RandomSharings> random_sharings(Party& p, SidId sid, std::size_t count) {
  const int n = p.n();
  auto& sids = p.sids();
  SidId vss_base = sids.child(sid, "vss");
  std::vector<SidId> vs(n + 1);
  for (PartyId j = 1; j <= n; ++j) vs[j] = vss_open(p, vss_base, j, j);

  std::vector<Fp> mine(count);
  for (Fp& x : mine) x = Fp::random(p.rng());
  vss_deal_secrets(p, vs[p.id()], mine);

  auto evidence = [&](PartyId j) {
    const auto* out = vss_result(p, vs[j]);
    return out && out->size() == count;
  };
  std::vector<SidId> watch{sid};
  RandomSharings r;
  r.cs = co_await acs_run(p, sids.child(sid, "acs"), AcsMode::UntilQualified, watch, evidence);
  r.values.assign(count, zero_view(p.ctx().s, p.id()));
  for (PartyId j : r.cs.members()) {
    auto v = co_await vss_output(p, vs[j]);
    if (v.size() != count) throw std::logic_error("random_sharings: malformed batch in CS");
    for (std::size_t m = 0; m < count; ++m) r.values[m] = r.values[m] + v[m];
  }
  co_return r;
}

Task<std::map<int, std::vector<Fp>>> open_groups(Party& p, SidId sid, std::vector<ShareVector> xs,
                                                 std::uint64_t groups) {
  const auto& spec = p.ctx().s;
  const int h = static_cast<int>(spec.size());
  std::map<int, std::vector<Fp>> out;
  // own groups first, so no party waits before sending
  for (int pass = 0; pass < 2; ++pass)
    for (int q = 0; q < h; ++q) {
      if (!((groups >> q) & 1u) || spec.member(p.id(), q) != (pass == 0)) continue;
      std::vector<Fp> mine;
      if (pass == 0)
        for (const auto& x : xs) mine.push_back(x.at(q));
      auto v = co_await rec_share(p, p.sids().child(sid, q), q, std::move(mine));
      if (v.size() != xs.size()) throw std::runtime_error("open_groups: wrong batch length");
      out[q] = std::move(v);
    }
  co_return out;
}

}  // namespace gampc
