#include "gampc/mult/stat_mult.hpp"

#include <algorithm>

namespace gampc {

Task<SummandRun> basicmult_run(Party& p, SidId sid, std::vector<ShareVector> a, std::vector<ShareVector> b,
                               PartySet gd, int iter) {
  SummandParams prm;
  prm.excluded = gd;
  prm.iter = iter;
  auto run = co_await summand_loop(p, sid, std::move(a), std::move(b), std::move(prm));
  co_return run;
}

Task<RandMultResult> randmultci_run(Party& p, SidId sid, std::size_t m, PartySet gd, int iter) {
  auto& sids = p.sids();
  const auto& spec = p.ctx().s;
  const int h = static_cast<int>(spec.size());
  auto gen = co_await random_sharings(p, sids.child(sid, "gen"), 3 * m + 1);
  const auto& v = gen.values;
  std::vector<ShareVector> a(v.begin(), v.begin() + m);
  std::vector<ShareVector> b(v.begin() + m, v.begin() + 2 * m);
  std::vector<ShareVector> b2(v.begin() + 2 * m, v.begin() + 3 * m);
  const ShareVector r_share = v[3 * m];

  // both products in one loop, so every selected party claims the same pairs for c and c'
  std::vector<ShareVector> xa = a;
  xa.insert(xa.end(), a.begin(), a.end());
  std::vector<ShareVector> xb = b;
  xb.insert(xb.end(), b2.begin(), b2.end());
  auto run = co_await basicmult_run(p, sids.child(sid, "bm"), xa, xb, gd, iter);

  RandMultResult res;
  res.gd = gd;
  res.r = co_await rec(p, sids.child(sid, "r"), r_share);
  const Fp r = res.r;

  std::vector<ShareVector> eb;
  for (std::size_t i = 0; i < m; ++i) eb.push_back(r * b[i] + b2[i]);
  auto e = co_await rec(p, sids.child(sid, "e"), std::move(eb));

  std::vector<ShareVector> db;
  for (std::size_t i = 0; i < m; ++i) db.push_back(e[i] * a[i] - r * run.c[i] - run.c[m + i]);
  res.d = co_await rec(p, sids.child(sid, "d"), std::move(db));

  if (std::all_of(res.d.begin(), res.d.end(), [](Fp x) { return x.is_zero(); })) {
    res.success = true;
    for (std::size_t i = 0; i < m; ++i) res.triples.push_back({a[i], b[i], run.c[i]});
    co_return res;
  }

  // open a, b, b' completely and every selected party's c^(j), c'^(j)
  std::vector<ShareVector> all = a;
  all.insert(all.end(), b.begin(), b.end());
  all.insert(all.end(), b2.begin(), b2.end());
  const std::uint64_t every = h >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << h) - 1;
  auto g = co_await open_groups(p, sids.child(sid, "open"), std::move(all), every);

  std::vector<ShareVector> parts;
  for (PartyId j : run.selected) parts.insert(parts.end(), run.parts[j].begin(), run.parts[j].end());
  auto pv = co_await rec(p, sids.child(sid, "parts"), std::move(parts));

  for (std::size_t s = 0; s < run.selected.size(); ++s) {
    PartyId j = run.selected[s];
    const Fp* cj = &pv[s * 2 * m];
    for (std::size_t i = 0; i < m; ++i) {
      Fp ab, ab2;
      for (int pq : run.claimed[j]) {
        ab += g[pq / h][i] * g[pq % h][m + i];
        ab2 += g[pq / h][i] * g[pq % h][2 * m + i];
      }
      if (r * cj[i] + cj[m + i] != r * ab + ab2) {
        res.gd.insert(j);
        break;
      }
    }
  }
  co_return res;
}

Task<TriplesResult> stattriples_run(Party& p, SidId sid, std::size_t m) {
  auto& sids = p.sids();
  PartySet gd;
  for (int iter = 1;; ++iter) {
    if (iter > p.n()) throw IterationBudgetExceeded("stattriples_run: iteration budget exceeded");
    SidId it = sids.child(sids.child(sid, "it"), iter);
    p.sim().metrics().on_event(Event::Iteration, "mult", it);
    auto r = co_await randmultci_run(p, it, m, gd, iter);
    if (r.success) {
      TriplesResult out;
      out.triples = std::move(r.triples);
      out.iterations = iter;
      out.gd = gd;
      co_return out;
    }
    gd = r.gd;
  }
}

}  // namespace gampc
