#include "gampc/vss/pvss.hpp"

#include <bit>

#include "gampc/bcast/acast.hpp"
#include "gampc/netsim/sim.hpp"
#include "gampc/vss/vss.hpp"
#include "vss_detail.hpp"

namespace gampc {

bool is_clique(const Graph& g, PartySet c) {
  for (PartyId j : c.members())
    if ((c - PartySet{j}).bits() & ~g[j]) return false;
  return true;
}

bool core_admissible(PartySet c, const std::vector<PartySet>& targets, const AdversaryStructure& z) {
  for (PartySet s : targets)
    if (!z.covers(s - c)) return false;
  return true;
}

std::optional<PartySet> find_core(const Graph& g, PartySet universe, const std::vector<PartySet>& targets,
                                  const AdversaryStructure& z) {
  auto members = universe.members();
  const std::size_t m = members.size();
  if (m > 24) throw std::length_error("core set search limited to 24 candidates");
  std::optional<PartySet> best;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    PartySet c;
    for (std::size_t b = 0; b < m; ++b)
      if (mask >> b & 1u) c.insert(members[b]);
    if (best && (c.size() < best->size() || (c.size() == best->size() && !PartySet::lex_less(c, *best)))) continue;
    if (core_admissible(c, targets, z) && is_clique(g, c)) best = c;
  }
  return best;
}

namespace {

using namespace vss_detail;

Task<void> participant(Party& p, SidId x, PartyId dealer) {
  const auto& ctx = p.ctx();
  const Layout l = layout(p, x, ctx.cfg.per_q_core);
  const PartyId me = p.id();
  const int n = p.n();
  const std::size_t h = ctx.s.size();
  const bool per_q = ctx.cfg.per_q_core;
  const auto my_groups = groups_list(ctx.s.groups_of(me));

  std::optional<std::vector<Fp>> mine;  // group-major, k per group
  std::uint64_t k = 0;
  std::vector<bool> ok_done((n + 1) * (per_q ? h : 1), false);
  std::optional<Core> core;
  bool finished = false;

  // block of `from`'s test payload for group q (groups common to me and `from`)
  auto test_block = [&](PartyId from, int q, std::uint64_t kk) -> std::optional<std::vector<Fp>> {
    const Msg* m = p.find(l.test, Tag::PvssTest, from);
    if (!m) return std::nullopt;
    auto common = groups_list(ctx.s.groups_of(me) & ctx.s.groups_of(from));
    if (m->w.size() != common.size() * kk) return std::nullopt;
    for (std::size_t c = 0; c < common.size(); ++c)
      if (common[c] == q) {
        std::vector<Fp> v;
        for (std::uint64_t b = 0; b < kk; ++b) v.emplace_back(m->w[c * kk + b]);
        return v;
      }
    return std::nullopt;
  };
  auto my_block = [&](int q) {
    std::size_t idx = std::find(my_groups.begin(), my_groups.end(), q) - my_groups.begin();
    return std::vector<Fp>(mine->begin() + idx * k, mine->begin() + (idx + 1) * k);
  };

  auto step = [&]() -> bool {
    if (finished) return true;
    if (!mine) {
      if (const Msg* d = p.find(l.dist, Tag::PvssDist, dealer);
          d && !my_groups.empty() && !d->w.empty() && d->w.size() % my_groups.size() == 0) {
        mine = from_words(d->w);
        k = d->w.size() / my_groups.size();
        for (PartyId j = 1; j <= n; ++j) {
          if (j == me) continue;
          auto common = groups_list(ctx.s.groups_of(me) & ctx.s.groups_of(j));
          if (common.empty()) continue;
          std::vector<Fp> payload;
          for (int q : common) {
            auto b = my_block(q);
            payload.insert(payload.end(), b.begin(), b.end());
          }
          p.send(j, l.test, Tag::PvssTest, to_words(payload), static_cast<std::uint32_t>(payload.size()));
        }
      }
    }
    if (mine) {
      for (PartyId j = 1; j <= n; ++j) {
        if (j == me) continue;
        auto common = groups_list(ctx.s.groups_of(me) & ctx.s.groups_of(j));
        if (!per_q) {
          if (ok_done[j]) continue;
          bool agree = true;
          for (int q : common) {
            auto theirs = test_block(j, q, k);
            if (!theirs || *theirs != my_block(q)) {
              agree = false;
              break;
            }
          }
          if (agree) {
            ok_done[j] = true;
            acast_send(p, l.ok_sid(-1, me, j), {1}, 0);
          }
        } else {
          for (int q : common) {
            if (ok_done[q * (n + 1) + j]) continue;
            auto theirs = test_block(j, q, k);
            if (theirs && *theirs == my_block(q)) {
              ok_done[q * (n + 1) + j] = true;
              acast_send(p, l.ok_sid(q, me, j), {1}, 0);
            }
          }
        }
      }
    }
    if (!core)
      if (const Words* w = acast_output(p, l.core)) {
        core = parse_core(*w, h, per_q);
        if (!core) finished = true;  // malformed core: this session never completes
      }
    if (!core) return finished;
    // verify the announced core set(s) in the local graph(s)
    std::vector<PartySet> cq(h);
    for (std::size_t q = 0; q < h; ++q) {
      PartySet c = per_q ? core->c[q] : core->c[0];
      PartySet universe = per_q ? ctx.s.group(q) : ctx.z.all();
      if (!c.subset_of(universe) || !core_admissible(c, {ctx.s.group(q)}, ctx.z)) {
        finished = true;
        return true;
      }
      cq[q] = c;
    }
    if (!per_q) {
      if (!is_clique(ok_graph(p, l, -1, core->c[0]), core->c[0])) return false;
    } else {
      for (std::size_t q = 0; q < h; ++q)
        if (!is_clique(ok_graph(p, l, static_cast<int>(q), cq[q]), cq[q])) return false;
    }
    // shares: own ones inside the core, filtered test values outside
    const std::uint64_t kk = core->k;
    if (kk > (1u << 20)) {
      finished = true;
      return true;
    }
    std::vector<FullSharing> out(kk, FullSharing{std::vector<Fp>(h)});
    for (int q : my_groups) {
      PartySet c = cq[q] & ctx.s.group(q);
      std::vector<Fp> v;
      if (c.contains(me)) {
        if (!mine || k != kk) return false;
        v = my_block(q);
      } else {
        std::map<Words, PartySet> tally;
        bool found = false;
        for (PartyId j : c.members()) {
          auto b = test_block(j, q, kk);
          if (!b) continue;
          PartySet& s = tally[to_words(*b)];
          s.insert(j);
          if (ctx.z.covers(c - s)) {
            v = *b;
            found = true;
            break;
          }
        }
        if (!found) return false;
      }
      for (std::uint64_t b = 0; b < kk; ++b) out[b].values[q] = v[b];
    }
    finished = true;
    p.post(x, Tag::VssOut, me, vss_encode_output(ctx.s, me, out));
    return true;
  };
  co_await p.until(x, step);
}

}  // namespace

void pvss_join(Party& p, SidId sid, PartyId dealer) {
  acast_session(p.sids(), sid, "core", dealer);
  p.spawn(participant(p, sid, dealer));
}

void pvss_deal(Party& p, SidId sid, std::vector<FullSharing> shares) {
  p.spawn(dealer_role(p, sid, std::move(shares), p.ctx().cfg.per_q_core, Tag::PvssDist));
}

}  // namespace gampc
