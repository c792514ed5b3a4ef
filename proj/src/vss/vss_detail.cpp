#include "vss_detail.hpp"

#include "gampc/bcast/acast.hpp"

namespace gampc::vss_detail {

Layout layout(Party& p, SidId x, bool per_q) {
  auto& sids = p.sids();
  const int n = p.n();
  const int h = static_cast<int>(p.ctx().s.size());
  Layout l{sids.child(x, "dist"), sids.child(x, "test"), sids.child(x, "ok"), sids.child(x, "core"), n, {}};
  l.ok_ids.assign((h + 1) * (n + 1) * (n + 1), 0);
  for (int q = -1; q < (per_q ? h : 0); ++q) {
    SidId base = q < 0 ? l.ok : sids.child(l.ok, q);
    for (PartyId i = 1; i <= n; ++i) {
      SidId row = sids.child(base, i);
      for (PartyId j = 1; j <= n; ++j)
        if (i != j) l.ok_ids[((q + 1) * (n + 1) + i) * (n + 1) + j] = acast_session(sids, row, std::to_string(j), i);
    }
  }
  return l;
}

std::vector<int> groups_list(std::uint64_t mask) {
  std::vector<int> out;
  for (int q = 0; mask; ++q, mask >>= 1)
    if (mask & 1u) out.push_back(q);
  return out;
}

Graph ok_graph(Party& p, const Layout& l, int q, PartySet universe) {
  Graph g(p.n() + 1, 0);
  auto members = universe.members();
  for (PartyId a : members)
    for (PartyId b : members)
      if (a < b && acast_output(p, l.ok_sid(q, a, b)) && acast_output(p, l.ok_sid(q, b, a))) {
        g[a] |= PartySet{b}.bits();
        g[b] |= PartySet{a}.bits();
      }
  return g;
}

std::optional<Core> parse_core(const Words& w, std::size_t h, bool per_q) {
  const std::size_t want = per_q ? h : 1;
  if (w.size() != 1 + want) return std::nullopt;
  Core core{w[0], {}};
  for (std::size_t i = 0; i < want; ++i) core.c.push_back(PartySet(static_cast<std::uint32_t>(w[1 + i])));
  return core;
}

Task<void> dealer_role(Party& p, SidId x, std::vector<FullSharing> shares, bool per_q, Tag dist_tag) {
  const auto& ctx = p.ctx();
  auto& sids = p.sids();
  const Layout l = layout(p, x, per_q);
  const std::size_t h = ctx.s.size();
  const std::size_t k = shares.size();
  for (PartyId j = 1; j <= p.n(); ++j) {
    std::vector<Fp> payload;
    for (int q : groups_list(ctx.s.groups_of(j))) {
      std::vector<Fp> block;
      for (const auto& s : shares) block.push_back(s.values[q]);
      if (p.corrupt()) p.strategy()->tamper(p, {Hook::DealMember, x, q, j}, block);
      payload.insert(payload.end(), block.begin(), block.end());
    }
    if (!payload.empty())
      p.send(j, l.dist, dist_tag, to_words(payload), static_cast<std::uint32_t>(payload.size()));
  }
  acast_session(sids, x, "core", p.id());
  std::optional<Words> announce;
  co_await p.until(l.ok, [&] {
    Words w{k};
    if (!per_q) {
      auto c = find_core(ok_graph(p, l, -1, ctx.z.all()), ctx.z.all(), ctx.s.groups(), ctx.z);
      if (!c) return false;
      w.push_back(c->bits());
    } else {
      for (std::size_t q = 0; q < h; ++q) {
        PartySet s = ctx.s.group(q);
        auto c = find_core(ok_graph(p, l, static_cast<int>(q), s), s, {s}, ctx.z);
        if (!c) return false;
        w.push_back(c->bits());
      }
    }
    announce = std::move(w);
    return true;
  });
  acast_send(p, l.core, *announce, 0);
}

}  // namespace gampc::vss_detail
