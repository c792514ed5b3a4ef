#include "gampc/vss/svss.hpp"

#include "gampc/aicp/aicp.hpp"
#include "gampc/bcast/acast.hpp"
#include "gampc/vss/vss.hpp"
#include "vss_detail.hpp"

namespace gampc {

namespace {

using namespace vss_detail;

std::uint64_t common_groups(const SharingSpec& spec, PartyId i, PartyId j, PartyId k) {
  return spec.groups_of(i) & spec.groups_of(j) & spec.groups_of(k);
}

Task<void> participant(Party& p, SidId x, PartyId dealer) {
  const auto& ctx = p.ctx();
  auto& sids = p.sids();
  const Layout l = layout(p, x, false);
  const PartyId me = p.id();
  const int n = p.n();
  const std::size_t h = ctx.s.size();
  const auto my_groups = groups_list(ctx.s.groups_of(me));

  // AICP instances indexed by (signer, intermediary, receiver)
  auto idx = [n](PartyId i, PartyId j, PartyId k) { return (i * (n + 1) + j) * (n + 1) + k; };
  std::vector<SidId> ic((n + 1) * (n + 1) * (n + 1), 0);
  std::vector<std::vector<int>> ic_groups(ic.size());
  SidId ic_root = sids.child(x, "ic");
  for (PartyId i = 1; i <= n; ++i)
    for (PartyId j = 1; j <= n; ++j) {
      if (i == j) continue;
      SidId row = sids.child(sids.child(ic_root, i), j);
      for (PartyId k = 1; k <= n; ++k) {
        if (k == i || k == j) continue;
        std::uint64_t common = common_groups(ctx.s, i, j, k);
        if (!common) continue;
        ic[idx(i, j, k)] = aicp_open(p, row, std::to_string(k), {i, j, k});
        ic_groups[idx(i, j, k)] = groups_list(common);
      }
    }

  std::optional<std::vector<Fp>> mine;
  std::uint64_t kk = 0;
  std::vector<bool> ok_done(n + 1, false);
  std::optional<Core> core;
  PartySet c;
  bool verified = false, finished = false;

  auto my_block = [&](int q) {
    std::size_t at = std::find(my_groups.begin(), my_groups.end(), q) - my_groups.begin();
    return std::vector<Fp>(mine->begin() + at * kk, mine->begin() + (at + 1) * kk);
  };
  auto my_values = [&](const std::vector<int>& groups) {
    std::vector<Fp> v;
    for (int q : groups) {
      auto b = my_block(q);
      v.insert(v.end(), b.begin(), b.end());
    }
    return v;
  };

  auto step = [&]() -> bool {
    if (finished) return true;
    if (!mine) {
      if (const Msg* d = p.find(l.dist, Tag::SvssDist, dealer);
          d && !my_groups.empty() && !d->w.empty() && d->w.size() % my_groups.size() == 0) {
        mine = from_words(d->w);
        kk = d->w.size() / my_groups.size();
        for (PartyId j = 1; j <= n; ++j)
          for (PartyId k = 1; k <= n; ++k)
            if (SidId a = j != me ? ic[idx(me, j, k)] : 0) aicp_sign(p, a, my_values(ic_groups[idx(me, j, k)]));
      }
    }
    if (mine) {
      for (PartyId j = 1; j <= n; ++j) {
        if (j == me || ok_done[j]) continue;
        bool agree = true;
        for (PartyId k = 1; k <= n && agree; ++k) {
          SidId a = ic[idx(j, me, k)];
          if (!a) continue;
          auto sig = aicp_signature(p, a);
          if (!sig) {
            agree = false;
            break;
          }
          auto want = my_values(ic_groups[idx(j, me, k)]);
          if (sig->size() != want.size()) agree = false;
          for (std::size_t b = 0; agree && b < want.size(); ++b) agree = (*sig)[b].value == want[b];
        }
        if (agree) {
          ok_done[j] = true;
          acast_send(p, l.ok_sid(-1, me, j), {1}, 0);
        }
      }
    }
    if (!core)
      if (const Words* w = acast_output(p, l.core)) {
        core = parse_core(*w, h, false);
        if (!core || core->k > (1u << 20) || !core_admissible(core->c[0], ctx.s.groups(), ctx.z)) {
          finished = true;  // a malformed core set never completes
          return true;
        }
        c = core->c[0];
      }
    if (!core) return false;
    if (!verified) {
      if (!is_clique(ok_graph(p, l, -1, c), c)) return false;
      verified = true;
      for (PartyId a : c.members())
        for (PartyId b : c.members())
          for (PartyId k = 1; k <= n; ++k)
            if (a != b && !c.contains(k) && ic[idx(a, b, k)]) aicp_reveal(p, ic[idx(a, b, k)]);
    }
    const std::uint64_t K = core->k;
    std::vector<FullSharing> out(K, FullSharing{std::vector<Fp>(h)});
    for (int q : my_groups) {
      std::vector<Fp> v;
      if (c.contains(me)) {
        if (!mine || kk != K) return false;
        v = my_block(q);
      } else {
        PartySet cq = c & ctx.s.group(q);
        bool found = false;
        for (PartyId j : cq.members()) {
          PartySet signers = cq - PartySet{j};
          if (signers.empty()) continue;
          std::optional<std::vector<Fp>> agreed;
          bool ok = true;
          for (PartyId a : signers.members()) {
            SidId inst = ic[idx(a, j, me)];
            auto res = aicp_revealed(p, inst);
            if (!res || !*res) {
              ok = false;
              break;
            }
            const auto& groups = ic_groups[idx(a, j, me)];
            const auto& vals = **res;
            if (vals.size() != groups.size() * K) {
              ok = false;
              break;
            }
            std::size_t at = std::find(groups.begin(), groups.end(), q) - groups.begin();
            std::vector<Fp> blk(vals.begin() + at * K, vals.begin() + (at + 1) * K);
            if (agreed && *agreed != blk) {
              ok = false;
              break;
            }
            agreed = std::move(blk);
          }
          if (ok && agreed) {
            v = std::move(*agreed);
            found = true;
            break;
          }
        }
        if (!found) return false;
      }
      for (std::uint64_t b = 0; b < K; ++b) out[b].values[q] = v[b];
    }
    finished = true;
    p.post(x, Tag::VssOut, me, vss_encode_output(ctx.s, me, out));
    return true;
  };
  co_await p.until(x, step);
}

}  // namespace

void svss_join(Party& p, SidId sid, PartyId dealer) {
  acast_session(p.sids(), sid, "core", dealer);
  p.spawn(participant(p, sid, dealer));
}

void svss_deal(Party& p, SidId sid, std::vector<FullSharing> shares) {
  p.spawn(dealer_role(p, sid, std::move(shares), false, Tag::SvssDist));
}

std::size_t svss_aicp_instances(const SharingSpec& spec, int n) {
  std::size_t count = 0;
  for (PartyId i = 1; i <= n; ++i)
    for (PartyId j = 1; j <= n; ++j)
      for (PartyId k = 1; k <= n; ++k)
        if (i != j && k != i && k != j && common_groups(spec, i, j, k)) ++count;
  return count;
}

}  // namespace gampc
