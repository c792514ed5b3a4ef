#include "gampc/aicp/aicp.hpp"

#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "gampc/bcast/acast.hpp"
#include "gampc/netsim/sim.hpp"
#include "gampc/sharing/sharing.hpp"

namespace gampc {

Fp poly_eval(std::span<const Fp> coeffs, Fp x) {
  Fp acc;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

std::vector<Fp> random_poly(Fp constant, int t, std::mt19937_64& rng) {
  std::vector<Fp> c(t + 1);
  c[0] = constant;
  for (int i = 1; i <= t; ++i) c[i] = Fp::random(rng);
  return c;
}

std::vector<Fp> distinct_nonzero(std::size_t count, std::mt19937_64& rng) {
  if (Fp::modulus() - 1 < count) throw std::invalid_argument("field too small for distinct evaluation points");
  std::vector<Fp> out;
  std::unordered_set<std::uint64_t> used;
  while (out.size() < count) {
    Fp a = Fp::random_nonzero(rng);
    if (used.insert(a.value()).second) out.push_back(a);
  }
  return out;
}

bool aicp_point_accepted(std::span<const Fp> f_revealed, Fp alpha, Fp v, Fp m, Fp d, std::span<const Fp> b) {
  return v == poly_eval(f_revealed, alpha) || poly_eval(b, alpha) != d * v + m;
}

namespace {

struct Broadcast {
  std::size_t k = 0;
  std::vector<Fp> d;
  std::vector<std::vector<Fp>> b;
  PartySet sv;
};

struct Verdict {
  std::vector<std::optional<Fp>> nok;  // engaged: NOK with the public value
};

struct Inst {
  AicpRoles roles;
  SidId poly = 0, pt = 0, rcv = 0, ib = 0, sv = 0, rev = 0;
  std::optional<std::vector<Fp>> point;  // own (alpha, v, m) per component
  std::optional<Broadcast> bc;
  std::optional<Verdict> verdict;
  bool bad = false;  // malformed broadcast: never completes
  bool reveal_started = false;
  bool dispute_checked = false;
  std::optional<std::optional<std::vector<Fp>>> result;
};

struct AicpService : PartyService {
  std::unordered_map<SidId, Inst> inst;
  PartySet ld_signers;
  PartySet ld_intermediaries;
};

Inst& inst_of(Party& p, SidId a) {
  auto& svc = p.service<AicpService>();
  auto it = svc.inst.find(a);
  if (it == svc.inst.end()) throw std::logic_error("unknown aicp instance");
  return it->second;
}

std::optional<Broadcast> parse_broadcast(const Words& w, int t, const AdversaryStructure& z) {
  if (w.empty()) return std::nullopt;
  const std::uint64_t k = w[0];
  if (k == 0 || k > w.size() || w.size() != 1 + k + k * (t + 1) + 1) return std::nullopt;
  Broadcast bc;
  bc.k = k;
  std::size_t pos = 1;
  for (std::uint64_t c = 0; c < k; ++c) {
    bc.d.emplace_back(w[pos++]);
    if (bc.d.back().is_zero()) return std::nullopt;
  }
  for (std::uint64_t c = 0; c < k; ++c) {
    std::vector<Fp> poly;
    for (int i = 0; i <= t; ++i) poly.emplace_back(w[pos++]);
    bc.b.push_back(std::move(poly));
  }
  if (w[pos] > z.all().bits()) return std::nullopt;
  bc.sv = PartySet(static_cast<std::uint32_t>(w[pos]));
  if (!bc.sv.subset_of(z.all()) || !z.complement_in(bc.sv)) return std::nullopt;
  return bc;
}

std::optional<Verdict> parse_verdict(const Words& w) {
  if (w.empty()) return std::nullopt;
  const std::uint64_t k = w[0];
  Verdict v;
  std::size_t pos = 1;
  for (std::uint64_t c = 0; c < k; ++c) {
    if (pos >= w.size()) return std::nullopt;
    if (w[pos] == 1) {
      v.nok.emplace_back();
      ++pos;
    } else if (w[pos] == 0 && pos + 1 < w.size()) {
      v.nok.emplace_back(Fp(w[pos + 1]));
      pos += 2;
    } else {
      return std::nullopt;
    }
  }
  if (pos != w.size()) return std::nullopt;
  return v;
}

// Parses the two broadcasts once they are delivered.
bool completed(Party& p, Inst& in) {
  if (in.bad) return false;
  if (!in.bc)
    if (const Words* w = acast_output(p, in.ib)) {
      in.bc = parse_broadcast(*w, p.ctx().z.t(), p.ctx().z);
      if (!in.bc) in.bad = true;
    }
  if (!in.verdict)
    if (const Words* w = acast_output(p, in.sv)) {
      in.verdict = parse_verdict(*w);
      if (!in.verdict) in.bad = true;
    }
  if (in.bad || !in.bc || !in.verdict) return false;
  if (in.verdict->nok.size() != in.bc->k) {
    in.bad = true;
    return false;
  }
  return true;
}

std::optional<std::pair<std::vector<std::vector<Fp>>, std::vector<std::vector<Fp>>>> parse_poly(const Msg* m, int t) {
  if (!m) return std::nullopt;
  const std::size_t len = static_cast<std::size_t>(t + 1);
  if (m->w.empty() || m->w.size() % (2 * len) != 0) return std::nullopt;
  const std::size_t k = m->w.size() / (2 * len);
  std::vector<std::vector<Fp>> f(k), mm(k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < len; ++i) {
      f[c].emplace_back(m->w[c * len + i]);
      mm[c].emplace_back(m->w[(k + c) * len + i]);
    }
  return std::make_pair(std::move(f), std::move(mm));
}

Task<void> verifier_task(Party& p, SidId a) {
  Inst& in = inst_of(p, a);
  const PartyId s = in.roles.signer;
  co_await p.until(in.pt, [&] {
    const Msg* m = p.find(in.pt, Tag::AicpPoint, s);
    if (!m || m->w.empty() || m->w.size() % 3 != 0) return false;
    auto v = from_words(m->w);
    for (std::size_t c = 0; c < v.size(); c += 3)
      if (v[c].is_zero()) return false;
    in.point = std::move(v);
    return true;
  });
  p.send(in.roles.intermediary, in.rcv, Tag::AicpReceived, {}, 0);
  if (!p.ctx().cfg.dispute_control) co_return;
  co_await p.until(a, [&] { return completed(p, in) || in.bad; });
  if (in.bad || in.point->size() != 3 * in.bc->k) co_return;
  for (std::size_t c = 0; c < in.bc->k; ++c) {
    Fp alpha = (*in.point)[3 * c], v = (*in.point)[3 * c + 1], m = (*in.point)[3 * c + 2];
    if (!in.verdict->nok[c] && poly_eval(in.bc->b[c], alpha) != in.bc->d[c] * v + m) {
      p.service<AicpService>().ld_signers.insert(s);
      break;
    }
  }
}

Task<void> intermediary_task(Party& p, SidId a) {
  Inst& in = inst_of(p, a);
  const auto& z = p.ctx().z;
  const int t = z.t();
  std::vector<std::vector<Fp>> f, m;
  PartySet sv;
  co_await p.until(a, [&] {
    if (f.empty()) {
      auto polys = parse_poly(p.find(in.poly, Tag::AicpPoly, in.roles.signer), t);
      if (!polys) return false;
      f = std::move(polys->first);
      m = std::move(polys->second);
    }
    sv = PartySet();
    for (const Msg& msg : p.inbox(in.rcv))
      if (msg.tag == Tag::AicpReceived && msg.src >= 1 && msg.src <= p.n()) sv.insert(msg.src);
    return z.complement_in(sv);
  });
  const std::size_t k = f.size();
  Words w{k};
  std::vector<Fp> d(k);
  for (std::size_t c = 0; c < k; ++c) {
    d[c] = Fp::random_nonzero(p.rng());
    w.push_back(d[c].value());
  }
  for (std::size_t c = 0; c < k; ++c)
    for (int i = 0; i <= t; ++i) w.push_back((d[c] * f[c][i] + m[c][i]).value());
  w.push_back(sv.bits());
  acast_send(p, in.ib, w, static_cast<std::uint32_t>(k * (t + 2)));
}

Task<void> signer_task(Party& p, SidId a, std::vector<Fp> values) {
  Inst& in = inst_of(p, a);
  const auto& z = p.ctx().z;
  const int t = z.t();
  const int n = p.n();
  const std::size_t k = values.size();
  std::vector<std::vector<Fp>> f(k), m(k), alpha(k);
  Words poly;
  for (std::size_t c = 0; c < k; ++c) {
    f[c] = random_poly(values[c], t, p.rng());
    m[c] = random_poly(Fp::random(p.rng()), t, p.rng());
    alpha[c] = distinct_nonzero(n, p.rng());
  }
  for (const auto& c : f)
    for (Fp x : c) poly.push_back(x.value());
  for (const auto& c : m)
    for (Fp x : c) poly.push_back(x.value());
  p.send(in.roles.intermediary, in.poly, Tag::AicpPoly, std::move(poly), static_cast<std::uint32_t>(2 * k * (t + 1)));
  std::vector<std::vector<Fp>> sent(n + 1);
  for (PartyId j = 1; j <= n; ++j) {
    std::vector<Fp> pt;
    for (std::size_t c = 0; c < k; ++c) {
      Fp al = alpha[c][j - 1];
      pt.insert(pt.end(), {al, poly_eval(f[c], al), poly_eval(m[c], al)});
    }
    if (p.corrupt()) p.strategy()->tamper(p, {Hook::AicpPoint, a, j, 0}, pt);
    p.send(j, in.pt, Tag::AicpPoint, to_words(pt), static_cast<std::uint32_t>(3 * k));
    sent[j] = std::move(pt);
  }
  std::optional<Broadcast> bc;
  co_await p.until(in.ib, [&] {
    const Words* w = acast_output(p, in.ib);
    if (!w) return false;
    bc = parse_broadcast(*w, t, z);
    return true;
  });
  if (!bc || bc->k != k) co_return;
  std::vector<Fp> flags(k, Fp(1));
  for (std::size_t c = 0; c < k; ++c)
    for (PartyId j : bc->sv.members()) {
      const auto& pt = sent[j];
      if (pt.size() != 3 * k || poly_eval(bc->b[c], pt[3 * c]) != bc->d[c] * pt[3 * c + 1] + pt[3 * c + 2]) {
        flags[c] = Fp(0);
        break;
      }
    }
  if (p.corrupt()) p.strategy()->tamper(p, {Hook::AicpVerdict, a, 0, 0}, flags);
  Words w{k};
  std::uint32_t fe = 0;
  for (std::size_t c = 0; c < k; ++c) {
    if (flags[c] == Fp(1)) {
      w.push_back(1);
    } else {
      w.push_back(0);
      w.push_back(values[c].value());
      ++fe;
    }
  }
  acast_send(p, in.sv, w, fe);
}

Task<void> reveal_task(Party& p, SidId a) {
  Inst& in = inst_of(p, a);
  auto& svc = p.service<AicpService>();
  const auto& ctx = p.ctx();
  const int t = ctx.z.t();
  const bool dispute = ctx.cfg.dispute_control;
  const PartyId me = p.id();
  const AicpRoles r = in.roles;

  if (me == r.receiver && dispute && svc.ld_intermediaries.contains(r.intermediary)) {
    in.result.emplace();
    p.signal(a);
    co_return;
  }
  co_await p.until(a, [&] { return completed(p, in) || in.bad; });
  if (in.bad) co_return;
  const Broadcast& bc = *in.bc;
  const Verdict& vd = *in.verdict;
  const std::size_t k = bc.k;

  if (me == r.intermediary) {
    auto polys = parse_poly(p.find(in.poly, Tag::AicpPoly, r.signer), t);
    std::vector<Fp> coeffs(k * (t + 1));
    if (polys && polys->first.size() == k)
      for (std::size_t c = 0; c < k; ++c) std::copy(polys->first[c].begin(), polys->first[c].end(), coeffs.begin() + c * (t + 1));
    if (p.corrupt()) p.strategy()->tamper(p, {Hook::AicpReveal, a, 0, 0}, coeffs);
    p.send(r.receiver, in.rev, Tag::AicpRevealPoly, to_words(coeffs), static_cast<std::uint32_t>(coeffs.size()));
  }
  if (bc.sv.contains(me) && in.point && in.point->size() == 3 * k) {
    if (dispute && svc.ld_signers.contains(r.signer)) {
      p.send(r.receiver, in.rev, Tag::AicpDummy, {}, 0);
    } else {
      std::vector<Fp> ext;
      for (std::size_t c = 0; c < k; ++c) {
        Fp al = (*in.point)[3 * c];
        ext.insert(ext.end(), {al, (*in.point)[3 * c + 1], (*in.point)[3 * c + 2], bc.d[c], poly_eval(bc.b[c], al)});
      }
      if (p.corrupt()) p.strategy()->tamper(p, {Hook::AicpRevealPoint, a, r.signer, r.intermediary}, ext);
      std::vector<Fp> pt;
      for (std::size_t c = 0; c < k; ++c) pt.insert(pt.end(), {ext[5 * c], ext[5 * c + 1], ext[5 * c + 2]});
      p.send(r.receiver, in.rev, Tag::AicpRevealPoint, to_words(pt), static_cast<std::uint32_t>(3 * k));
    }
  }
  if (me != r.receiver) co_return;

  bool all_public = true;
  for (const auto& x : vd.nok) all_public &= x.has_value();
  std::vector<Fp> out(k);
  for (std::size_t c = 0; c < k; ++c)
    if (vd.nok[c]) out[c] = *vd.nok[c];
  if (!all_public) {
    std::optional<std::vector<Fp>> fprime;
    bool rejected = false;
    std::vector<PartySet> acc(k), rej(k);
    PartySet counted;
    std::size_t seen = 0;
    co_await p.until(in.rev, [&] {
      const auto& box = p.inbox(in.rev);
      if (!fprime) {
        const Msg* m = p.find(in.rev, Tag::AicpRevealPoly, r.intermediary);
        if (!m) return false;
        if (m->w.size() != k * (t + 1)) {
          rejected = true;  // wrong degree: rejected outright
          return true;
        }
        fprime = from_words(m->w);
      }
      for (; seen < box.size(); ++seen) {
        const Msg& m = box[seen];
        if (!bc.sv.contains(m.src) || counted.contains(m.src)) continue;
        if (m.tag == Tag::AicpDummy && dispute) {
          counted.insert(m.src);
          for (std::size_t c = 0; c < k; ++c) acc[c].insert(m.src);
        } else if (m.tag == Tag::AicpRevealPoint && m.w.size() == 3 * k) {
          counted.insert(m.src);
          auto pt = from_words(m.w);
          for (std::size_t c = 0; c < k; ++c) {
            std::span<const Fp> fc(fprime->data() + c * (t + 1), t + 1);
            if (aicp_point_accepted(fc, pt[3 * c], pt[3 * c + 1], pt[3 * c + 2], bc.d[c], bc.b[c]))
              acc[c].insert(m.src);
            else
              rej[c].insert(m.src);
          }
        }
      }
      bool done = true;
      for (std::size_t c = 0; c < k; ++c) {
        if (vd.nok[c]) continue;
        if (ctx.z.covers(bc.sv - rej[c])) {
          rejected = true;
          return true;
        }
        done &= ctx.z.covers(bc.sv - acc[c]);
      }
      return done;
    });
    if (rejected) {
      if (dispute) svc.ld_intermediaries.insert(r.intermediary);
      in.result.emplace();
      p.signal(a);
      co_return;
    }
    for (std::size_t c = 0; c < k; ++c)
      if (!vd.nok[c]) out[c] = (*fprime)[c * (t + 1)];
  }
  in.result.emplace(std::move(out));
  p.signal(a);
}

}  // namespace

SidId aicp_open(Party& p, SidId parent, std::string_view label, AicpRoles roles) {
  auto& sids = p.sids();
  SidId a = sids.child(parent, label);
  auto& svc = p.service<AicpService>();
  auto [it, fresh] = svc.inst.try_emplace(a);
  if (!fresh) return a;
  Inst& in = it->second;
  in.roles = roles;
  sids.set_owner(a, roles.signer);
  in.poly = sids.child(a, "poly");
  in.pt = sids.child(a, "pt");
  in.rcv = sids.child(a, "rcv");
  in.ib = acast_session(sids, a, "ib", roles.intermediary);
  in.sv = acast_session(sids, a, "sv", roles.signer);
  in.rev = sids.child(a, "rev");
  p.spawn(verifier_task(p, a));
  if (p.id() == roles.intermediary) p.spawn(intermediary_task(p, a));
  return a;
}

void aicp_sign(Party& p, SidId a, std::vector<Fp> values) {
  Inst& in = inst_of(p, a);
  if (p.id() != in.roles.signer) throw std::logic_error("aicp sign by a party that is not the signer");
  if (values.empty()) throw std::invalid_argument("aicp instance without values");
  p.spawn(signer_task(p, a, std::move(values)));
}

bool aicp_auth_completed(Party& p, SidId a) { return completed(p, inst_of(p, a)); }

std::optional<std::vector<IcSignature>> aicp_signature(Party& p, SidId a) {
  Inst& in = inst_of(p, a);
  if (p.id() != in.roles.intermediary || !completed(p, in)) return std::nullopt;
  auto polys = parse_poly(p.find(in.poly, Tag::AicpPoly, in.roles.signer), p.ctx().z.t());
  std::vector<IcSignature> out(in.bc->k);
  for (std::size_t c = 0; c < out.size(); ++c) {
    if (in.verdict->nok[c]) {
      out[c] = {true, *in.verdict->nok[c], {}};
    } else {
      if (!polys || polys->first.size() != out.size()) return std::nullopt;
      out[c] = {false, polys->first[c][0], polys->first[c]};
    }
  }
  return out;
}

void aicp_reveal(Party& p, SidId a) {
  Inst& in = inst_of(p, a);
  if (in.reveal_started) return;
  in.reveal_started = true;
  p.spawn(reveal_task(p, a));
}

std::optional<std::optional<std::vector<Fp>>> aicp_revealed(Party& p, SidId a) { return inst_of(p, a).result; }

PartySet aicp_discarded_signers(Party& p) { return p.service<AicpService>().ld_signers; }
PartySet aicp_discarded_intermediaries(Party& p) { return p.service<AicpService>().ld_intermediaries; }

}  // namespace gampc
