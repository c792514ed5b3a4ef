#include "gampc/vss/vss.hpp"

#include <stdexcept>

#include "gampc/vss/pvss.hpp"
#include "gampc/vss/svss.hpp"

namespace gampc {

namespace {

struct VssService : PartyService {
  std::unordered_map<SidId, std::vector<ShareVector>> results;
  std::unordered_map<SidId, bool> joined;
};

}  // namespace

Words vss_encode_output(const SharingSpec& spec, PartyId i, const std::vector<FullSharing>& shares) {
  Words w{shares.size()};
  for (std::size_t q = 0; q < spec.size(); ++q)
    if (spec.member(i, q))
      for (const auto& s : shares) w.push_back(s.values.at(q).value());
  return w;
}

std::optional<std::vector<ShareVector>> vss_decode_output(const SharingSpec& spec, PartyId i, const Words& w) {
  if (w.empty()) return std::nullopt;
  const std::uint64_t k = w[0];
  const auto groups = static_cast<std::uint64_t>(std::popcount(spec.groups_of(i)));
  if (k > w.size() || w.size() != 1 + groups * k) return std::nullopt;
  std::vector<ShareVector> out(k, ShareVector{i, {}});
  std::size_t pos = 1;
  for (std::size_t q = 0; q < spec.size(); ++q)
    if (spec.member(i, q))
      for (std::uint64_t b = 0; b < k; ++b) out[b].shares.emplace(static_cast<int>(q), Fp(w[pos++]));
  return out;
}

SidId vss_open(Party& p, SidId parent, std::string_view label, PartyId dealer) {
  SidId sid = p.sids().child(parent, label);
  p.sids().set_owner(sid, dealer);
  auto& svc = p.service<VssService>();
  if (!svc.joined[sid]) {
    svc.joined[sid] = true;
    switch (p.ctx().cfg.vss) {
      case VssMode::Oracle: break;
      case VssMode::Perfect: pvss_join(p, sid, dealer); break;
      case VssMode::Statistical: svss_join(p, sid, dealer); break;
    }
  }
  return sid;
}

SidId vss_open(Party& p, SidId parent, long long label, PartyId dealer) {
  return vss_open(p, parent, std::string_view(std::to_string(label)), dealer);
}

void vss_deal(Party& p, SidId sid, std::vector<FullSharing> shares) {
  if (p.sids().owner(sid) != p.id()) throw std::logic_error("vss deal from a party that is not the dealer");
  const std::size_t h = p.ctx().s.size();
  for (const auto& s : shares)
    if (s.values.size() != h) throw std::invalid_argument("sharing size does not match the spec");
  if (p.corrupt()) {
    std::vector<Fp> flat;
    for (const auto& s : shares) flat.insert(flat.end(), s.values.begin(), s.values.end());
    p.strategy()->tamper(p, {Hook::Deal, sid, 0, 0}, flat);
    for (std::size_t b = 0; b < shares.size(); ++b)
      std::copy(flat.begin() + b * h, flat.begin() + (b + 1) * h, shares[b].values.begin());
  }
  p.sim().metrics().on_event(Event::FvssCall, "fvss", sid);
  switch (p.ctx().cfg.vss) {
    case VssMode::Oracle: {
      Words w{shares.size()};
      for (const auto& s : shares)
        for (Fp v : s.values) w.push_back(v.value());
      p.send(kVssOracle, sid, Tag::VssDeal, std::move(w), static_cast<std::uint32_t>(shares.size() * h));
      break;
    }
    case VssMode::Perfect: pvss_deal(p, sid, std::move(shares)); break;
    case VssMode::Statistical: svss_deal(p, sid, std::move(shares)); break;
  }
}

void vss_deal_secrets(Party& p, SidId sid, const std::vector<Fp>& secrets) {
  std::vector<FullSharing> shares;
  shares.reserve(secrets.size());
  for (Fp s : secrets) shares.push_back(random_sharing(s, p.ctx().s.size(), p.rng()));
  vss_deal(p, sid, std::move(shares));
}

const std::vector<ShareVector>* vss_result(Party& p, SidId sid) {
  auto& svc = p.service<VssService>();
  if (auto it = svc.results.find(sid); it != svc.results.end()) return &it->second;
  for (const Msg& m : p.inbox(sid)) {
    if (m.tag != Tag::VssOut) continue;
    // oracle outputs come from the oracle endpoint, composed outputs are posted locally
    if (m.src != kVssOracle && m.src != p.id()) continue;
    if (auto out = vss_decode_output(p.ctx().s, p.id(), m.w))
      return &svc.results.emplace(sid, std::move(*out)).first->second;
  }
  return nullptr;
}

Task<std::vector<ShareVector>> vss_output(Party& p, SidId sid) {
  co_await p.until(sid, [&] { return vss_result(p, sid) != nullptr; });
  co_return *vss_result(p, sid);
}

void FvssOracle::deliver(Envelope&& e) {
  if (e.tag != Tag::VssDeal || e.w.empty()) return;
  auto& sids = sim_->sids();
  if (sids.owner(e.sid) != e.src || dealt_.count(e.sid)) return;
  const auto& spec = sim_->ctx().s;
  const std::size_t h = spec.size();
  const std::uint64_t k = e.w[0];
  if (k > e.w.size() || e.w.size() != 1 + k * h) return;
  std::vector<FullSharing> shares(k, FullSharing{std::vector<Fp>(h)});
  for (std::uint64_t b = 0; b < k; ++b)
    for (std::size_t q = 0; q < h; ++q) shares[b].values[q] = Fp(e.w[1 + b * h + q]);
  for (PartyId i = 1; i <= sim_->n(); ++i) {
    Envelope out;
    out.src = kVssOracle;
    out.dst = i;
    out.sid = e.sid;
    out.tag = Tag::VssOut;
    out.w = vss_encode_output(spec, i, shares);
    out.field_elems = static_cast<std::uint32_t>(out.w.size() - 1);
    sim_->net().send(std::move(out));
  }
  dealt_.emplace(e.sid, std::move(shares));
}

const std::vector<FullSharing>* FvssOracle::dealt(SidId sid) const {
  auto it = dealt_.find(sid);
  return it == dealt_.end() ? nullptr : &it->second;
}

FvssOracle& install_fvss_oracle(Sim& sim) {
  auto oracle = std::make_unique<FvssOracle>(sim);
  FvssOracle& ref = *oracle;
  sim.install(kVssOracle, std::move(oracle));
  return ref;
}

}  // namespace gampc
