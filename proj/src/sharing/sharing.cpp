#include "gampc/sharing/sharing.hpp"

#include <stdexcept>

#include "gampc/netsim/sim.hpp"

namespace gampc {

Fp ShareVector::at(int q) const {
  auto it = shares.find(q);
  if (it == shares.end()) throw std::out_of_range("party does not hold this group's share");
  return it->second;
}

Fp FullSharing::secret() const {
  Fp s;
  for (Fp v : values) s += v;
  return s;
}

ShareVector FullSharing::view(const SharingSpec& s, PartyId i) const {
  if (values.size() != s.size()) throw std::invalid_argument("sharing size does not match the spec");
  ShareVector out{i, {}};
  for (std::size_t q = 0; q < s.size(); ++q)
    if (s.member(i, q)) out.shares.emplace(static_cast<int>(q), values[q]);
  return out;
}

namespace {

void check_compatible(const ShareVector& a, const ShareVector& b) {
  if (a.owner != b.owner) throw std::invalid_argument("share vectors of different owners");
  if (a.shares.size() != b.shares.size()) throw std::invalid_argument("share vectors over different groups");
  for (auto ia = a.shares.begin(), ib = b.shares.begin(); ia != a.shares.end(); ++ia, ++ib)
    if (ia->first != ib->first) throw std::invalid_argument("share vectors over different groups");
}

}  // namespace

ShareVector lin_combine(std::span<const Fp> coeffs, std::span<const ShareVector> inputs) {
  if (coeffs.size() != inputs.size()) throw std::invalid_argument("coefficient count mismatch");
  if (inputs.empty()) throw std::invalid_argument("empty linear combination");
  ShareVector out{inputs[0].owner, {}};
  for (const auto& [q, v] : inputs[0].shares) out.shares.emplace(q, Fp());
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    check_compatible(out, inputs[k]);
    auto it = out.shares.begin();
    for (const auto& [q, v] : inputs[k].shares) (it++)->second += coeffs[k] * v;
  }
  return out;
}

ShareVector operator+(const ShareVector& a, const ShareVector& b) {
  check_compatible(a, b);
  ShareVector out = a;
  auto it = b.shares.begin();
  for (auto& [q, v] : out.shares) v += (it++)->second;
  return out;
}

ShareVector operator-(const ShareVector& a, const ShareVector& b) {
  check_compatible(a, b);
  ShareVector out = a;
  auto it = b.shares.begin();
  for (auto& [q, v] : out.shares) v -= (it++)->second;
  return out;
}

ShareVector operator*(Fp c, const ShareVector& a) {
  ShareVector out = a;
  for (auto& [q, v] : out.shares) v = c * v;
  return out;
}

ShareVector add_constant(const ShareVector& a, Fp c) {
  ShareVector out = a;
  if (auto it = out.shares.find(0); it != out.shares.end()) it->second += c;
  return out;
}

FullSharing default_share(Fp s, std::size_t h) {
  FullSharing out{std::vector<Fp>(h)};
  if (h > 0) out.values[0] = s;
  return out;
}

ShareVector default_share_view(Fp s, const SharingSpec& spec, PartyId i) {
  return default_share(s, spec.size()).view(spec, i);
}

FullSharing random_sharing(Fp s, std::size_t h, std::mt19937_64& rng) {
  if (h == 0) throw std::invalid_argument("empty sharing specification");
  FullSharing out{std::vector<Fp>(h)};
  Fp rest = s;
  for (std::size_t q = 1; q < h; ++q) {
    out.values[q] = Fp::random(rng);
    rest -= out.values[q];
  }
  out.values[0] = rest;
  return out;
}

ShareVector zero_view(const SharingSpec& spec, PartyId i) { return default_share_view(Fp(), spec, i); }

Words to_words(std::span<const Fp> v) {
  Words w;
  w.reserve(v.size());
  for (Fp x : v) w.push_back(x.value());
  return w;
}

std::vector<Fp> from_words(const Words& w) {
  std::vector<Fp> v;
  v.reserve(w.size());
  for (auto x : w) v.emplace_back(x);
  return v;
}

const std::optional<Words>& rec_share_step(RecShareState& st, const AdversaryStructure& z, PartyId from,
                                           const Words& v) {
  if (st.out || !st.group.contains(from) || st.got.count(from)) return st.out;
  st.got.emplace(from, v);
  PartySet agree;
  for (const auto& [j, w] : st.got)
    if (w == v) agree.insert(j);
  if (z.covers(st.group - agree)) st.out = v;
  return st.out;
}

namespace {

Task<std::vector<Fp>> rec_share_wait(Party& p, SidId sid, int q) {
  const auto& ctx = p.ctx();
  RecShareState st{ctx.s.group(q), {}, {}};
  std::size_t seen = 0;
  co_await p.until(sid, [&] {
    const auto& in = p.inbox(sid);
    for (; seen < in.size() && !st.out; ++seen)
      if (in[seen].tag == Tag::RecShare) rec_share_step(st, ctx.z, in[seen].src, in[seen].w);
    return st.out.has_value();
  });
  co_return from_words(*st.out);
}

void rec_share_send(Party& p, SidId sid, int q, const std::vector<Fp>& mine) {
  const auto& ctx = p.ctx();
  p.send_to(ctx.z.all() - ctx.s.group(q), sid, Tag::RecShare, to_words(mine), static_cast<std::uint32_t>(mine.size()));
}

}  // namespace

Task<std::vector<Fp>> rec_share(Party& p, SidId sid, int q, std::vector<Fp> mine) {
  if (p.ctx().s.member(p.id(), q)) {
    rec_share_send(p, sid, q, mine);
    co_return mine;
  }
  auto v = co_await rec_share_wait(p, sid, q);
  co_return v;
}

Task<std::vector<Fp>> rec(Party& p, SidId sid, std::vector<ShareVector> batch) {
  const auto& ctx = p.ctx();
  auto& sids = p.sids();
  p.sim().metrics().on_event(Event::PerrecCall, "perrec", sid);
  const int h = static_cast<int>(ctx.s.size());
  std::vector<Fp> out(batch.size());
  std::vector<int> missing;
  // all own groups go out before waiting on any other
  for (int q = 0; q < h; ++q) {
    if (!ctx.s.member(p.id(), q)) {
      missing.push_back(q);
      continue;
    }
    std::vector<Fp> mine;
    mine.reserve(batch.size());
    for (const auto& x : batch) mine.push_back(x.at(q));
    rec_share_send(p, sids.child(sid, q), q, mine);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += mine[k];
  }
  for (int q : missing) {
    auto v = co_await rec_share_wait(p, sids.child(sid, q), q);
    if (v.size() != out.size()) throw std::runtime_error("reconstructed batch has the wrong length");
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += v[k];
  }
  co_return out;
}

Task<Fp> rec(Party& p, SidId sid, ShareVector x) {
  std::vector<ShareVector> batch;
  batch.push_back(std::move(x));
  auto v = co_await rec(p, sid, std::move(batch));
  co_return v[0];
}

std::uint64_t rec_envelopes(const SharingSpec& spec, int n) {
  std::uint64_t total = 0;
  for (PartySet g : spec.groups()) total += static_cast<std::uint64_t>(g.size()) * (n - g.size());
  return total;
}

std::uint64_t rec_field_elems(const SharingSpec& spec, int n, std::size_t k) { return rec_envelopes(spec, n) * k; }

}  // namespace gampc
