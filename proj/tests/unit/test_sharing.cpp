#include <gtest/gtest.h>

#include "gampc/netsim/sim.hpp"
#include "gampc/sharing/sharing.hpp"

using namespace gampc;

namespace {

ShareVector sv(PartyId owner, std::initializer_list<std::pair<int, std::uint64_t>> kv) {
  ShareVector v{owner, {}};
  for (auto [q, x] : kv) v.shares.emplace(q, Fp(x));
  return v;
}

// Rewrites every reconstruction share it sends with fresh random values.
struct Liar : Strategy {
  std::string name() const override { return "liar"; }
  void on_send(Party& p, Envelope&& e, std::vector<Envelope>& out) override {
    if (e.tag == Tag::RecShare)
      for (auto& x : e.w) x = Fp::random(p.rng()).value();
    out.push_back(std::move(e));
  }
};

Task<void> do_rec(Party& p, SidId sid, std::vector<ShareVector> batch, std::vector<Fp>* out) {
  *out = co_await rec(p, sid, std::move(batch));
}

}  // namespace

TEST(Sharing, LinCombineExamples) {
  auto x = sv(1, {{0, 1}, {1, 2}, {2, 3}});
  auto y = sv(1, {{0, 4}, {1, 5}, {2, 6}});
  std::vector<Fp> ones{Fp(1), Fp(1)};
  std::vector<ShareVector> xy{x, y};
  EXPECT_EQ(lin_combine(ones, xy), sv(1, {{0, 5}, {1, 7}, {2, 9}}));
  EXPECT_EQ(Fp(0) * x, sv(1, {{0, 0}, {1, 0}, {2, 0}}));
  EXPECT_THROW(x + sv(2, {{0, 1}, {1, 1}, {2, 1}}), std::invalid_argument);
  EXPECT_THROW(x + sv(1, {{0, 1}, {1, 1}, {3, 1}}), std::invalid_argument);
}

TEST(Sharing, LinCombineCommutesWithReconstruction) {
  std::mt19937_64 rng(3);
  SharingSpec spec(AdversaryStructure::singletons(5));
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_sharing(Fp::random(rng), spec.size(), rng);
    auto b = random_sharing(Fp::random(rng), spec.size(), rng);
    Fp ca = Fp::random(rng), cb = Fp::random(rng);
    // reassemble the combined global sharing from the owners' local views
    FullSharing combined{std::vector<Fp>(spec.size())};
    for (PartyId i = 1; i <= 5; ++i) {
      std::vector<Fp> c{ca, cb};
      std::vector<ShareVector> in{a.view(spec, i), b.view(spec, i)};
      for (auto [q, v] : lin_combine(c, in).shares) combined.values[q] = v;
    }
    EXPECT_EQ(combined.secret(), ca * a.secret() + cb * b.secret());
  }
}

TEST(Sharing, DefaultShare) {
  auto d = default_share(Fp(7), 4);
  EXPECT_EQ(d.values, (std::vector<Fp>{Fp(7), Fp(0), Fp(0), Fp(0)}));
  EXPECT_EQ(d.secret(), Fp(7));
  EXPECT_EQ(default_share(Fp(0), 3).values, std::vector<Fp>(3));
  SharingSpec spec(AdversaryStructure::singletons(4));
  EXPECT_EQ(default_share_view(Fp(7), spec, 1), d.view(spec, 1));
  EXPECT_EQ(add_constant(zero_view(spec, 2), Fp(7)), d.view(spec, 2));
}

TEST(Sharing, RecShareFilteringRule) {
  auto z = AdversaryStructure::singletons(4);
  // group S = {2,3,4}; a non-member adopts after two consistent senders
  RecShareState st{PartySet{2, 3, 4}, {}, {}};
  EXPECT_FALSE(rec_share_step(st, z, 4, {9}));
  EXPECT_FALSE(rec_share_step(st, z, 2, {5}));
  EXPECT_FALSE(rec_share_step(st, z, 1, {5}));  // not a member of the group
  EXPECT_FALSE(rec_share_step(st, z, 2, {5}));  // repeated sender
  auto out = rec_share_step(st, z, 3, {5});
  ASSERT_TRUE(out);
  EXPECT_EQ(*out, Words{5});
  RecShareState st2{PartySet{2, 3, 4}, {}, {}};
  rec_share_step(st2, z, 2, {5});
  EXPECT_EQ(rec_share_step(st2, z, 4, {5}), std::optional<Words>(Words{5}));
}

TEST(Sharing, RecFullSharingWithExactTraffic) {
  Sim sim(AdversaryStructure::singletons(4), {}, {1});
  const auto& spec = sim.ctx().s;
  FullSharing s{{Fp(1), Fp(2), Fp(3), Fp(4)}};
  SidId sid = sim.sids().path("rec");
  std::vector<std::vector<Fp>> out(5);
  for (PartyId i = 1; i <= 4; ++i) sim.party(i).spawn(do_rec(sim.party(i), sid, {s.view(spec, i)}, &out[i]));
  sim.run();
  for (PartyId i = 1; i <= 4; ++i) EXPECT_EQ(out[i], std::vector<Fp>{Fp(10)});
  // every group of 3 sends to its single outsider
  EXPECT_EQ(rec_envelopes(spec, 4), 4u * 3u * 1u);
  EXPECT_EQ(sim.metrics().total().envelopes, 12u);
  EXPECT_EQ(sim.metrics().total().field_elems_sent, 12u);
  EXPECT_EQ(sim.metrics().protocol("perrec").perrec_calls, 1u);
}

TEST(Sharing, RecDefaultSharingAndBatch) {
  Sim sim(AdversaryStructure::singletons(5), {}, {2});
  const auto& spec = sim.ctx().s;
  auto a = default_share(Fp(7), spec.size());
  auto b = random_sharing(Fp(11), spec.size(), sim.rng());
  SidId sid = sim.sids().path("rec");
  std::vector<std::vector<Fp>> out(6);
  for (PartyId i = 1; i <= 5; ++i)
    sim.party(i).spawn(do_rec(sim.party(i), sid, {a.view(spec, i), b.view(spec, i)}, &out[i]));
  sim.run();
  for (PartyId i = 1; i <= 5; ++i) EXPECT_EQ(out[i], (std::vector<Fp>{Fp(7), Fp(11)}));
  EXPECT_EQ(sim.metrics().total().envelopes, rec_envelopes(spec, 5));
  EXPECT_EQ(sim.metrics().total().field_elems_sent, rec_field_elems(spec, 5, 2));
}

TEST(Sharing, RecToleratesLyingPartyAcrossRandomSharings) {
  auto liar = std::make_shared<Liar>();
  for (std::uint64_t trial = 1; trial <= 1000; ++trial) {
    int n = trial % 2 ? 4 : 5;
    PartySet corrupt{static_cast<PartyId>(1 + trial % n)};
    Sim sim(AdversaryStructure::singletons(n), {}, {trial}, corrupt, liar);
    const auto& spec = sim.ctx().s;
    Fp secret = Fp::random(sim.rng());
    auto s = random_sharing(secret, spec.size(), sim.rng());
    SidId sid = sim.sids().path("rec");
    std::vector<std::vector<Fp>> out(n + 1);
    for (PartyId i = 1; i <= n; ++i) sim.party(i).spawn(do_rec(sim.party(i), sid, {s.view(spec, i)}, &out[i]));
    sim.run();
    for (PartyId i : sim.honest().members()) ASSERT_EQ(out[i], std::vector<Fp>{secret}) << trial;
    ASSERT_EQ(sim.metrics().total().envelopes, rec_envelopes(spec, n));
  }
}
