#include <gtest/gtest.h>

#include <set>

#include "gampc/bcast/aba.hpp"
#include "gampc/bcast/acast.hpp"
#include "gampc/harness/strategies.hpp"

using namespace gampc;

namespace {

Task<void> receive(Party& p, SidId sid, std::optional<Words>* out) {
  *out = co_await acast_await(p, sid);
}

struct AcastRun {
  std::vector<std::optional<Words>> out;
  std::uint64_t envelopes;
};

AcastRun run_acast(int n, std::uint64_t seed, PartySet corrupt, std::shared_ptr<Strategy> st, PartyId sender = 1) {
  Sim sim(AdversaryStructure::singletons(n), {}, {seed}, corrupt, st);
  SidId sid = acast_session(sim.sids(), sim.sids().root(), "bc", sender);
  AcastRun r{std::vector<std::optional<Words>>(n + 1), 0};
  for (PartyId i = 1; i <= n; ++i) sim.party(i).spawn(receive(sim.party(i), sid, &r.out[i]));
  acast_send(sim.party(sender), sid, {7}, 1);
  sim.run();
  r.envelopes = sim.metrics().total().envelopes;
  return r;
}

}  // namespace

TEST(Acast, HonestSenderDeliversToAllWithExactTraffic) {
  auto r = run_acast(4, 1, {}, nullptr);
  for (PartyId i = 1; i <= 4; ++i) {
    ASSERT_TRUE(r.out[i].has_value()) << i;
    EXPECT_EQ(*r.out[i], Words{7});
  }
  EXPECT_EQ(r.envelopes, 2u * 16u + 4u);  // n inp + n^2 echo + n^2 ready
}

TEST(Acast, CorruptReceiverDoesNotBreakHonestOutput) {
  for (const char* name : {"silent", "drop-all"}) {
    auto r = run_acast(4, 3, PartySet{4}, make_strategy(name));
    for (PartyId i = 1; i <= 3; ++i) {
      ASSERT_TRUE(r.out[i].has_value()) << name << " " << i;
      EXPECT_EQ(*r.out[i], Words{7});
    }
  }
}

TEST(Acast, EquivocatingSenderNeverSplitsHonestParties) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto r = run_acast(4, seed, PartySet{1}, make_strategy("equivocate-acast"));
    std::set<Words> seen;
    int outputs = 0;
    for (PartyId i = 2; i <= 4; ++i)
      if (r.out[i]) {
        seen.insert(*r.out[i]);
        ++outputs;
      }
    EXPECT_LE(seen.size(), 1u) << seed;
    EXPECT_TRUE(outputs == 0 || outputs == 3) << seed;
  }
}

TEST(Acast, SilentSenderYieldsNoOutput) {
  auto r = run_acast(4, 9, PartySet{1}, make_strategy("silent"));
  for (PartyId i = 2; i <= 4; ++i) EXPECT_FALSE(r.out[i].has_value());
}

TEST(Acast, StepFunctionThresholds) {
  auto z = AdversaryStructure::singletons(4);
  AcastState st;
  st.sender = 1;
  auto a = acast_step(st, z, {AcastKind::Inp, 1, {5}});
  ASSERT_EQ(a.send_all.size(), 1u);
  EXPECT_EQ(a.send_all[0].first, Tag::AcastEcho);
  // duplicates from the same party are ignored; two echoes are not enough
  EXPECT_TRUE(acast_step(st, z, {AcastKind::Echo, 2, {5}}).send_all.empty());
  EXPECT_TRUE(acast_step(st, z, {AcastKind::Echo, 2, {5}}).send_all.empty());
  EXPECT_TRUE(acast_step(st, z, {AcastKind::Echo, 3, {5}}).send_all.empty());
  auto b = acast_step(st, z, {AcastKind::Echo, 4, {5}});
  ASSERT_EQ(b.send_all.size(), 1u);
  EXPECT_EQ(b.send_all[0].first, Tag::AcastReady);
  EXPECT_FALSE(acast_step(st, z, {AcastKind::Ready, 1, {5}}).output);
  EXPECT_FALSE(acast_step(st, z, {AcastKind::Ready, 2, {5}}).output);
  auto c = acast_step(st, z, {AcastKind::Ready, 3, {5}});
  ASSERT_TRUE(c.output);
  EXPECT_EQ(*c.output, Words{5});
}

TEST(Acast, ReadyAmplification) {
  auto z = AdversaryStructure::singletons(4);
  AcastState st;
  st.sender = 1;
  EXPECT_TRUE(acast_step(st, z, {AcastKind::Ready, 2, {5}}).send_all.empty());
  auto a = acast_step(st, z, {AcastKind::Ready, 3, {5}});  // {2,3} not covered by Z
  ASSERT_EQ(a.send_all.size(), 1u);
  EXPECT_EQ(a.send_all[0].first, Tag::AcastReady);
}

TEST(Faba, DecisionRuleExamples) {
  auto z = AdversaryStructure::singletons(4);
  AbaOracleState st;
  for (PartyId i = 1; i <= 4; ++i) {
    st.votes[i] = i != 4;
    st.voters.insert(i);
  }
  // honest members of CS agree on 1 -> 1, whatever the corrupt vote
  auto d = faba_decide(st, z, PartySet{4}, PartySet{1, 2, 4});
  ASSERT_TRUE(d);
  EXPECT_TRUE(d->second);
  // honest split inside CS -> the corrupt member's vote
  st.votes[2] = false;
  EXPECT_FALSE(faba_output(st, PartySet{1, 2, 4}, PartySet{4}));
  st.votes[4] = true;
  EXPECT_TRUE(faba_output(st, PartySet{1, 2, 4}, PartySet{4}));
  // an inadmissible adversary choice is rejected
  EXPECT_THROW(faba_decide(st, z, PartySet{4}, PartySet{1, 2}), std::invalid_argument);
}

TEST(Faba, DefaultCoreIsLexLeastAdmissible) {
  auto z = AdversaryStructure::singletons(4);
  AbaOracleState st;
  st.votes = {{2, true}, {3, true}};
  st.voters = PartySet{2, 3};
  EXPECT_FALSE(faba_default_core(st, z));
  st.votes[4] = true;
  st.voters.insert(4);
  EXPECT_EQ(faba_default_core(st, z), (PartySet{2, 3, 4}));
  st.votes[1] = true;
  st.voters.insert(1);
  EXPECT_EQ(faba_default_core(st, z), (PartySet{1, 2, 3}));
}

namespace {

Task<void> acs_party(Party& p, SidId base, PartySet* out) {
  *out = co_await acs_run(p, base, AcsMode::UntilQualified, {}, [](PartyId) { return true; });
}

}  // namespace

TEST(Acs, HonestPartiesAgreeOnQualifiedSet) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Sim sim(AdversaryStructure::singletons(4), {}, {seed}, PartySet{4}, make_strategy("silent"));
    install_aba_oracle(sim);
    SidId base = sim.sids().path("acs");
    std::vector<PartySet> out(5);
    for (PartyId i = 1; i <= 3; ++i) sim.party(i).spawn(acs_party(sim.party(i), base, &out[i]));
    sim.run();
    EXPECT_EQ(out[1], out[2]) << seed;
    EXPECT_EQ(out[2], out[3]) << seed;
    EXPECT_TRUE(sim.ctx().z.complement_in(out[1])) << seed;
  }
}
