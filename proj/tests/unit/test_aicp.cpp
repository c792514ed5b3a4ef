#include <gtest/gtest.h>

#include "gampc/aicp/aicp.hpp"
#include "gampc/harness/strategies.hpp"
#include "gampc/netsim/sim.hpp"

using namespace gampc;

namespace {

struct AicpRun {
  std::optional<std::optional<std::vector<Fp>>> out;
  std::vector<bool> completed;
  std::optional<std::vector<IcSignature>> sig;
  std::vector<PartySet> ld_signers, ld_intermediaries;
};

// Runs `sessions` instances with the same roles back to back (each reveal after
// the previous one finished) and reports on the last one.
AicpRun run_aicp(int n, std::uint64_t prime, std::uint64_t seed, AicpRoles roles, std::vector<std::uint64_t> values,
                 PartySet corrupt = {}, std::shared_ptr<Strategy> st = nullptr, int sessions = 1,
                 bool dispute = true) {
  Config cfg;
  cfg.prime = prime;
  cfg.dispute_control = dispute;
  Sim sim(AdversaryStructure::singletons(n), cfg, {seed}, corrupt, st);
  SidId parent = sim.sids().path("ic");
  SidId a = 0;
  for (int s = 0; s < sessions; ++s) {
    std::string label = std::to_string(s);
    for (PartyId i = 1; i <= n; ++i) a = aicp_open(sim.party(i), parent, label, roles);
    std::vector<Fp> v;
    for (auto x : values) v.emplace_back(x);
    aicp_sign(sim.party(roles.signer), a, v);
    sim.run();
    for (PartyId i = 1; i <= n; ++i) aicp_reveal(sim.party(i), a);
    sim.run();
  }
  AicpRun r;
  r.out = aicp_revealed(sim.party(roles.receiver), a);
  for (PartyId i = 1; i <= n; ++i) {
    r.completed.push_back(aicp_auth_completed(sim.party(i), a));
    r.ld_signers.push_back(aicp_discarded_signers(sim.party(i)));
    r.ld_intermediaries.push_back(aicp_discarded_intermediaries(sim.party(i)));
  }
  r.sig = aicp_signature(sim.party(roles.intermediary), a);
  return r;
}

// Corrupt intermediary broadcasting a B inconsistent with every point.
struct BadBlind : Strategy {
  std::string name() const override { return "bad-blind"; }
  void on_send(Party& p, Envelope&& e, std::vector<Envelope>& out) override {
    const auto& path = p.sids().str(e.sid);
    if (e.tag == Tag::AcastInp && path.size() > 3 && path.ends_with("/ib") && e.w.size() > 3) e.w[3] += 1;
    out.push_back(std::move(e));
  }
};

}  // namespace

TEST(Aicp, BlindedCheckAlgebra) {
  Fp::Scope f(97);
  std::vector<Fp> F{Fp(10), Fp(3)}, M{Fp(5), Fp(2)};
  Fp d(4);
  std::vector<Fp> B{d * F[0] + M[0], d * F[1] + M[1]};
  EXPECT_EQ(B, (std::vector<Fp>{Fp(45), Fp(14)}));
  Fp alpha(2);
  EXPECT_EQ(poly_eval(F, alpha), Fp(16));
  EXPECT_EQ(poly_eval(M, alpha), Fp(9));
  EXPECT_EQ(d * Fp(16) + Fp(9), Fp(73));
  EXPECT_EQ(poly_eval(B, alpha), Fp(73));
  // acceptance: on F', or inconsistent with B
  EXPECT_TRUE(aicp_point_accepted(F, alpha, Fp(16), Fp(9), d, B));
  EXPECT_FALSE(aicp_point_accepted(std::vector<Fp>{Fp(11), Fp(3)}, alpha, Fp(16), Fp(9), d, B));
  EXPECT_TRUE(aicp_point_accepted(std::vector<Fp>{Fp(11), Fp(3)}, alpha, Fp(17), Fp(9), d, B));
}

TEST(Aicp, DistinctPointsNeedLargeEnoughField) {
  Fp::Scope f(5);
  std::mt19937_64 rng(1);
  auto a = distinct_nonzero(4, rng);
  std::sort(a.begin(), a.end(), [](Fp x, Fp y) { return x.value() < y.value(); });
  EXPECT_EQ(a, (std::vector<Fp>{Fp(1), Fp(2), Fp(3), Fp(4)}));
  EXPECT_THROW(distinct_nonzero(5, rng), std::invalid_argument);
}

TEST(Aicp, HonestRunRevealsSignedValues) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto r = run_aicp(4, Fp::kMersenne61, seed, {1, 2, 3}, {10, 20});
    for (bool c : r.completed) EXPECT_TRUE(c);
    ASSERT_TRUE(r.sig);
    EXPECT_FALSE((*r.sig)[0].is_public);
    EXPECT_EQ((*r.sig)[1].value, Fp(20));
    ASSERT_TRUE(r.out && *r.out);
    EXPECT_EQ(**r.out, (std::vector<Fp>{Fp(10), Fp(20)}));
    for (auto ld : r.ld_signers) EXPECT_TRUE(ld.empty());
    for (auto ld : r.ld_intermediaries) EXPECT_TRUE(ld.empty());
  }
}

TEST(Aicp, BadBlindedPolynomialMakesSignaturePublic) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto r = run_aicp(4, 97, seed, {1, 2, 3}, {10}, PartySet{2}, std::make_shared<BadBlind>());
    ASSERT_TRUE(r.sig);
    EXPECT_TRUE((*r.sig)[0].is_public);
    ASSERT_TRUE(r.out && *r.out);
    EXPECT_EQ(**r.out, std::vector<Fp>{Fp(10)});
  }
}

TEST(Aicp, ForgeryRateWithinBoundSmallField) {
  const int trials = 3000;
  int forged = 0;
  auto st = make_strategy("forge-icsig");
  for (int s = 1; s <= trials; ++s) {
    auto r = run_aicp(4, 97, s, {1, 2, 3}, {10}, PartySet{2}, st);
    if (r.out && *r.out && **r.out != std::vector<Fp>{Fp(10)}) ++forged;
  }
  // eps = n t / (|F| - 1) = 4/96; generous slack for the small sample
  EXPECT_LE(forged, trials * 4 / 96 + 3 * 11);
  EXPECT_GT(forged, 0);  // the attack is not vacuous
}

TEST(Aicp, NoForgeryOverLargeField) {
  auto st = make_strategy("forge-icsig");
  for (int s = 1; s <= 200; ++s) {
    auto r = run_aicp(4, Fp::kMersenne61, s, {1, 2, 3}, {10}, PartySet{2}, st);
    if (r.out && *r.out) EXPECT_EQ(**r.out, std::vector<Fp>{Fp(10)});
  }
}

TEST(Aicp, NonRepudiationWithBadPoint) {
  auto st = make_strategy("bad-verification-point");
  int failures = 0;
  const int trials = 3000;
  for (int s = 1; s <= trials; ++s) {
    auto r = run_aicp(4, 97, s, {4, 2, 3}, {10}, PartySet{4}, st);
    ASSERT_TRUE(r.sig);
    if (!(r.out && *r.out && **r.out == std::vector<Fp>{(*r.sig)[0].value}))
      ++failures;
  }
  EXPECT_LE(failures, trials * 4 / 96 + 3 * 11);
}

TEST(Aicp, DisputeControlDiscardsRepeatOffender) {
  auto st = make_strategy("bad-verification-point");
  int dummies_helped = 0;
  for (int s = 1; s <= 40; ++s) {
    auto r = run_aicp(4, 97, s, {4, 2, 3}, {10}, PartySet{4}, st, 2);
    // the targeted verifier P1 caught the signer in the first session unless d was guessed
    if (r.ld_signers[0].contains(4)) {
      ++dummies_helped;
      ASSERT_TRUE(r.out && *r.out);
      EXPECT_EQ(**r.out, std::vector<Fp>{(*r.sig)[0].value});
    }
    for (PartyId i = 1; i <= 3; ++i) EXPECT_TRUE((r.ld_signers[i - 1] - PartySet{4}).empty());
  }
  EXPECT_GT(dummies_helped, 30);
}

TEST(Aicp, DiscardedIntermediaryRejectedOutright) {
  auto st = make_strategy("forge-icsig");
  int caught = 0;
  for (int s = 1; s <= 30; ++s) {
    auto r = run_aicp(4, 97, s, {1, 2, 3}, {10}, PartySet{2}, st, 2);
    if (r.ld_intermediaries[2].contains(2)) {
      ++caught;
      // the second reveal was rejected without looking at points
      ASSERT_TRUE(r.out.has_value());
      EXPECT_FALSE(r.out->has_value());
    }
  }
  EXPECT_GT(caught, 20);
}

TEST(Aicp, CorruptVerifierViewIsConsistentWithEverySecret) {
  // t = 1 over GF(5): a corrupt verifier sees (alpha, v, m) and (d, B).
  Fp::Scope f(5);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    Fp s = Fp::random(rng);
    auto F = random_poly(s, 1, rng), M = random_poly(Fp::random(rng), 1, rng);
    Fp alpha = Fp::random_nonzero(rng), d = Fp::random_nonzero(rng);
    Fp v = poly_eval(F, alpha), m = poly_eval(M, alpha);
    std::vector<Fp> B{d * F[0] + M[0], d * F[1] + M[1]};
    for (std::uint64_t cand = 0; cand < 5; ++cand) {
      int consistent = 0;
      for (std::uint64_t f1 = 0; f1 < 5; ++f1) {
        std::vector<Fp> Fc{Fp(cand), Fp(f1)};
        std::vector<Fp> Mc{B[0] - d * Fc[0], B[1] - d * Fc[1]};
        if (poly_eval(Fc, alpha) == v && poly_eval(Mc, alpha) == m) ++consistent;
      }
      EXPECT_EQ(consistent, 1) << "candidate " << cand;
    }
  }
}
