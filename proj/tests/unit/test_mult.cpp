#include <gtest/gtest.h>

#include "gampc/bcast/aba.hpp"
#include "gampc/harness/strategies.hpp"
#include "gampc/mult/mult.hpp"
#include "gampc/mult/stat_mult.hpp"
#include "gampc/vss/vss.hpp"

using namespace gampc;

namespace {

template <class T>
Task<void> store(Task<T> t, std::optional<T>* out) {
  auto v = co_await std::move(t);
  *out = std::move(v);
}

struct Inputs {
  std::vector<FullSharing> a, b;
  std::vector<ShareVector> a_view(const SharingSpec& s, PartyId i) const { return view(a, s, i); }
  std::vector<ShareVector> b_view(const SharingSpec& s, PartyId i) const { return view(b, s, i); }
  static std::vector<ShareVector> view(const std::vector<FullSharing>& x, const SharingSpec& s, PartyId i) {
    std::vector<ShareVector> out;
    for (const auto& f : x) out.push_back(f.view(s, i));
    return out;
  }
};

Inputs random_inputs(std::size_t h, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Inputs in;
  for (std::size_t i = 0; i < m; ++i) {
    in.a.push_back(random_sharing(Fp::random(rng), h, rng));
    in.b.push_back(random_sharing(Fp::random(rng), h, rng));
  }
  return in;
}

// Value of a sharing held by the honest parties; every honest member of a group
// must hold the same share.
Fp open_honest(const SharingSpec& s, PartySet honest, const std::vector<const ShareVector*>& views) {
  Fp sum;
  for (std::size_t q = 0; q < s.size(); ++q) {
    std::optional<Fp> v;
    for (PartyId i : (s.group(q) & honest).members()) {
      Fp x = views[i]->at(static_cast<int>(q));
      if (v) EXPECT_EQ(*v, x) << "group " << q;
      v = x;
    }
    if (!v) ADD_FAILURE() << "no honest member in group " << q;
    sum += v.value_or(Fp());
  }
  return sum;
}

template <class R, class F>
Fp open_field(const Sim& sim, const std::vector<std::optional<R>>& out, F get) {
  std::vector<const ShareVector*> views(sim.n() + 1, nullptr);
  for (PartyId i : sim.honest().members()) views[i] = &get(*out[i]);
  return open_honest(sim.ctx().s, sim.honest(), views);
}

Sim make_sim(int n, std::uint64_t seed, PartySet corrupt = {}, std::shared_ptr<Strategy> st = nullptr,
             std::uint64_t prime = Fp::kMersenne61) {
  Config cfg;
  cfg.prime = prime;
  return Sim(AdversaryStructure::singletons(n), cfg, {seed}, corrupt, std::move(st));
}

void install_oracles(Sim& sim) {
  install_fvss_oracle(sim);
  install_aba_oracle(sim);
}

// Offsets its summand sums only in the summand loops of the given instances.
struct TargetedOffset : Strategy {
  std::vector<int> instances;
  explicit TargetedOffset(std::vector<int> z) : instances(std::move(z)) {}
  std::string name() const override { return "targeted-offset"; }
  void tamper(Party&, const HookCtx& h, std::vector<Fp>& v) override {
    if (h.kind == Hook::Summand && std::count(instances.begin(), instances.end(), h.a))
      for (Fp& x : v) x += Fp(1);
  }
};

}  // namespace

TEST(Summands, PairsAndCoverage) {
  auto z5 = AdversaryStructure::singletons(5);
  SharingSpec s5(z5);
  EXPECT_EQ(local_pairs(s5, 1).size(), 16u);
  EXPECT_TRUE(summands_coverable(z5, 2));
  auto z4 = AdversaryStructure::singletons(4);
  EXPECT_TRUE(summands_coverable(z4, 1));
  EXPECT_FALSE(summands_coverable(z4, 2));
  EXPECT_TRUE(summands_coverable(AdversaryStructure::threshold(9, 2), 2));
  EXPECT_EQ(pair_intersection({1, 3, 5, 7}, {3, 4, 7}), (std::vector<int>{3, 7}));
}

TEST(OptMult, HonestExcludingP5) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Sim sim = make_sim(5, seed);
    install_oracles(sim);
    const auto& s = sim.ctx().s;
    auto in = random_inputs(s.size(), 2, seed);
    SidId sid = sim.sids().path("om");
    std::vector<std::optional<SummandRun>> out(6);
    for (PartyId i = 1; i <= 5; ++i) {
      SummandParams prm;
      prm.excluded = PartySet{5};
      sim.party(i).spawn(store(summand_loop(sim.party(i), sid, in.a_view(s, i), in.b_view(s, i), prm), &out[i]));
    }
    sim.run();
    for (PartyId i = 1; i <= 5; ++i) ASSERT_TRUE(out[i]) << seed;
    const SummandRun& r = *out[1];
    EXPECT_LE(r.hops, 4);
    for (PartyId i = 2; i <= 5; ++i) EXPECT_EQ(out[i]->selected, r.selected);
    // every pair claimed by exactly one selected party, P5 never selected
    std::vector<int> owner(s.size() * s.size(), 0);
    for (const auto& [j, pairs] : r.claimed) {
      EXPECT_NE(j, 5);
      for (int pq : pairs) {
        EXPECT_EQ(owner[pq], 0);
        owner[pq] = j;
      }
    }
    EXPECT_EQ(std::count(owner.begin(), owner.end(), 0), 0);
    for (std::size_t m = 0; m < 2; ++m) {
      Fp c = open_field(sim, out, [m](const SummandRun& x) -> const ShareVector& { return x.c[m]; });
      EXPECT_EQ(c, in.a[m].secret() * in.b[m].secret()) << seed;
    }
  }
}

TEST(OptMult, OffsetSummandShiftsProduct) {
  int seen = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Sim sim = make_sim(5, seed, PartySet{2}, make_strategy("offset-summand"));
    install_oracles(sim);
    const auto& s = sim.ctx().s;
    auto in = random_inputs(s.size(), 1, seed);
    SidId sid = sim.sids().path("om");
    std::vector<std::optional<SummandRun>> out(6);
    for (PartyId i = 1; i <= 5; ++i) {
      SummandParams prm;
      prm.excluded = PartySet{5};
      sim.party(i).spawn(store(summand_loop(sim.party(i), sid, in.a_view(s, i), in.b_view(s, i), prm), &out[i]));
    }
    sim.run();
    const SummandRun& r = *out[1];
    Fp c = open_field(sim, out, [](const SummandRun& x) -> const ShareVector& { return x.c[0]; });
    bool chosen = r.claimed.count(2) != 0;
    seen += chosen;
    EXPECT_EQ(c, in.a[0].secret() * in.b[0].secret() + (chosen ? Fp(1) : Fp(0))) << seed;
  }
  EXPECT_GT(seen, 0);
}

namespace {

struct CiOut {
  std::vector<MultCiResult> iters;
  std::shared_ptr<MultState> st;
};

// Runs multci iterations until success or `max_iters`.
Task<CiOut> ci_driver(Party& p, SidId sid, std::vector<ShareVector> a, std::vector<ShareVector> b, int max_iters) {
  CiOut out;
  out.st = std::make_shared<MultState>();
  out.st->root = sid;
  for (int iter = 1; iter <= max_iters; ++iter) {
    SidId it = p.sids().child(sid, iter);
    auto r = co_await multci_run(p, it, iter, a, b, out.st);
    bool ok = r.success;
    out.iters.push_back(std::move(r));
    if (ok) break;
  }
  co_return out;
}

std::vector<std::optional<CiOut>> run_ci(Sim& sim, const Inputs& in, int max_iters) {
  install_oracles(sim);
  const auto& s = sim.ctx().s;
  SidId sid = sim.sids().path("ci");
  std::vector<std::optional<CiOut>> out(sim.n() + 1);
  for (PartyId i = 1; i <= sim.n(); ++i)
    sim.party(i).spawn(store(ci_driver(sim.party(i), sid, in.a_view(s, i), in.b_view(s, i), max_iters), &out[i]));
  sim.run();
  return out;
}

}  // namespace

TEST(MultCi, HonestSucceeds) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Sim sim = make_sim(5, seed);
    auto in = random_inputs(sim.ctx().s.size(), 2, seed);
    auto out = run_ci(sim, in, 1);
    for (PartyId i = 1; i <= 5; ++i) {
      ASSERT_TRUE(out[i]);
      ASSERT_TRUE(out[i]->iters[0].success);
      EXPECT_TRUE(out[i]->st->discarded_any().empty());
    }
    for (std::size_t m = 0; m < 2; ++m) {
      Fp c = open_field(sim, out, [m](const CiOut& x) -> const ShareVector& { return x.iters[0].c[m]; });
      EXPECT_EQ(c, in.a[m].secret() * in.b[m].secret());
    }
  }
}

TEST(MultCi, InstanceOffsetIsCaughtAndDiscarded) {
  int failures = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Sim sim = make_sim(5, seed, PartySet{2}, std::make_shared<TargetedOffset>(std::vector<int>{2, 3, 4}));
    auto in = random_inputs(sim.ctx().s.size(), 1, seed);
    auto out = run_ci(sim, in, 1);
    const MultCiResult& r = out[1]->iters[0];
    bool cheated = false;
    for (int zi : {2, 3, 4}) cheated |= r.runs[zi].claimed.count(2) != 0;
    EXPECT_EQ(r.success, !cheated) << seed;
    if (r.success) continue;
    ++failures;
    EXPECT_TRUE(r.conflict_z >= 2 && r.conflict_z <= 4);
    for (PartyId i : sim.honest().members()) {
      EXPECT_EQ(out[i]->iters[0].conflict_z, r.conflict_z);
      EXPECT_EQ(out[i]->st->ld[1], PartySet{2}) << "party " << i << " seed " << seed;
      for (PartyId j : sim.honest().members()) EXPECT_FALSE(out[i]->st->waitlisted(sim.party(i), 1, j));
    }
  }
  EXPECT_GT(failures, 0);
}

TEST(MultCi, WithheldPartitionsKeepCheaterWaitlisted) {
  int second = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Sim sim = make_sim(5, seed, PartySet{3}, make_strategy("withhold-partitions"));
    auto in = random_inputs(sim.ctx().s.size(), 1, seed);
    auto out = run_ci(sim, in, 3);
    const auto& iters = out[1]->iters;
    ASSERT_TRUE(iters.back().success) << seed;
    EXPECT_LE(iters.size(), 2u);
    if (iters.size() == 2) {
      ++second;
      for (const auto& run : iters[1].runs) EXPECT_EQ(run.claimed.count(3), 0u) << seed;
      for (PartyId i : sim.honest().members()) EXPECT_TRUE(out[i]->st->waitlisted(sim.party(i), 1, 3));
    }
    Fp c = open_field(sim, out, [](const CiOut& x) -> const ShareVector& { return x.iters.back().c[0]; });
    EXPECT_EQ(c, in.a[0].secret() * in.b[0].secret());
  }
  EXPECT_GT(second, 0);
}

TEST(Mult, BudgetFormula) {
  EXPECT_EQ(mult_iteration_budget(AdversaryStructure::singletons(5)), 7);
  EXPECT_EQ(mult_iteration_budget(AdversaryStructure::threshold(9, 2)), 2 * (2 * 9 + 1) + 1);
}

TEST(Mult, CorrectUnderEveryStrategy) {
  for (const std::string& name : strategy_names())
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      Sim sim = make_sim(5, seed, PartySet{2}, make_strategy(name));
      install_oracles(sim);
      const auto& s = sim.ctx().s;
      auto in = random_inputs(s.size(), 1, seed);
      SidId sid = sim.sids().path("mult");
      std::vector<std::optional<MultResult>> out(6);
      for (PartyId i = 1; i <= 5; ++i)
        sim.party(i).spawn(store(mult_run(sim.party(i), sid, in.a_view(s, i), in.b_view(s, i)), &out[i]));
      sim.run();
      for (PartyId i : sim.honest().members()) {
        ASSERT_TRUE(out[i]) << name << " seed " << seed;
        EXPECT_LE(out[i]->iterations, 7);
        EXPECT_TRUE(out[i]->state->gd.subset_of(PartySet{2}));
        EXPECT_TRUE(out[i]->state->discarded_any().subset_of(PartySet{2}));
      }
      Fp c = open_field(sim, out, [](const MultResult& x) -> const ShareVector& { return x.c[0]; });
      EXPECT_EQ(c, in.a[0].secret() * in.b[0].secret()) << name << " seed " << seed;
      // honest parties leave every honest wait list
      for (PartyId i : sim.honest().members())
        for (const auto& [iter, wl] : out[i]->state->w)
          for (PartyId j : sim.honest().members()) EXPECT_FALSE(out[i]->state->waitlisted(sim.party(i), iter, j));
      const std::uint64_t n5 = 5ull * 5 * 5 * 5 * 5;
      EXPECT_LE(sim.metrics().total().fvss_calls, 4 * 5 * n5);
      EXPECT_LE(sim.metrics().total().faba_calls, 4 * 5 * n5);
    }
}

TEST(PerTriples, ThreeValidTriples) {
  for (const char* name : {"", "offset-summand"})
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      Sim sim = *name ? make_sim(5, seed, PartySet{4}, make_strategy(name)) : make_sim(5, seed);
      install_oracles(sim);
      SidId sid = sim.sids().path("prep/tri");
      std::vector<std::optional<TriplesResult>> out(6);
      for (PartyId i = 1; i <= 5; ++i) sim.party(i).spawn(store(pertriples_run(sim.party(i), sid, 3), &out[i]));
      sim.run();
      for (PartyId i : sim.honest().members()) {
        ASSERT_TRUE(out[i]);
        ASSERT_EQ(out[i]->triples.size(), 3u);
        EXPECT_TRUE(sim.ctx().z.complement_in(out[i]->cs));
      }
      std::vector<Fp> as;
      for (std::size_t l = 0; l < 3; ++l) {
        Fp a = open_field(sim, out, [l](const TriplesResult& x) -> const ShareVector& { return x.triples[l].a; });
        Fp b = open_field(sim, out, [l](const TriplesResult& x) -> const ShareVector& { return x.triples[l].b; });
        Fp c = open_field(sim, out, [l](const TriplesResult& x) -> const ShareVector& { return x.triples[l].c; });
        EXPECT_EQ(c, a * b);
        as.push_back(a);
      }
      EXPECT_NE(as[0], as[1]);
      EXPECT_NE(as[1], as[2]);
    }
}

TEST(BasicMult, HonestAndWithDiscardedParty) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const bool discard = seed % 2 == 0;
    Sim sim = discard ? make_sim(4, seed, PartySet{4}, make_strategy("silent")) : make_sim(4, seed);
    install_oracles(sim);
    const auto& s = sim.ctx().s;
    auto in = random_inputs(s.size(), 2, seed);
    SidId sid = sim.sids().path("bm");
    std::vector<std::optional<SummandRun>> out(5);
    PartySet gd = discard ? PartySet{4} : PartySet{};
    for (PartyId i = 1; i <= 4; ++i)
      sim.party(i).spawn(store(basicmult_run(sim.party(i), sid, in.a_view(s, i), in.b_view(s, i), gd, 1), &out[i]));
    sim.run();
    for (PartyId i : sim.honest().members()) {
      ASSERT_TRUE(out[i]) << seed;
      EXPECT_EQ(out[i]->claimed.count(4), discard ? 0u : out[i]->claimed.count(4));
    }
    for (std::size_t m = 0; m < 2; ++m) {
      Fp c = open_field(sim, out, [m](const SummandRun& x) -> const ShareVector& { return x.c[m]; });
      EXPECT_EQ(c, in.a[m].secret() * in.b[m].secret());
    }
  }
}

TEST(RandMultCi, CheaterIsDiscardedOrHarmless) {
  int caught = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Sim sim = make_sim(4, seed, PartySet{2}, make_strategy("offset-summand"));
    install_oracles(sim);
    SidId sid = sim.sids().path("rm");
    std::vector<std::optional<RandMultResult>> out(5);
    for (PartyId i = 1; i <= 4; ++i)
      sim.party(i).spawn(store(randmultci_run(sim.party(i), sid, 2, PartySet{}, 1), &out[i]));
    sim.run();
    const RandMultResult& r = *out[1];
    for (PartyId i : sim.honest().members()) {
      ASSERT_TRUE(out[i]);
      EXPECT_EQ(out[i]->success, r.success);
      EXPECT_EQ(out[i]->gd, r.gd);
    }
    if (r.success) {
      for (std::size_t l = 0; l < 2; ++l) {
        Fp a = open_field(sim, out, [l](const RandMultResult& x) -> const ShareVector& { return x.triples[l].a; });
        Fp b = open_field(sim, out, [l](const RandMultResult& x) -> const ShareVector& { return x.triples[l].b; });
        Fp c = open_field(sim, out, [l](const RandMultResult& x) -> const ShareVector& { return x.triples[l].c; });
        EXPECT_EQ(c, a * b) << seed;
      }
    } else {
      ++caught;
      EXPECT_EQ(r.gd, PartySet{2}) << seed;
    }
  }
  EXPECT_GT(caught, 0);
}

TEST(StatTriples, PersistentCheaterDiscardedOnce) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Sim sim = make_sim(4, seed, PartySet{3}, make_strategy("offset-summand"));
    install_oracles(sim);
    SidId sid = sim.sids().path("prep/st");
    std::vector<std::optional<TriplesResult>> out(5);
    for (PartyId i = 1; i <= 4; ++i) sim.party(i).spawn(store(stattriples_run(sim.party(i), sid, 2), &out[i]));
    sim.run();
    for (PartyId i : sim.honest().members()) {
      ASSERT_TRUE(out[i]);
      EXPECT_LE(out[i]->iterations, 2);
      EXPECT_TRUE(out[i]->gd.subset_of(PartySet{3}));
      EXPECT_EQ(out[i]->iterations == 2, out[i]->gd == PartySet{3});
    }
    for (std::size_t l = 0; l < 2; ++l) {
      Fp a = open_field(sim, out, [l](const TriplesResult& x) -> const ShareVector& { return x.triples[l].a; });
      Fp b = open_field(sim, out, [l](const TriplesResult& x) -> const ShareVector& { return x.triples[l].b; });
      Fp c = open_field(sim, out, [l](const TriplesResult& x) -> const ShareVector& { return x.triples[l].c; });
      EXPECT_EQ(c, a * b);
    }
  }
}

TEST(PerTriples, ComposedWithPerfectVss) {
  Config cfg;
  cfg.vss = VssMode::Perfect;
  Sim sim(AdversaryStructure::singletons(5), cfg, {7});
  install_aba_oracle(sim);
  SidId sid = sim.sids().path("prep/tri");
  std::vector<std::optional<TriplesResult>> out(6);
  for (PartyId i = 1; i <= 5; ++i) sim.party(i).spawn(store(pertriples_run(sim.party(i), sid, 1), &out[i]));
  sim.run();
  for (PartyId i = 1; i <= 5; ++i) ASSERT_TRUE(out[i]);
  Fp a = open_field(sim, out, [](const TriplesResult& x) -> const ShareVector& { return x.triples[0].a; });
  Fp b = open_field(sim, out, [](const TriplesResult& x) -> const ShareVector& { return x.triples[0].b; });
  Fp c = open_field(sim, out, [](const TriplesResult& x) -> const ShareVector& { return x.triples[0].c; });
  EXPECT_EQ(c, a * b);
  EXPECT_GT(sim.metrics().protocol("acast").facast_calls, 0u);
}
