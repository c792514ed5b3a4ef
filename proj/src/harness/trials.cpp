#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "gampc/aicp/aicp.hpp"
#include "gampc/bcast/aba.hpp"
#include "gampc/bcast/acast.hpp"
#include "gampc/core/json_io.hpp"
#include "gampc/harness/scenario.hpp"
#include "gampc/harness/strategies.hpp"
#include "gampc/mpc/mpc.hpp"
#include "gampc/mult/mult.hpp"
#include "gampc/mult/stat_mult.hpp"
#include "gampc/vss/vss.hpp"

namespace gampc {

namespace {

using Kind = TrialOutcome::Kind;

template <class T>
Task<void> store(Task<T> t, std::optional<T>* out) {
  auto v = co_await std::move(t);
  *out = std::move(v);
}

template <class T>
T param(const Scenario& s, const char* key, T def) {
  return s.params.contains(key) ? s.params.at(key).get<T>() : def;
}

std::shared_ptr<Strategy> strategy_of(const Scenario& s) {
  return s.strategy.empty() ? nullptr : make_strategy(s.strategy);
}

VssMode vss_mode(const Scenario& s, bool composed) {
  if (!composed) return VssMode::Oracle;
  return s.statistical ? VssMode::Statistical : VssMode::Perfect;
}

// A Sim for one trial of the scenario, with the transcript recorded.
struct TrialSim {
  Sim sim;
  int fairness;
  TrialSim(const Scenario& s, std::uint64_t seed, VssMode mode)
      : sim(s.z, make_config(s, mode), make_schedule(s, seed), s.corrupt, strategy_of(s)), fairness(s.fairness) {
    sim.net().set_record_transcript(true);
    if (mode == VssMode::Oracle) install_fvss_oracle(sim);
    install_aba_oracle(sim);
  }
  static Config make_config(const Scenario& s, VssMode mode) {
    Config cfg;
    cfg.prime = s.prime;
    cfg.vss = mode;
    cfg.per_q_core = param<bool>(s, "per_q_core", false);
    cfg.dispute_control = param<bool>(s, "dispute_control", true);
    return cfg;
  }
  static Schedule make_schedule(const Scenario& s, std::uint64_t seed) {
    Schedule sch;
    sch.seed = seed;
    sch.fairness_bound = s.fairness;
    sch.step_budget = param<std::uint64_t>(s, "step_budget", 50'000'000);
    return sch;
  }
  // Metrics and fairness; a fairness breach overrides the outcome.
  void finish(TrialOutcome& o) {
    o.metrics = sim.metrics().total();
    if (!check_fairness(sim.net().transcript(), fairness)) violate(o, "fairness bound exceeded");
  }
  static void violate(TrialOutcome& o, std::string note) {
    if (o.kind != Kind::Violation) o.note = std::move(note);
    o.kind = Kind::Violation;
  }
};

void violate(TrialOutcome& o, std::string note) { TrialSim::violate(o, std::move(note)); }

// Value of a sharing from the honest parties' views; nullopt if two honest
// members of a group disagree.
std::optional<Fp> open_honest(const Sim& sim, const std::function<const ShareVector&(PartyId)>& view) {
  const auto& s = sim.ctx().s;
  Fp sum;
  for (std::size_t q = 0; q < s.size(); ++q) {
    std::optional<Fp> v;
    for (PartyId i : (s.group(q) & sim.honest()).members()) {
      Fp x = view(i).at(static_cast<int>(q));
      if (v && *v != x) return std::nullopt;
      v = x;
    }
    if (!v) return std::nullopt;
    sum += *v;
  }
  return sum;
}

// Opens a, b, c of every triple; false (with a note) on inconsistent views,
// sets *wrong when some c != ab.
bool check_triples(const Sim& sim, const std::function<const std::vector<Triple>&(PartyId)>& get, std::size_t m,
                   bool* wrong, TrialOutcome& o) {
  for (PartyId i : sim.honest().members())
    if (get(i).size() != m) {
      violate(o, "wrong number of triples");
      return false;
    }
  *wrong = false;
  for (std::size_t l = 0; l < m; ++l) {
    auto a = open_honest(sim, [&](PartyId i) -> const ShareVector& { return get(i)[l].a; });
    auto b = open_honest(sim, [&](PartyId i) -> const ShareVector& { return get(i)[l].b; });
    auto c = open_honest(sim, [&](PartyId i) -> const ShareVector& { return get(i)[l].c; });
    if (!a || !b || !c) {
      violate(o, "honest views of a triple disagree");
      return false;
    }
    if (*c != *a * *b) *wrong = true;
  }
  return true;
}

std::vector<FullSharing> random_batch(std::size_t h, std::size_t k, std::mt19937_64& rng) {
  std::vector<FullSharing> out;
  for (std::size_t b = 0; b < k; ++b) out.push_back(random_sharing(Fp::random(rng), h, rng));
  return out;
}

// ---- acast: validity, agreement, totality; exact traffic when all honest ----

Task<void> acast_receive(Party& p, SidId sid, std::optional<Words>* out) { *out = co_await acast_await(p, sid); }

TrialOutcome acast_trial(const Scenario& s, std::uint64_t seed) {
  TrialSim t(s, seed, VssMode::Oracle);
  Sim& sim = t.sim;
  const int n = sim.n();
  const PartyId sender = param<int>(s, "sender", s.strategy == "equivocate-acast" ? s.corrupt.min() : 1);
  std::mt19937_64 rng(seed);
  Words m{Fp::random(rng).value()};
  SidId sid = acast_session(sim.sids(), sim.sids().root(), "bc", sender);
  std::vector<std::optional<Words>> out(n + 1);
  for (PartyId i = 1; i <= n; ++i) sim.party(i).spawn(acast_receive(sim.party(i), sid, &out[i]));
  acast_send(sim.party(sender), sid, m, 1);
  sim.run();

  TrialOutcome o;
  const PartySet honest = sim.honest();
  std::set<Words> values;
  int outputs = 0;
  for (PartyId i : honest.members())
    if (out[i]) {
      values.insert(*out[i]);
      ++outputs;
    }
  if (values.size() > 1) violate(o, "agreement");
  if (outputs != 0 && outputs != honest.size()) violate(o, "totality");
  if (honest.contains(sender) && (outputs != honest.size() || *values.begin() != m)) violate(o, "validity");
  if (s.corrupt.empty() && sim.metrics().total().envelopes != static_cast<std::uint64_t>(n + 2 * n * n))
    violate(o, "honest envelope count");
  o.extra["delivered"] = outputs > 0;
  t.finish(o);
  return o;
}

// ---- rec: the true sum at every honest party; exact traffic ----

Task<void> rec_party(Party& p, SidId sid, std::vector<ShareVector> x, std::optional<std::vector<Fp>>* out) {
  auto v = co_await rec(p, sid, std::move(x));
  *out = std::move(v);
}

TrialOutcome rec_trial(const Scenario& s, std::uint64_t seed) {
  TrialSim t(s, seed, VssMode::Oracle);
  Sim& sim = t.sim;
  const int n = sim.n();
  const auto& spec = sim.ctx().s;
  const std::size_t k = param<std::size_t>(s, "batch", 1);
  std::mt19937_64 rng(seed);
  auto batch = random_batch(spec.size(), k, rng);
  SidId sid = sim.sids().path("rec");
  std::vector<std::optional<std::vector<Fp>>> out(n + 1);
  for (PartyId i = 1; i <= n; ++i) {
    std::vector<ShareVector> mine;
    for (const auto& f : batch) mine.push_back(f.view(spec, i));
    sim.party(i).spawn(rec_party(sim.party(i), sid, std::move(mine), &out[i]));
  }
  sim.run();

  TrialOutcome o;
  for (PartyId i : sim.honest().members()) {
    if (!out[i] || out[i]->size() != k) {
      violate(o, "honest party without output");
      continue;
    }
    for (std::size_t b = 0; b < k; ++b)
      if ((*out[i])[b] != batch[b].secret()) violate(o, "wrong reconstruction");
  }
  // message-rewriting strategies keep the traffic shape
  if (s.strategy.empty() || s.strategy == "lying-rec") {
    Counters c = sim.metrics().total();
    if (c.envelopes != rec_envelopes(spec, n)) violate(o, "rec envelope count");
    if (c.field_elems_sent != rec_field_elems(spec, n, k)) violate(o, "rec field element count");
  }
  t.finish(o);
  return o;
}

// ---- vss: dealt shares (honest dealer) or consistent all-or-none output ----

struct VssOutcome {
  std::vector<std::optional<std::vector<ShareVector>>> out;
  Counters total;
  bool fair = true;
};

VssOutcome vss_once(const Scenario& s, std::uint64_t seed, VssMode mode, PartyId dealer,
                    const std::vector<FullSharing>& dealt) {
  TrialSim t(s, seed, mode);
  Sim& sim = t.sim;
  const int n = sim.n();
  SidId parent = sim.sids().path("vss");
  SidId sid = 0;
  for (PartyId i = 1; i <= n; ++i) sid = vss_open(sim.party(i), parent, "x", dealer);
  vss_deal(sim.party(dealer), sid, dealt);
  sim.run();
  VssOutcome r{std::vector<std::optional<std::vector<ShareVector>>>(n + 1), sim.metrics().total(),
               check_fairness(sim.net().transcript(), s.fairness)};
  for (PartyId i = 1; i <= n; ++i)
    if (auto* v = vss_result(sim.party(i), sid)) r.out[i] = *v;
  return r;
}

TrialOutcome vss_trial(const Scenario& s, std::uint64_t seed, VssMode mode) {
  Fp::Scope field(s.prime);
  const SharingSpec spec(s.z);
  const PartySet honest = s.z.all() - s.corrupt;
  const PartyId dealer = param<int>(s, "dealer", s.strategy == "wrong-share-dealer" ? s.corrupt.min() : 1);
  const std::size_t k = param<std::size_t>(s, "batch", 1);
  std::mt19937_64 rng(seed);
  auto dealt = random_batch(spec.size(), k, rng);
  auto r = vss_once(s, seed, mode, dealer, dealt);

  TrialOutcome o;
  o.metrics = r.total;
  if (!r.fair) violate(o, "fairness bound exceeded");
  int outputs = 0;
  for (PartyId i : honest.members()) outputs += r.out[i].has_value();
  if (honest.contains(dealer)) {
    for (PartyId i : honest.members())
      if (!r.out[i] || r.out[i]->size() != k) {
        violate(o, "honest dealer: missing output");
      } else {
        for (std::size_t b = 0; b < k; ++b)
          if ((*r.out[i])[b] != dealt[b].view(spec, i)) violate(o, "honest dealer: wrong shares");
      }
    if (param<bool>(s, "compare_hybrid", false) && mode != VssMode::Oracle) {
      auto h = vss_once(s, seed, VssMode::Oracle, dealer, dealt);
      for (PartyId i : honest.members())
        if (h.out[i] != r.out[i]) violate(o, "hybrid and composed bundles differ");
    }
  } else {
    if (outputs != 0 && outputs != honest.size()) violate(o, "corrupt dealer: partial output");
    for (PartyId i : honest.members())
      if (r.out[i] && r.out[i]->size() != r.out[honest.min()].value_or(*r.out[i]).size())
        violate(o, "corrupt dealer: batch sizes differ");
    if (outputs == honest.size()) {
      for (std::size_t q = 0; q < spec.size(); ++q)
        for (std::size_t b = 0; b < r.out[honest.min()]->size(); ++b) {
          std::optional<Fp> v;
          for (PartyId i : (spec.group(q) & honest).members()) {
            Fp x = r.out[i]->at(b).at(static_cast<int>(q));
            if (v && *v != x) violate(o, "corrupt dealer: inconsistent shares");
            v = x;
          }
        }
    }
  }
  o.extra["output"] = outputs > 0;
  return o;
}

// ---- aicp: forgery (corrupt I) and non-repudiation (corrupt S) error events ----

AicpRoles aicp_roles(const Scenario& s) {
  const PartySet honest = s.z.all() - s.corrupt;
  std::vector<PartyId> h = honest.members();
  AicpRoles r{1, 2, 3};
  if (s.strategy == "forge-icsig" && !s.corrupt.empty() && h.size() >= 2) r = {h[0], s.corrupt.min(), h[1]};
  if (s.strategy == "bad-verification-point" && !s.corrupt.empty() && h.size() >= 2)
    r = {s.corrupt.min(), h[0], h[1]};
  r.signer = param<int>(s, "signer", r.signer);
  r.intermediary = param<int>(s, "intermediary", r.intermediary);
  r.receiver = param<int>(s, "receiver", r.receiver);
  return r;
}

TrialOutcome aicp_trial(const Scenario& s, std::uint64_t seed) {
  TrialSim t(s, seed, VssMode::Oracle);
  Sim& sim = t.sim;
  const int n = sim.n();
  const AicpRoles roles = aicp_roles(s);
  const std::size_t k = param<std::size_t>(s, "values", 1);
  std::mt19937_64 rng(seed);
  std::vector<Fp> values;
  for (std::size_t b = 0; b < k; ++b) values.push_back(Fp::random(rng));
  SidId a = 0;
  for (PartyId i = 1; i <= n; ++i) a = aicp_open(sim.party(i), sim.sids().path("ic"), "0", roles);
  aicp_sign(sim.party(roles.signer), a, values);
  sim.run();
  for (PartyId i = 1; i <= n; ++i) aicp_reveal(sim.party(i), a);
  sim.run();

  TrialOutcome o;
  const PartySet corrupt = sim.corrupt();
  auto out = aicp_revealed(sim.party(roles.receiver), a);
  const bool accepted = out && *out;
  if (corrupt.contains(roles.receiver)) {
    o.kind = Kind::Failure;
    o.note = "receiver corrupt: nothing to check";
  } else if (!corrupt.contains(roles.signer) && !corrupt.contains(roles.intermediary)) {
    if (!accepted || **out != values) violate(o, "honest run not accepted");
  } else if (!corrupt.contains(roles.signer)) {
    // forgery: the receiver accepts values the signer never signed
    if (accepted && **out != values) o.error_event = true;
    if (!accepted) o.kind = Kind::Failure;
  } else if (!corrupt.contains(roles.intermediary)) {
    // non-repudiation: the honest intermediary's signature must be accepted
    auto sig = aicp_signature(sim.party(roles.intermediary), a);
    if (!sig) {
      o.kind = Kind::Failure;
      o.note = "authentication did not complete";
    } else {
      std::vector<Fp> signed_values;
      for (const auto& c : *sig) signed_values.push_back(c.value);
      if (!accepted || **out != signed_values) o.error_event = true;
    }
  }
  o.extra["accepted"] = accepted;
  t.finish(o);
  return o;
}

// ---- mult: c = ab within the iteration budget; W/LD/GD invariants ----

struct InputsAB {
  std::vector<FullSharing> a, b;
};

InputsAB random_inputs(std::size_t h, std::size_t m, std::mt19937_64& rng) {
  InputsAB in;
  for (std::size_t i = 0; i < m; ++i) {
    in.a.push_back(random_sharing(Fp::random(rng), h, rng));
    in.b.push_back(random_sharing(Fp::random(rng), h, rng));
  }
  return in;
}

std::vector<ShareVector> views(const std::vector<FullSharing>& x, const SharingSpec& s, PartyId i) {
  std::vector<ShareVector> out;
  for (const auto& f : x) out.push_back(f.view(s, i));
  return out;
}

TrialOutcome mult_trial(const Scenario& s, std::uint64_t seed) {
  TrialSim t(s, seed, vss_mode(s, s.composed));
  Sim& sim = t.sim;
  const int n = sim.n();
  const auto& spec = sim.ctx().s;
  const std::size_t m = param<std::size_t>(s, "batch", 1);
  std::mt19937_64 rng(seed);
  auto in = random_inputs(spec.size(), m, rng);
  SidId sid = sim.sids().path("mult");
  std::vector<std::optional<MultResult>> out(n + 1);
  for (PartyId i = 1; i <= n; ++i)
    sim.party(i).spawn(store(mult_run(sim.party(i), sid, views(in.a, spec, i), views(in.b, spec, i)), &out[i]));
  sim.run();

  TrialOutcome o;
  const PartySet honest = sim.honest();
  const int budget = mult_iteration_budget(s.z);
  int iterations = 0;
  for (PartyId i : honest.members()) {
    if (!out[i]) {
      violate(o, "honest party without output");
      continue;
    }
    const MultResult& r = *out[i];
    iterations = std::max(iterations, r.iterations);
    if (r.iterations > budget) violate(o, "iteration budget exceeded");
    if (!r.state->gd.subset_of(sim.corrupt())) violate(o, "honest party in GD");
    if (!r.state->discarded_any().subset_of(sim.corrupt())) violate(o, "honest party in LD");
    for (const auto& [iter, wl] : r.state->w)
      for (PartyId j : honest.members())
        if (r.state->waitlisted(sim.party(i), iter, j)) violate(o, "honest party left in W");
  }
  if (o.kind != Kind::Violation)
    for (std::size_t l = 0; l < m; ++l) {
      auto c = open_honest(sim, [&](PartyId i) -> const ShareVector& { return out[i]->c[l]; });
      if (!c) violate(o, "honest views of c disagree");
      else if (*c != in.a[l].secret() * in.b[l].secret()) violate(o, "c != ab");
    }
  o.extra["iterations"] = iterations;
  t.finish(o);
  return o;
}

// ---- triple pipelines ----

TrialOutcome pertriples_trial(const Scenario& s, std::uint64_t seed) {
  TrialSim t(s, seed, vss_mode(s, s.composed));
  Sim& sim = t.sim;
  const int n = sim.n();
  const std::size_t m = param<std::size_t>(s, "triples", 1);
  SidId sid = sim.sids().path("prep/tri");
  std::vector<std::optional<TriplesResult>> out(n + 1);
  for (PartyId i = 1; i <= n; ++i) sim.party(i).spawn(store(pertriples_run(sim.party(i), sid, m), &out[i]));
  sim.run();

  TrialOutcome o;
  bool complete = true;
  for (PartyId i : sim.honest().members()) {
    if (!out[i]) {
      violate(o, "honest party without output");
      complete = false;
      continue;
    }
    if (!sim.ctx().z.complement_in(out[i]->cs)) violate(o, "dealer set too small");
    if (!out[i]->gd.subset_of(sim.corrupt())) violate(o, "honest party in GD");
  }
  bool wrong = false;
  if (complete && check_triples(sim, [&](PartyId i) -> const std::vector<Triple>& { return out[i]->triples; }, m,
                                &wrong, o) &&
      wrong)
    violate(o, "c != ab");
  if (complete) o.extra["iterations"] = out[sim.honest().min()]->iterations;
  t.finish(o);
  return o;
}

TrialOutcome stattriples_trial(const Scenario& s, std::uint64_t seed) {
  TrialSim t(s, seed, vss_mode(s, s.composed));
  Sim& sim = t.sim;
  const int n = sim.n();
  const std::size_t m = param<std::size_t>(s, "triples", 1);
  SidId sid = sim.sids().path("prep/st");
  std::vector<std::optional<TriplesResult>> out(n + 1);
  for (PartyId i = 1; i <= n; ++i) sim.party(i).spawn(store(stattriples_run(sim.party(i), sid, m), &out[i]));
  sim.run();

  TrialOutcome o;
  bool complete = true;
  for (PartyId i : sim.honest().members()) {
    if (!out[i]) {
      violate(o, "honest party without output");
      complete = false;
      continue;
    }
    if (out[i]->iterations > n) violate(o, "iteration budget exceeded");
    if (!out[i]->gd.subset_of(sim.corrupt())) violate(o, "honest party in GD");
  }
  bool wrong = false;
  if (complete &&
      check_triples(sim, [&](PartyId i) -> const std::vector<Triple>& { return out[i]->triples; }, m, &wrong, o))
    o.error_event = wrong;
  if (complete) o.extra["iterations"] = out[sim.honest().min()]->iterations;
  t.finish(o);
  return o;
}

// One iteration with GD = {}: success must give valid triples except with
// probability 1/|F|; a failure must discard corrupt parties only.
TrialOutcome randmultci_trial(const Scenario& s, std::uint64_t seed) {
  TrialSim t(s, seed, vss_mode(s, s.composed));
  Sim& sim = t.sim;
  const int n = sim.n();
  const std::size_t m = param<std::size_t>(s, "triples", 1);
  SidId sid = sim.sids().path("rm");
  std::vector<std::optional<RandMultResult>> out(n + 1);
  for (PartyId i = 1; i <= n; ++i)
    sim.party(i).spawn(store(randmultci_run(sim.party(i), sid, m, PartySet{}, 1), &out[i]));
  sim.run();

  TrialOutcome o;
  const PartySet honest = sim.honest();
  for (PartyId i : honest.members())
    if (!out[i]) violate(o, "honest party without output");
  if (o.kind == Kind::Violation) {
    t.finish(o);
    return o;
  }
  const RandMultResult& r = *out[honest.min()];
  for (PartyId i : honest.members())
    if (out[i]->success != r.success || out[i]->gd != r.gd) violate(o, "honest parties disagree");
  if (r.success) {
    bool wrong = false;
    if (check_triples(sim, [&](PartyId i) -> const std::vector<Triple>& { return out[i]->triples; }, m, &wrong, o))
      o.error_event = wrong;
  } else {
    o.kind = o.kind == Kind::Violation ? o.kind : Kind::Failure;
    if (r.gd.empty()) violate(o, "failure without a discarded party");
    if (!r.gd.subset_of(sim.corrupt())) violate(o, "honest party discarded");
  }
  o.extra["success"] = r.success;
  t.finish(o);
  return o;
}

// ---- mpc: output = F_AMPC over the realized CS; 2 reconstructions per Mul ----

TrialOutcome mpc_trial(const Scenario& s, std::uint64_t seed) {
  MpcRunConfig rc;
  rc.z = s.z;
  rc.cfg = TrialSim::make_config(s, vss_mode(s, s.composed));
  rc.seed = seed;
  rc.fairness = s.fairness;
  rc.corrupt = s.corrupt;
  rc.strategy = strategy_of(s);
  rc.record_transcript = true;
  const std::string src = param<std::string>(s, "triples", "pipeline");
  if (src == "oracle") rc.triples = TripleSource::Oracle;
  else rc.triples = s.statistical ? TripleSource::Statistical : TripleSource::Perfect;
  Fp::Scope field(s.prime);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  if (s.params.contains("circuit")) {
    rc.circuit = circuit_from_json(s.params.at("circuit"), s.z.n());
  } else {
    rc.circuit = random_circuit(s.z.n(), param<int>(s, "inputs_per_party", 1), param<int>(s, "gates", 8),
                                param<int>(s, "max_mul", 3), rng);
  }
  for (int w = 0; w < rc.circuit.num_inputs(); ++w) rc.inputs.push_back(Fp::random(rng));
  auto r = run_mpc(rc);

  TrialOutcome o;
  o.metrics = r.totals;
  const PartySet honest = s.z.all() - s.corrupt;
  if (!r.fair) violate(o, "fairness bound exceeded");
  if (!r.agreement) violate(o, "honest outputs disagree");
  if (r.terminated != honest) violate(o, "honest party did not terminate");
  if (!r.reference) violate(o, "no reference output (CS too small)");
  if (r.y && r.reference && *r.y != *r.reference) {
    // perfect security admits no error; statistical errors are counted
    if (s.statistical) {
      o.error_event = true;
      if (o.kind == Kind::Success) o.kind = Kind::Failure;
    } else {
      violate(o, "output differs from the reference");
    }
  }
  if (r.mul_perrec_sessions != 2u * static_cast<std::uint64_t>(rc.circuit.mul_count()))
    violate(o, "reconstructions per Mul gate");
  o.extra["full_cs"] = r.cs == s.z.all();
  o.extra["mul_gates"] = rc.circuit.mul_count();
  return o;
}

}  // namespace

TrialOutcome run_trial(const Scenario& s, std::uint64_t seed) {
  try {
    const std::string& p = s.protocol;
    if (p == "acast") return acast_trial(s, seed);
    if (p == "rec") return rec_trial(s, seed);
    if (p == "fvss") return vss_trial(s, seed, VssMode::Oracle);
    if (p == "vss") return vss_trial(s, seed, vss_mode(s, s.composed));
    if (p == "pvss") return vss_trial(s, seed, VssMode::Perfect);
    if (p == "svss") return vss_trial(s, seed, VssMode::Statistical);
    if (p == "aicp") return aicp_trial(s, seed);
    if (p == "mult") return mult_trial(s, seed);
    if (p == "pertriples") return pertriples_trial(s, seed);
    if (p == "stattriples") return stattriples_trial(s, seed);
    if (p == "randmultci") return randmultci_trial(s, seed);
    if (p == "mpc") return mpc_trial(s, seed);
    throw ConfigError("unknown protocol: " + p);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    TrialOutcome o;
    o.kind = Kind::Violation;
    o.note = std::string("exception: ") + e.what();
    return o;
  }
}

}  // namespace gampc
