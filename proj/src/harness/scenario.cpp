#include "gampc/harness/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "gampc/bcast/aba.hpp"
#include "gampc/core/json_io.hpp"
#include "gampc/harness/strategies.hpp"
#include "gampc/mult/mult.hpp"
#include "gampc/mult/stat_mult.hpp"
#include "gampc/vss/vss.hpp"

namespace gampc {

const std::vector<std::string>& protocol_names() {
  static const std::vector<std::string> names{"acast", "rec",  "fvss",       "vss",         "pvss",       "svss",
                                              "aicp",  "mult", "pertriples", "stattriples", "randmultci", "mpc"};
  return names;
}

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (p == d) return true;
    if (p % d == 0) return false;
  }
  // deterministic Miller-Rabin for 64-bit inputs
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, b = mulmod(b, b, m))
      if (e & 1) r = mulmod(r, b, m);
    return r;
  };
  std::uint64_t d = p - 1;
  int r = 0;
  for (; d % 2 == 0; d /= 2) ++r;
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, p);
    if (x == 1 || x == p - 1) continue;
    bool composite = true;
    for (int i = 1; i < r && composite; ++i) {
      x = mulmod(x, x, p);
      if (x == p - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
    Scenario s;
    s.protocol = j.at("protocol").get<std::string>();
    s.name = j.value("name", s.protocol);
    s.z = adversary_from_json(j);
    s.prime = j.value("prime", Fp::kMersenne61);
    for (int p : j.value("corrupt", std::vector<int>{})) {
      if (p < 1 || p > s.z.n()) throw ConfigError("corrupt party out of range: " + std::to_string(p));
      s.corrupt.insert(p);
    }
    s.strategy = j.value("strategy", std::string());
    if (s.strategy == "honest") s.strategy.clear();
    const nlohmann::json* seeds = j.contains("seeds") ? &j.at("seeds") : j.contains("trials") ? &j.at("trials") : nullptr;
    if (!seeds) {
      s.seeds = {1};
    } else if (seeds->is_array()) {
      s.seeds = seeds->get<std::vector<std::uint64_t>>();
    } else {
      const auto count = seeds->get<std::uint64_t>();
      for (std::uint64_t k = 1; k <= count; ++k) s.seeds.push_back(k);
    }
    const std::string mode = j.value("mode", std::string("hybrid"));
    if (mode != "hybrid" && mode != "composed") throw ConfigError("mode must be hybrid or composed");
    s.composed = mode == "composed";
    const std::string sec = j.value("security", std::string("perfect"));
    if (sec != "perfect" && sec != "statistical") throw ConfigError("security must be perfect or statistical");
    s.statistical = sec == "statistical";
    s.fairness = j.value("fairness", 4);
    if (j.contains("bound")) s.bound = j.at("bound").get<double>();
    if (j.contains("params")) s.params = j.at("params");
    return s;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  }
}

int required_q(const Scenario& s) {
  const std::string& p = s.protocol;
  if (p == "pvss" || p == "mult" || p == "pertriples") return 4;
  if (p == "vss" || p == "mpc") return s.statistical ? 3 : 4;
  return 3;
}

void validate(const Scenario& s) {
  const auto& names = protocol_names();
  if (std::find(names.begin(), names.end(), s.protocol) == names.end())
    throw ConfigError("unknown protocol: " + s.protocol);
  if (!s.strategy.empty()) {
    const auto& st = strategy_names();
    if (std::find(st.begin(), st.end(), s.strategy) == st.end()) throw ConfigError("unknown strategy: " + s.strategy);
  }
  if (!is_prime(s.prime) || s.prime > Fp::kMersenne61) throw ConfigError("prime is not a prime <= 2^61-1");
  if (s.prime <= static_cast<std::uint64_t>(s.z.n())) throw ConfigError("field must have more than n nonzero elements");
  if (!s.corrupt.empty() && !s.z.covers(s.corrupt)) throw ConfigError("corrupt set " + s.corrupt.str() + " is not in Z");
  const int k = required_q(s);
  if (!q_condition(s.z.all(), s.z, k))
    throw ConfigError("protocol " + s.protocol + " needs Q^(" + std::to_string(k) + ") and Z does not satisfy it");
  if (s.seeds.empty()) throw ConfigError("no seeds");
  if (s.fairness < 1) throw ConfigError("fairness bound must be >= 1");
}

std::optional<double> default_bound(const Scenario& s) {
  if (s.bound) return s.bound;
  const double f1 = static_cast<double>(s.prime - 1);
  if (s.protocol == "aicp" && s.strategy == "forge-icsig") return s.z.n() * s.z.t() / f1;
  if (s.protocol == "aicp" && s.strategy == "bad-verification-point") return s.z.n() / f1;
  if (s.protocol == "randmultci") return 1.0 / static_cast<double>(s.prime);
  return std::nullopt;
}

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) return {0, 1};
  const double nn = static_cast<double>(n), p = static_cast<double>(k) / nn, z2 = z * z;
  const double centre = (p + z2 / (2 * nn)) / (1 + z2 / nn);
  const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / (1 + z2 / nn);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["protocol"] = protocol;
  j["trials"] = trials;
  j["successes"] = successes;
  j["failures"] = failures;
  j["violations"] = violations;
  j["error_events"] = error_events;
  j["error_rate"] = error_rate;
  j["wilson_3sigma"] = {wilson.first, wilson.second};
  j["bound"] = bound ? nlohmann::json(*bound) : nlohmann::json(nullptr);
  j["bound_ok"] = bound_ok;
  j["violation_notes"] = notes;
  nlohmann::json m = metrics_total.to_json();
  nlohmann::json mean = nlohmann::json::object();
  for (auto& [key, v] : m.items())
    mean[key] = trials ? static_cast<double>(v.get<std::uint64_t>()) / static_cast<double>(trials) : 0.0;
  j["metrics_total"] = m;
  j["metrics_mean"] = mean;
  j["summary"] = extra_summary;
  return j;
}

Report run_scenario(const Scenario& s, int jobs) {
  validate(s);
  const auto start = std::chrono::steady_clock::now();
  std::vector<TrialOutcome> outcomes(s.seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < outcomes.size();) outcomes[k] = run_trial(s, s.seeds[k]);
  };
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(outcomes.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  Report r;
  r.name = s.name;
  r.protocol = s.protocol;
  r.bound = default_bound(s);
  std::map<std::string, std::uint64_t> tallies;  // counts of boolean/integer extras
  for (const TrialOutcome& o : outcomes) {
    ++r.trials;
    switch (o.kind) {
      case TrialOutcome::Kind::Success: ++r.successes; break;
      case TrialOutcome::Kind::Failure: ++r.failures; break;
      case TrialOutcome::Kind::Violation:
        ++r.violations;
        if (r.notes.size() < 8 && std::find(r.notes.begin(), r.notes.end(), o.note) == r.notes.end())
          r.notes.push_back(o.note);
        break;
    }
    r.error_events += o.error_event;
    r.metrics_total += o.metrics;
    for (auto& [key, v] : o.extra.items()) {
      if (v.is_boolean() && v.get<bool>()) ++tallies[key];
      if (v.is_number_integer()) {
        auto x = v.get<std::int64_t>();
        auto& mx = tallies["max_" + key];
        mx = std::max<std::uint64_t>(mx, static_cast<std::uint64_t>(std::max<std::int64_t>(x, 0)));
      }
    }
  }
  for (const auto& [key, v] : tallies) r.extra_summary[key] = v;
  r.error_rate = r.trials ? static_cast<double>(r.error_events) / static_cast<double>(r.trials) : 0.0;
  r.wilson = wilson_interval(r.error_events, r.trials, 3.0);
  r.bound_ok = !r.bound || r.wilson.first <= *r.bound;
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("loglog_slope: need >= 2 paired points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0) throw std::invalid_argument("loglog_slope: degenerate x");
  return (n * sxy - sx * sy) / den;
}

namespace {

template <class T>
Task<void> store(Task<T> t, std::optional<T>* out) {
  auto v = co_await std::move(t);
  *out = std::move(v);
}

Task<void> rec_one(Party& p, SidId sid, ShareVector x) {
  auto v = co_await rec(p, sid, std::move(x));
  (void)v;
}

// Field elements sent in one hybrid run of the pipeline producing `triples` triples.
std::uint64_t pipeline_field_elems(const std::string& pipeline, int n, std::uint64_t seed, std::size_t triples) {
  Sim sim(AdversaryStructure::singletons(n), Config{}, Schedule{seed});
  install_fvss_oracle(sim);
  install_aba_oracle(sim);
  std::vector<std::optional<TriplesResult>> out(n + 1);
  if (pipeline == "rec") {
    std::mt19937_64 rng(seed);
    const auto& spec = sim.ctx().s;
    auto f = random_sharing(Fp::random(rng), spec.size(), rng);
    for (PartyId i = 1; i <= n; ++i) sim.party(i).spawn(rec_one(sim.party(i), sim.sids().path("rec"), f.view(spec, i)));
  } else {
    SidId sid = sim.sids().path("prep/tri");
    for (PartyId i = 1; i <= n; ++i) {
      if (pipeline == "perfect")
        sim.party(i).spawn(store(pertriples_run(sim.party(i), sid, triples), &out[i]));
      else if (pipeline == "statistical")
        sim.party(i).spawn(store(stattriples_run(sim.party(i), sid, triples), &out[i]));
      else
        throw ConfigError("unknown sweep pipeline: " + pipeline);
    }
  }
  sim.run();
  return sim.metrics().total().field_elems_sent;
}

}  // namespace

SweepReport complexity_sweep(const std::string& pipeline, const std::vector<int>& ns, int seeds, std::size_t triples) {
  if (ns.size() < 3) throw ConfigError("complexity_sweep needs at least three structure sizes");
  SweepReport r;
  r.pipeline = pipeline;
  const std::size_t per = pipeline == "rec" ? 1 : triples;
  std::vector<double> zs, raw, norm;
  for (int n : ns) {
    double total = 0;
    for (int k = 1; k <= seeds; ++k) total += static_cast<double>(pipeline_field_elems(pipeline, n, k, triples));
    SweepPoint pt;
    pt.n = n;
    pt.z_size = static_cast<std::size_t>(n);
    pt.fe_per_triple = total / seeds / static_cast<double>(per);
    pt.normalized = pt.fe_per_triple / (n * (n - 1.0));
    r.points.push_back(pt);
    zs.push_back(static_cast<double>(pt.z_size));
    raw.push_back(pt.fe_per_triple);
    norm.push_back(pt.normalized);
  }
  r.slope_raw = loglog_slope(zs, raw);
  r.slope_normalized = loglog_slope(zs, norm);
  return r;
}

nlohmann::json SweepReport::to_json() const {
  nlohmann::json j;
  j["pipeline"] = pipeline;
  j["points"] = nlohmann::json::array();
  for (const auto& p : points)
    j["points"].push_back({{"n", p.n}, {"Z", p.z_size}, {"fe_per_triple", p.fe_per_triple}, {"normalized", p.normalized}});
  j["slope_raw"] = slope_raw;
  j["slope_normalized"] = slope_normalized;
  return j;
}

}  // namespace gampc
