// End-to-end acceptance checks: one PASS/FAIL line per criterion, exit status 1
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "gampc/harness/scenario.hpp"
#include "gampc/harness/strategies.hpp"

using namespace gampc;
using nlohmann::json;

namespace {

int jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

Report run(json j) { return run_scenario(scenario_from_json(j), jobs()); }

json base(const char* protocol, int n) { return {{"protocol", protocol}, {"n", n}, {"Z", "singletons"}}; }

std::vector<std::uint64_t> seed_range(std::uint64_t from, std::uint64_t count) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t k = 0; k < count; ++k) v.push_back(from + k);
  return v;
}

std::string brief(const Report& r) {
  std::ostringstream os;
  os << r.name << " " << r.successes << "/" << r.failures << "/" << r.violations << " (ok/fail/viol)";
  if (!r.notes.empty()) os << " first violation: " << r.notes[0];
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

struct Criterion {
  int id;
  std::string title;
  std::function<bool(std::ostream&)> check;
};

bool c1_acast(std::ostream& os) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (const char* st : {"", "equivocate-acast", "silent"}) {
    json j = base("acast", 4);
    j["name"] = std::string("acast-") + (*st ? st : "honest");
    j["seeds"] = 100;
    if (*st) {
      j["corrupt"] = {1};
      j["strategy"] = st;
      j["params"] = {{"sender", 1}};
    }
    auto r = run(j);
    ok &= r.trials == 100 && r.violations == 0 && r.successes == 100;
    // honest sender, honest parties: n inp + n^2 echo + n^2 ready = 36 envelopes
    if (!*st) ok &= r.metrics_total.envelopes == 100u * 36u;
    os << brief(r) << "; ";
  }
  const double secs = seconds_since(t0);
  os << "time " << secs << " s (target < 5)";
  return ok && secs < 5;
}

bool c2_rec(std::ostream& os) {
  json j = base("rec", 4);
  j["name"] = "rec-lying";
  j["corrupt"] = {3};
  j["strategy"] = "lying-rec";
  j["seeds"] = 1000;
  auto r = run(j);
  // singletons, n = 4: each of 4 groups has 3 members sending one share to the one non-member
  const bool traffic = r.metrics_total.envelopes == 1000u * 12u && r.metrics_total.field_elems_sent == 1000u * 12u;
  os << brief(r) << "; envelopes/run " << r.metrics_total.envelopes / 1000.0 << " (expected 12)";
  return r.violations == 0 && r.successes == 1000 && traffic;
}

bool c3_pvss(std::ostream& os) {
  bool ok = true;
  for (PartyId dealer = 1; dealer <= 5; ++dealer) {
    json j = base("pvss", 5);
    j["name"] = "pvss-honest-dealer-" + std::to_string(dealer);
    j["seeds"] = 20;
    j["params"] = {{"dealer", dealer}, {"compare_hybrid", true}};
    auto r = run(j);
    ok &= r.violations == 0 && r.successes == 20;
    if (r.violations) os << brief(r) << "; ";
  }
  os << "honest dealers 5x20 schedules; ";
  std::uint64_t schedules = 0, with_output = 0;
  for (auto [st, count] : {std::pair<const char*, int>{"wrong-share-dealer", 8000}, {"silent", 1000}, {"drop-all", 1000}}) {
    json j = base("pvss", 5);
    j["name"] = std::string("pvss-") + st;
    j["corrupt"] = {5};
    j["strategy"] = st;
    j["seeds"] = count;
    j["params"] = {{"dealer", 5}};
    auto r = run(j);
    ok &= r.violations == 0;
    schedules += r.trials;
    with_output += r.extra_summary.value("output", 0);
    os << brief(r) << "; ";
  }
  os << "corrupt-dealer schedules " << schedules << " (" << with_output << " with consistent output)";
  return ok && schedules <= 10000;
}

bool c4_aicp(std::ostream& os) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (const char* st : {"forge-icsig", "bad-verification-point"}) {
    json j = base("aicp", 4);
    j["name"] = std::string("aicp-") + st + "-gf97";
    j["prime"] = 97;
    j["corrupt"] = {std::string(st) == "forge-icsig" ? 2 : 4};
    j["strategy"] = st;
    j["seeds"] = 50000;
    auto r = run(j);
    ok &= r.violations == 0 && r.bound_ok && r.trials >= 50000;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s rate %.5f (Wilson %.5f..%.5f) bound %.5f; ", st, r.error_rate, r.wilson.first,
                  r.wilson.second, *r.bound);
    os << buf;
    j["name"] = std::string("aicp-") + st + "-mersenne61";
    j.erase("prime");
    j["seeds"] = 1000;
    auto big = run(j);
    ok &= big.violations == 0 && big.error_events == 0;
    os << "2^61-1: " << big.error_events << " failures in 1000; ";
  }
  const double secs = seconds_since(t0);
  os << "time " << secs << " s (target < 120)";
  return ok && secs < 120;
}

bool c5_randmultci(std::ostream& os) {
  json j = base("randmultci", 4);
  j["name"] = "randmultci-offset-gf101";
  j["prime"] = 101;
  j["corrupt"] = {2};
  j["strategy"] = "offset-summand";
  j["trials"] = 100000;
  auto r = run(j);
  char buf[240];
  std::snprintf(buf, sizeof buf, "false success %llu/%llu = %.5f (Wilson %.5f..%.5f) bound %.5f; caught %llu",
                static_cast<unsigned long long>(r.error_events), static_cast<unsigned long long>(r.trials),
                r.error_rate, r.wilson.first, r.wilson.second, *r.bound, static_cast<unsigned long long>(r.failures));
  os << buf << "; " << brief(r);
  // violations include any failure whose GD is empty or holds an honest party
  return r.violations == 0 && r.bound_ok && r.failures > 0;
}

bool c6_mult(std::ostream& os) {
  bool ok = true;
  int max_iter = 0;
  for (const std::string& st : strategy_names()) {
    json j = base("mult", 5);
    j["name"] = "mult-" + st;
    j["corrupt"] = {2};
    j["strategy"] = st;
    j["seeds"] = 20;
    auto r = run(j);
    ok &= r.violations == 0 && r.successes == 20;
    max_iter = std::max(max_iter, r.extra_summary.value("max_iterations", 0));
    if (r.violations) os << brief(r) << "; ";
  }
  os << strategy_names().size() << " strategies x 20 seeds, max iterations " << max_iter << " (budget 7)";
  return ok && max_iter <= 7;
}

bool c7_mpc(std::ostream& os) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::uint64_t runs = 0, wrong = 0;
  for (bool statistical : {false, true}) {
    const int n = statistical ? 4 : 5;
    auto scenario = [&](const std::string& st, std::vector<std::uint64_t> seeds) {
      json j = base("mpc", n);
      j["name"] = std::string(statistical ? "mpc-statistical-" : "mpc-perfect-") + (st.empty() ? "honest" : st);
      j["mode"] = "composed";
      j["security"] = statistical ? "statistical" : "perfect";
      j["seeds"] = seeds;
      j["params"] = {{"gates", 10}, {"max_mul", 3}};
      if (!st.empty()) {
        j["corrupt"] = {n};
        j["strategy"] = st;
      }
      auto r = run(j);
      ok &= r.violations == 0 && r.error_events == 0;
      runs += r.trials;
      wrong += r.error_events;
      if (r.violations) os << brief(r) << "; ";
    };
    scenario("", seed_range(1, 50));
    std::uint64_t next = 1001;
    for (const std::string& st : strategy_names()) {
      scenario(st, seed_range(next, 6));
      next += 1000;
    }
  }
  const double secs = seconds_since(t0);
  os << runs << " composed runs (50 honest + 54 Byzantine per mode), " << wrong << " wrong outputs, time " << secs
     << " s (target < 600)";
  return ok && secs < 600;
}

bool c8_complexity(std::ostream& os) {
  const std::vector<int> ns{5, 7, 9};
  auto perfect = complexity_sweep("perfect", ns, 1, 1);
  auto stat = complexity_sweep("statistical", ns, 1, 1);
  auto rec = complexity_sweep("rec", ns, 1, 1);
  char buf[400];
  std::snprintf(buf, sizeof buf,
                "per n(n-1)-normalised slope: perfect %.3f (2 +- 0.3), statistical %.3f (1 +- 0.3); raw slopes %.3f / "
                "%.3f; rec normalised %.3f (raw %.3f)",
                perfect.slope_normalized, stat.slope_normalized, perfect.slope_raw, stat.slope_raw,
                rec.slope_normalized, rec.slope_raw);
  os << buf;
  return std::abs(perfect.slope_normalized - 2.0) <= 0.3 && std::abs(stat.slope_normalized - 1.0) <= 0.3;
}

bool c9_determinism(std::ostream& os) {
  bool ok = true;
  std::vector<json> configs;
  json a = base("randmultci", 4);
  a.update({{"name", "det-randmultci"}, {"prime", 101}, {"corrupt", {2}}, {"strategy", "offset-summand"}, {"seeds", 500}});
  json b = base("mpc", 5);
  b.update({{"name", "det-mpc"}, {"mode", "composed"}, {"corrupt", {1}}, {"strategy", "withhold-partitions"}, {"seeds", 8}});
  json c = base("aicp", 4);
  c.update({{"name", "det-aicp"}, {"prime", 97}, {"corrupt", {2}}, {"strategy", "forge-icsig"}, {"seeds", 2000}});
  for (const json& j : {a, b, c}) {
    auto s = scenario_from_json(j);
    const std::string first = run_scenario(s, 1).to_json().dump(2);
    const std::string again = run_scenario(s, 1).to_json().dump(2);
    const std::string threaded = run_scenario(s, 4).to_json().dump(2);
    const bool same = first == again && first == threaded;
    ok &= same;
    os << j["name"].get<std::string>() << (same ? " identical" : " DIFFERS") << " (" << first.size() << " bytes); ";
  }
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Acast suite", c1_acast},
      {2, "reconstruction suite", c2_rec},
      {3, "perfect VSS", c3_pvss},
      {4, "AICP error bounds", c4_aicp},
      {5, "RandMultCI cheat detection", c5_randmultci},
      {6, "Mult iteration budget", c6_mult},
      {7, "end-to-end MPC", c7_mpc},
      {8, "complexity trends", c8_complexity},
      {9, "determinism", c9_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    std::ostringstream details;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.check(details);
    } catch (const std::exception& e) {
      details << "exception: " << e.what();
    }
    failed += !ok;
    char t[32];
    std::snprintf(t, sizeof t, "%.1f s", seconds_since(t0));
    std::cout << "criterion " << c.id << " " << (ok ? "PASS" : "FAIL") << " [" << c.title << ", " << t
              << "] " << details.str() << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
