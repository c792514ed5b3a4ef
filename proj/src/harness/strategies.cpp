#include "gampc/harness/strategies.hpp"

#include <stdexcept>

#include "gampc/netsim/sim.hpp"

namespace gampc {

namespace {

struct Silent : Strategy {
  std::string name() const override { return "silent"; }
  bool on_deliver(Party&, const Envelope&) override { return false; }
  void on_send(Party&, Envelope&&, std::vector<Envelope>&) override {}
};

struct DropAll : Strategy {
  std::string name() const override { return "drop-all"; }
  void on_send(Party&, Envelope&& e, std::vector<Envelope>& out) override {
    if (e.dst > kMaxParties) out.push_back(std::move(e));
  }
};

struct EquivocateAcast : Strategy {
  std::string name() const override { return "equivocate-acast"; }
  void on_send(Party& p, Envelope&& e, std::vector<Envelope>& out) override {
    if (e.tag == Tag::AcastInp && e.dst > p.n() / 2 && e.w.size() > 1) e.w.back() += 1;
    out.push_back(std::move(e));
  }
};

struct WrongShareDealer : Strategy {
  std::string name() const override { return "wrong-share-dealer"; }
  void tamper(Party& p, const HookCtx& h, std::vector<Fp>& v) override {
    if (h.kind == Hook::Deal && p.ctx().cfg.vss == VssMode::Oracle && !v.empty()) v[0] += Fp(1);
    if (h.kind == Hook::DealMember && h.a == target_group(p) && h.b == target_member(p)) v[0] += Fp(1);
  }
  // first group with two honest members; its highest honest member gets the bad share
  static int target_group(Party& p) {
    const auto& s = p.ctx().s;
    for (std::size_t q = 0; q < s.size(); ++q)
      if ((s.group(q) - p.sim().corrupt()).size() >= 2) return static_cast<int>(q);
    return -1;
  }
  static int target_member(Party& p) {
    int q = target_group(p);
    if (q < 0) return 0;
    auto honest = (p.ctx().s.group(q) - p.sim().corrupt()).members();
    return honest.back();
  }
};

struct OffsetSummand : Strategy {
  bool withhold_partitions;
  explicit OffsetSummand(bool w) : withhold_partitions(w) {}
  std::string name() const override { return withhold_partitions ? "withhold-partitions" : "offset-summand"; }
  void tamper(Party&, const HookCtx& h, std::vector<Fp>& v) override {
    if (h.kind == Hook::Summand)
      for (Fp& x : v) x += Fp(1);
  }
  bool withhold(Party&, const HookCtx& h) override { return withhold_partitions && h.kind == Hook::Partition; }
};

struct ForgeIcsig : Strategy {
  std::map<SidId, std::vector<Fp>> forged;  // first component's F' per instance
  std::string name() const override { return "forge-icsig"; }
  void tamper(Party& p, const HookCtx& h, std::vector<Fp>& v) override {
    const int len = p.ctx().z.t() + 1;
    if (h.kind == Hook::AicpReveal && static_cast<int>(v.size()) >= len) {
      // F'(x) = F(x) + c*(1 - x/beta): shifts F(0) by c and keeps F(beta) for a guessed beta
      Fp c = Fp::random_nonzero(p.rng());
      v[0] += c;
      if (len > 1) {
        Fp beta = Fp::random_nonzero(p.rng());
        v[1] -= c * beta.inv();
      }
      forged[h.sid] = std::vector<Fp>(v.begin(), v.begin() + len);
    }
    // the intermediary's own verifier point is made consistent with F'
    if (h.kind == Hook::AicpRevealPoint && h.b == p.id() && v.size() >= 5)
      if (auto it = forged.find(h.sid); it != forged.end()) {
        Fp acc;
        for (std::size_t i = it->second.size(); i-- > 0;) acc = acc * v[0] + it->second[i];
        v[1] = acc;
      }
  }
};

struct BadVerificationPoint : Strategy {
  std::string name() const override { return "bad-verification-point"; }
  void tamper(Party& p, const HookCtx& h, std::vector<Fp>& v) override {
    if (h.kind == Hook::AicpPoint && h.a == p.sim().honest().min() && v.size() >= 3) {
      // shifted point that still passes the blinded check if the challenge d is guessed
      Fp guess = Fp::random_nonzero(p.rng());
      v[1] += Fp(1);
      v[2] -= guess;
    }
    if (h.kind == Hook::AicpVerdict)
      for (Fp& x : v) x = Fp(1);
    // own point at reveal: off F but consistent with B, so the receiver rejects it
    if (h.kind == Hook::AicpRevealPoint && h.a == p.id() && v.size() >= 5) {
      v[1] += Fp(1);
      v[2] = v[4] - v[3] * v[1];
    }
  }
};

// Replaces every share it sends during reconstruction by a random value.
struct LyingRec : Strategy {
  std::string name() const override { return "lying-rec"; }
  void on_send(Party& p, Envelope&& e, std::vector<Envelope>& out) override {
    if (e.tag == Tag::RecShare)
      for (auto& x : e.w) x = Fp::random(p.rng()).value();
    out.push_back(std::move(e));
  }
};

}  // namespace

const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names = {"silent",         "drop-all",           "equivocate-acast",
                                                 "wrong-share-dealer", "offset-summand", "withhold-partitions",
                                                 "forge-icsig",    "bad-verification-point", "lying-rec"};
  return names;
}

std::shared_ptr<Strategy> make_strategy(const std::string& name) {
  if (name == "silent") return std::make_shared<Silent>();
  if (name == "drop-all") return std::make_shared<DropAll>();
  if (name == "equivocate-acast") return std::make_shared<EquivocateAcast>();
  if (name == "wrong-share-dealer") return std::make_shared<WrongShareDealer>();
  if (name == "offset-summand") return std::make_shared<OffsetSummand>(false);
  if (name == "withhold-partitions") return std::make_shared<OffsetSummand>(true);
  if (name == "lying-rec") return std::make_shared<LyingRec>();
  if (name == "forge-icsig") return std::make_shared<ForgeIcsig>();
  if (name == "bad-verification-point") return std::make_shared<BadVerificationPoint>();
  throw std::invalid_argument("unknown strategy: " + name);
}

}  // namespace gampc
