#pragma once

#include <array>
#include <coroutine>
#include <deque>
#include <functional>
#include <memory>
#include <random>
#include <typeindex>
#include <unordered_map>
#include <vector>

#include "gampc/core/adversary.hpp"
#include "gampc/core/field.hpp"
#include "gampc/netsim/network.hpp"
#include "gampc/netsim/strategy.hpp"
#include "gampc/netsim/task.hpp"

namespace gampc {

class Sim;

enum class VssMode { Oracle, Perfect, Statistical };

struct Config {
  std::uint64_t prime = Fp::kMersenne61;
  VssMode vss = VssMode::Oracle;
  bool per_q_core = false;       // PVSS compatibility: one core set per group
  bool dispute_control = true;   // AICP local-discard lists
};

struct Context {
  AdversaryStructure z;
  SharingSpec s;
  Config cfg;
  int n() const { return z.n(); }
};

struct Msg {
  PartyId src;
  Tag tag;
  Words w;
};

class Party;
using TagHandler = void (*)(Party&, Envelope&&);
// Protocol modules that need to react to raw deliveries (Acast) register here;
// all other tags are stored in the per-session inbox.
std::array<TagHandler, kTagCount>& tag_handlers();

// Per-party module state, created on first use.
struct PartyService {
  virtual ~PartyService() = default;
};

class Party final : public Endpoint {
 public:
  Party(Sim& sim, PartyId id, std::uint64_t seed);
  ~Party() override;

  PartyId id() const { return id_; }
  int n() const;
  Sim& sim() { return *sim_; }
  const Context& ctx() const;
  SidRegistry& sids();
  std::mt19937_64& rng() { return rng_; }
  bool corrupt() const { return strategy_ != nullptr; }
  Strategy* strategy() const { return strategy_; }
  void set_strategy(Strategy* s) { strategy_ = s; }

  // messaging
  void send(PartyId dst, SidId sid, Tag tag, Words w, std::uint32_t field_elems);
  void send_to(PartySet dsts, SidId sid, Tag tag, const Words& w, std::uint32_t field_elems);
  void send_all(SidId sid, Tag tag, const Words& w, std::uint32_t field_elems);
  // local post: stored and wakes waiters, never metered
  void post(SidId sid, Tag tag, PartyId src, Words w);
  // wake waiters watching sid (or an ancestor) without storing anything
  void signal(SidId sid);

  const std::vector<Msg>& inbox(SidId sid) const;
  const Msg* find(SidId sid, Tag tag, PartyId src) const;
  const Msg* find(SidId sid, Tag tag) const;

  void deliver(Envelope&& e) override;

  // ---- coroutine plumbing ----
  class WaitAwaiter {
   public:
    WaitAwaiter(Party& p, std::vector<SidId> keys, std::function<bool()> pred)
        : party_(&p), keys_(std::move(keys)), pred_(std::move(pred)) {}
    WaitAwaiter(const WaitAwaiter&) = delete;
    WaitAwaiter& operator=(const WaitAwaiter&) = delete;
    ~WaitAwaiter();
    bool await_ready() { return pred_(); }
    void await_suspend(std::coroutine_handle<> h);
    void await_resume() {}

   private:
    friend class Party;
    Party* party_;
    std::vector<SidId> keys_;
    std::function<bool()> pred_;
    std::coroutine_handle<> handle_;
    bool registered_ = false;
    bool queued_ = false;
  };

  // Suspends until pred() holds; re-checked whenever something is posted under
  // one of the keys (a key matches its whole subtree).
  WaitAwaiter until(SidId key, std::function<bool()> pred) { return WaitAwaiter(*this, {key}, std::move(pred)); }
  WaitAwaiter until(std::vector<SidId> keys, std::function<bool()> pred) {
    return WaitAwaiter(*this, std::move(keys), std::move(pred));
  }

  // Starts a detached task owned by the party (runs until its first suspension).
  void spawn(Task<void> t);
  void drain();
  void shutdown();

  template <class T>
  T& service() {
    auto& slot = services_[std::type_index(typeid(T))];
    if (!slot) slot = std::make_unique<T>();
    return static_cast<T&>(*slot);
  }

 private:
  void wake(SidId sid);
  void unregister(WaitAwaiter* w);

  Sim* sim_;
  PartyId id_;
  std::mt19937_64 rng_;
  Strategy* strategy_ = nullptr;
  std::unordered_map<SidId, std::vector<Msg>> inbox_;
  std::unordered_map<SidId, std::vector<WaitAwaiter*>> waiters_;
  std::deque<WaitAwaiter*> pending_;
  std::vector<Task<void>> roots_;
  std::size_t roots_compact_at_ = 64;
  bool draining_ = false;
  bool shut_down_ = false;
  std::unordered_map<std::type_index, std::unique_ptr<PartyService>> services_;
};

// Error thrown inside a detached task; surfaced by Sim::run.
inline std::exception_ptr& root_task_error() { return detail::root_error; }

}  // namespace gampc
