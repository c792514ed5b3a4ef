#pragma once

#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "gampc/netsim/party.hpp"

namespace gampc {

// One simulated execution: parties, oracles, scheduler, metrics. Single-threaded;
// independent Sims may run on different threads.
class Sim {
 public:
  Sim(AdversaryStructure z, Config cfg, Schedule sch, PartySet corrupt = {},
      std::shared_ptr<Strategy> strategy = nullptr);
  ~Sim();
  Sim(const Sim&) = delete;
  Sim& operator=(const Sim&) = delete;

  int n() const { return ctx_.n(); }
  const Context& ctx() const { return ctx_; }
  SidRegistry& sids() { return sids_; }
  RunMetrics& metrics() { return metrics_; }
  Network& net() { return net_; }
  std::mt19937_64& rng() { return rng_; }

  Party& party(PartyId i) { return *parties_.at(i - 1); }
  PartySet corrupt() const { return corrupt_; }
  PartySet honest() const { return ctx_.z.all() - corrupt_; }
  Strategy* strategy() const { return strategy_.get(); }

  void install(PartyId id, std::unique_ptr<Endpoint> ep);
  Endpoint* endpoint(PartyId id) { return extra_[id].get(); }
  template <class T>
  T* oracle(PartyId id) {
    return dynamic_cast<T*>(extra_[id].get());
  }

  enum class Status { Stopped, Quiescent };
  // Delivers envelopes until stop() holds (checked before every delivery) or
  // nothing is in flight. Throws LivelockDetected past the step budget and
  // rethrows exceptions escaping party tasks.
  Status run(const std::function<bool()>& stop = [] { return false; });

 private:
  Fp::Scope field_;
  Context ctx_;
  SidRegistry sids_;
  RunMetrics metrics_;
  Network net_;
  std::mt19937_64 rng_;
  PartySet corrupt_;
  std::shared_ptr<Strategy> strategy_;
  std::vector<std::unique_ptr<Party>> parties_;
  std::array<std::unique_ptr<Endpoint>, kMaxEndpoint + 1> extra_;
};

}  // namespace gampc
