#include "gampc/netsim/sim.hpp"

namespace gampc {

Sim::Sim(AdversaryStructure z, Config cfg, Schedule sch, PartySet corrupt, std::shared_ptr<Strategy> strategy)
    : field_(cfg.prime),
      ctx_{z, SharingSpec(z), cfg},
      metrics_(sids_),
      net_(sch, sids_, metrics_),
      rng_(sch.seed * 0x9E3779B97F4A7C15ULL + 17),
      corrupt_(corrupt),
      strategy_(std::move(strategy)) {
  if (!corrupt.empty() && !ctx_.z.covers(corrupt))
    throw std::invalid_argument("corrupt set " + corrupt.str() + " is not in the adversary structure");
  if (!corrupt.empty() && !strategy_) throw std::invalid_argument("corrupt parties need a strategy");
  net_.set_corrupt(corrupt);
  for (PartyId i = 1; i <= n(); ++i) {
    parties_.push_back(std::make_unique<Party>(*this, i, sch.seed * 1000003ULL + static_cast<std::uint64_t>(i) * 7919ULL));
    if (corrupt.contains(i)) parties_.back()->set_strategy(strategy_.get());
    net_.attach(i, parties_.back().get());
  }
}

Sim::~Sim() {
  for (auto& p : parties_) p->shutdown();
  parties_.clear();
}

void Sim::install(PartyId id, std::unique_ptr<Endpoint> ep) {
  extra_.at(id) = std::move(ep);
  net_.attach(id, extra_[id].get());
}

Sim::Status Sim::run(const std::function<bool()>& stop) {
  while (true) {
    if (root_task_error()) std::rethrow_exception(std::exchange(root_task_error(), nullptr));
    if (stop()) return Status::Stopped;
    if (net_.steps() >= net_.schedule().step_budget)
      throw LivelockDetected("step budget of " + std::to_string(net_.schedule().step_budget) + " deliveries exceeded");
    if (!net_.step()) {
      if (root_task_error()) std::rethrow_exception(std::exchange(root_task_error(), nullptr));
      return stop() ? Status::Stopped : Status::Quiescent;
    }
  }
}

}  // namespace gampc
