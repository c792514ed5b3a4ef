#include "gampc/netsim/network.hpp"

#include <algorithm>
#include <json.hpp>

namespace gampc {

namespace {

struct Later {
  bool operator()(const Envelope& a, const Envelope& b) const {
    if (a.deadline != b.deadline) return a.deadline > b.deadline;
    if (a.tiebreak != b.tiebreak) return a.tiebreak > b.tiebreak;
    return a.seq > b.seq;
  }
};

}  // namespace

Network::Network(Schedule sch, const SidRegistry& sids, RunMetrics& metrics)
    : sch_(sch), sids_(&sids), metrics_(&metrics), rng_(sch.seed ^ 0x5eed5eed5eedULL) {
  if (sch_.fairness_bound < 1) throw std::invalid_argument("fairness bound must be >= 1");
}

void Network::send(Envelope e) {
  e.bytes = static_cast<std::uint32_t>(8 * e.w.size() + 4);
  metrics_->on_send(e);
  enqueue(std::move(e));
}

void Network::inject(Envelope e) {
  if (e.src < 1 || e.src > kMaxParties || !corrupt_.contains(e.src))
    throw std::logic_error("injection from an honest or unknown source rejected");
  send(std::move(e));
}

void Network::enqueue(Envelope e) {
  if (e.dst < 1 || e.dst > kMaxEndpoint || !endpoints_[e.dst]) throw std::logic_error("send to unknown endpoint");
  std::uint64_t q = heap_.size() + 1;
  std::uint64_t slack = (static_cast<std::uint64_t>(sch_.fairness_bound) - 1) * q;
  e.send_step = now_;
  e.queue_at_send = q;
  e.deadline = now_ + q + (slack ? std::uniform_int_distribution<std::uint64_t>(0, slack)(rng_) : 0);
  e.tiebreak = rng_();
  e.seq = seq_++;
  heap_.push_back(std::move(e));
  std::push_heap(heap_.begin(), heap_.end(), Later{});
}

bool Network::step() {
  if (heap_.empty()) return false;
  std::pop_heap(heap_.begin(), heap_.end(), Later{});
  Envelope e = std::move(heap_.back());
  heap_.pop_back();
  ++now_;
  if (record_)
    transcript_.push_back({now_, e.src, e.dst, e.sid, e.tag, e.bytes, e.send_step, e.queue_at_send});
  endpoints_[e.dst]->deliver(std::move(e));
  return true;
}

bool check_fairness(const std::vector<TranscriptRecord>& t, int fairness_bound) {
  for (const auto& r : t) {
    // deliveries strictly between send and this delivery
    std::uint64_t between = r.step - r.send_step - 1;
    if (between > static_cast<std::uint64_t>(fairness_bound) * r.queue_at_send) return false;
  }
  return true;
}

void write_transcript_ndjson(std::ostream& os, const std::vector<TranscriptRecord>& t, const SidRegistry& sids) {
  for (const auto& r : t) {
    nlohmann::json j = {{"step", r.step},
                        {"src", r.src},
                        {"dst", r.dst},
                        {"sid", sids.str(r.sid)},
                        {"tag", std::string(tag_name(r.tag))},
                        {"bytes", r.bytes}};
    os << j.dump() << '\n';
  }
}

}  // namespace gampc
