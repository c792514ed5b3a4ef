#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <random>
#include <vector>

#include "gampc/netsim/metrics.hpp"
#include "gampc/netsim/sid.hpp"
#include "gampc/netsim/types.hpp"

namespace gampc {

class Endpoint {
 public:
  virtual ~Endpoint() = default;
  virtual void deliver(Envelope&& e) = 0;
};

struct Schedule {
  std::uint64_t seed = 1;
  int fairness_bound = 4;  // D
  std::uint64_t step_budget = 1'000'000;
};

struct TranscriptRecord {
  std::uint64_t step;
  PartyId src;
  PartyId dst;
  SidId sid;
  Tag tag;
  std::uint32_t bytes;
  std::uint64_t send_step;
  std::uint64_t queue_at_send;
};

// Earliest-deadline-first delivery. An envelope sent when the in-flight queue
// (including itself) has length Q gets a random deadline in [now+Q, now+D*Q];
// EDF meets every such deadline, so at most D*Q deliveries separate its send
// from its delivery while the order still looks adversarial.
class Network {
 public:
  Network(Schedule sch, const SidRegistry& sids, RunMetrics& metrics);

  void attach(PartyId id, Endpoint* ep) { endpoints_.at(id) = ep; }
  void set_corrupt(PartySet c) { corrupt_ = c; }
  PartySet corrupt() const { return corrupt_; }

  // Computes byte size, meters and enqueues.
  void send(Envelope e);
  // Adversarial injection; src must be a corrupt party.
  void inject(Envelope e);

  // Delivers one envelope; false if nothing is in flight.
  bool step();
  std::uint64_t steps() const { return now_; }
  std::size_t in_flight() const { return heap_.size(); }
  const Schedule& schedule() const { return sch_; }

  void set_record_transcript(bool on) { record_ = on; }
  const std::vector<TranscriptRecord>& transcript() const { return transcript_; }

 private:
  void enqueue(Envelope e);
  Schedule sch_;
  const SidRegistry* sids_;
  RunMetrics* metrics_;
  std::mt19937_64 rng_;
  std::array<Endpoint*, kMaxEndpoint + 1> endpoints_{};
  PartySet corrupt_;
  std::vector<Envelope> heap_;
  std::uint64_t now_ = 0;
  std::uint64_t seq_ = 0;
  bool record_ = false;
  std::vector<TranscriptRecord> transcript_;
};

// true iff every delivery happened within D * queue_at_send steps of its send
bool check_fairness(const std::vector<TranscriptRecord>& t, int fairness_bound);

// Newline-delimited JSON {step, src, dst, sid, tag, bytes}.
void write_transcript_ndjson(std::ostream& os, const std::vector<TranscriptRecord>& t, const SidRegistry& sids);

}  // namespace gampc
