#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gampc/core/field.hpp"

namespace gampc {

// Wires 0..num_inputs-1 are inputs (party i's r-th input is (i-1)*inputs_per_party + r);
// gate g writes wire num_inputs + g.
struct Gate {
  enum class Op { Add, Mul };
  Op op;
  int left;
  int right;
};

struct Circuit {
  int parties = 0;
  int inputs_per_party = 1;
  std::vector<Gate> gates;
  int output = 0;

  int num_inputs() const { return parties * inputs_per_party; }
  int num_wires() const { return num_inputs() + static_cast<int>(gates.size()); }
  int mul_count() const;
  // Throws std::invalid_argument when a gate reads a later wire or output is out of range.
  void validate() const;
};

// Throws std::invalid_argument on arity mismatch.
Fp eval_plaintext(const Circuit& c, const std::vector<Fp>& inputs);

// Random topologically valid circuit used by the end-to-end tests.
Circuit random_circuit(int parties, int inputs_per_party, int gate_count, int max_mul, std::mt19937_64& rng);

}  // namespace gampc
