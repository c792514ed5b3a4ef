#include "gampc/core/circuit.hpp"

#include <stdexcept>

namespace gampc {

int Circuit::mul_count() const {
  int m = 0;
  for (const Gate& g : gates) m += g.op == Gate::Op::Mul;
  return m;
}

void Circuit::validate() const {
  if (parties < 1 || inputs_per_party < 1) throw std::invalid_argument("circuit needs parties and inputs");
  for (std::size_t g = 0; g < gates.size(); ++g) {
    int self = num_inputs() + static_cast<int>(g);
    if (gates[g].left < 0 || gates[g].right < 0 || gates[g].left >= self || gates[g].right >= self)
      throw std::invalid_argument("gate " + std::to_string(g) + " reads a wire that is not earlier");
  }
  if (output < 0 || output >= num_wires()) throw std::invalid_argument("output wire out of range");
}

Fp eval_plaintext(const Circuit& c, const std::vector<Fp>& inputs) {
  c.validate();
  if (static_cast<int>(inputs.size()) != c.num_inputs())
    throw std::invalid_argument("expected " + std::to_string(c.num_inputs()) + " inputs, got " +
                                std::to_string(inputs.size()));
  std::vector<Fp> w(inputs);
  w.reserve(c.num_wires());
  for (const Gate& g : c.gates)
    w.push_back(g.op == Gate::Op::Add ? w[g.left] + w[g.right] : w[g.left] * w[g.right]);
  return w[c.output];
}

Circuit random_circuit(int parties, int inputs_per_party, int gate_count, int max_mul, std::mt19937_64& rng) {
  Circuit c;
  c.parties = parties;
  c.inputs_per_party = inputs_per_party;
  int muls = 0;
  for (int g = 0; g < gate_count; ++g) {
    int avail = c.num_inputs() + g;
    std::uniform_int_distribution<int> pick(0, avail - 1);
    bool mul = muls < max_mul && std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    muls += mul;
    // bias the left operand toward the newest wire so circuits are deep, not flat
    int left = g > 0 && std::uniform_int_distribution<int>(0, 2)(rng) ? avail - 1 : pick(rng);
    c.gates.push_back({mul ? Gate::Op::Mul : Gate::Op::Add, left, pick(rng)});
  }
  c.output = c.num_wires() - 1;
  return c;
}

}  // namespace gampc
