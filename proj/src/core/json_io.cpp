#include "gampc/core/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace gampc {

using nlohmann::json;

AdversaryStructure adversary_from_json(const json& j) {
  int n = j.at("n").get<int>();
  const json& z = j.at("Z");
  if (z.is_string()) {
    if (z.get<std::string>() == "singletons") return AdversaryStructure::singletons(n);
    throw std::invalid_argument("unknown structure shorthand: " + z.get<std::string>());
  }
  std::vector<PartySet> sets;
  for (const json& s : z) {
    PartySet ps;
    for (const json& p : s) {
      int id = p.get<int>();
      if (id < 1 || id > n) throw std::invalid_argument("party id out of range in Z");
      ps.insert(id);
    }
    sets.push_back(ps);
  }
  return AdversaryStructure(n, sets);
}

json adversary_to_json(const AdversaryStructure& z) {
  json sets = json::array();
  for (PartySet s : z.sets()) sets.push_back(s.members());
  return {{"n", z.n()}, {"Z", sets}};
}

Circuit circuit_from_json(const json& j, int parties) {
  Circuit c;
  c.parties = j.value("parties", parties);
  c.inputs_per_party = j.value("inputs_per_party", 1);
  for (const json& g : j.at("gates")) {
    std::string op = g.at("op").get<std::string>();
    Gate gate{};
    if (op == "add")
      gate.op = Gate::Op::Add;
    else if (op == "mul")
      gate.op = Gate::Op::Mul;
    else
      throw std::invalid_argument("unknown gate op: " + op);
    gate.left = g.at("in").at(0).get<int>();
    gate.right = g.at("in").at(1).get<int>();
    c.gates.push_back(gate);
  }
  c.output = j.at("output").get<int>();
  c.validate();
  return c;
}

json circuit_to_json(const Circuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates)
    gates.push_back({{"op", g.op == Gate::Op::Add ? "add" : "mul"}, {"in", {g.left, g.right}}});
  return {{"parties", c.parties}, {"inputs_per_party", c.inputs_per_party}, {"gates", gates}, {"output", c.output}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

}  // namespace gampc
