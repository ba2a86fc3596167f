#include "surgecc/circuit.hpp"

#include <algorithm>
#include <sstream>

#include "surgecc/rng.hpp"

namespace surgecc {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

int parse_label(const std::string& tok, int line) {
  size_t pos = 0;
  int v;
  try {
    v = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw CircuitParseError(line, "expected qubit label, got '" + tok + "'");
  }
  if (pos != tok.size() || v < 0)
    throw CircuitParseError(line, "expected non-negative qubit label, got '" + tok + "'");
  return v;
}

}  // namespace

LogicalCircuit parse_circuit(const std::string& text) {
  LogicalCircuit c;
  bool have_header = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks[0] != "qubits" || toks.size() != 2)
        throw CircuitParseError(lineno, "expected 'qubits <n>' header");
      c.num_qubits = parse_label(toks[1], lineno);
      have_header = true;
      continue;
    }
    Gate g;
    if (toks[0] == "cnot") {
      if (toks.size() != 3) throw CircuitParseError(lineno, "cnot takes two labels");
      g.kind = GateKind::Cnot;
      g.control = parse_label(toks[1], lineno);
      g.target = parse_label(toks[2], lineno);
      if (g.control == g.target)
        throw CircuitParseError(lineno, "cnot control equals target");
    } else if (toks[0] == "t") {
      if (toks.size() != 2) throw CircuitParseError(lineno, "t takes one label");
      g.kind = GateKind::T;
      g.target = parse_label(toks[1], lineno);
    } else {
      throw CircuitParseError(lineno, "unknown gate '" + toks[0] + "'");
    }
    if (g.target >= c.num_qubits || g.control >= c.num_qubits)
      throw CircuitParseError(lineno, "label exceeds declared qubit count");
    c.gates.push_back(g);
  }
  if (!have_header) throw CircuitParseError(lineno, "missing 'qubits <n>' header");
  return c;
}

std::string serialize_circuit(const LogicalCircuit& c) {
  std::string out = "qubits " + std::to_string(c.num_qubits) + "\n";
  for (const auto& g : c.gates) {
    if (g.kind == GateKind::Cnot)
      out += "cnot " + std::to_string(g.control) + " " + std::to_string(g.target) + "\n";
    else
      out += "t " + std::to_string(g.target) + "\n";
  }
  return out;
}

LayeredCircuit layer_circuit(const LogicalCircuit& c) {
  LayeredCircuit lc;
  // earliest admissible layer per qubit = 1 + last layer touching it
  std::vector<int> next_free(c.num_qubits, 0);
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    int layer = next_free[g.target];
    if (g.kind == GateKind::Cnot) layer = std::max(layer, next_free[g.control]);
    if (static_cast<size_t>(layer) >= lc.layers.size()) lc.layers.resize(layer + 1);
    lc.layers[layer].push_back({g, static_cast<int>(i)});
    next_free[g.target] = layer + 1;
    if (g.kind == GateKind::Cnot) next_free[g.control] = layer + 1;
  }
  return lc;
}

namespace {

// seq family: gates come in consecutive pairs with disjoint labels; each gate
// of a pair inherits one label from its counterpart in the previous pair, so
// ASAP layering chains every pair strictly after its predecessor.
LogicalCircuit generate_seq(const RandomCircuitSpec& spec, Rng& rng) {
  const int q = spec.num_qubits;
  if (q < 4) throw std::invalid_argument("seq family needs at least 4 qubits");
  LogicalCircuit c;
  c.num_qubits = q;
  // chain[s] is the label slot s inherits from the previous pair (2 slots)
  int chain[2] = {-1, -1};
  auto fresh = [&](std::vector<int>& used) {
    for (;;) {
      int l = static_cast<int>(rng.below(static_cast<uint64_t>(q)));
      if (std::find(used.begin(), used.end(), l) == used.end()) {
        used.push_back(l);
        return l;
      }
    }
  };
  int emitted = 0;
  while (emitted < spec.total_gates) {
    std::vector<int> used;
    if (chain[0] >= 0) used.push_back(chain[0]);
    if (chain[1] >= 0 && chain[1] != chain[0]) used.push_back(chain[1]);
    for (int s = 0; s < 2 && emitted < spec.total_gates; ++s, ++emitted) {
      const bool is_t = !rng.coin(spec.cnot_ratio);
      int a = chain[s] >= 0 ? chain[s] : fresh(used);
      if (is_t) {
        c.gates.push_back({GateKind::T, -1, a});
        chain[s] = a;
      } else {
        int b = fresh(used);
        c.gates.push_back({GateKind::Cnot, a, b});
        chain[s] = rng.coin(0.5) ? a : b;
      }
    }
  }
  return c;
}

LogicalCircuit generate_rand(const RandomCircuitSpec& spec, Rng& rng) {
  const int q = spec.num_qubits;
  LogicalCircuit c;
  c.num_qubits = q;
  for (int i = 0; i < spec.total_gates; ++i) {
    if (!rng.coin(spec.cnot_ratio)) {
      c.gates.push_back({GateKind::T, -1, static_cast<int>(rng.below(q))});
    } else {
      if (q < 2) throw std::invalid_argument("cnot needs at least 2 qubits");
      int a = static_cast<int>(rng.below(q));
      int b = static_cast<int>(rng.below(q - 1));
      if (b >= a) ++b;
      c.gates.push_back({GateKind::Cnot, a, b});
    }
  }
  return c;
}

// max family: blocks of q/2 gates over a uniformly random perfect matching of
// all labels; a T slot keeps one label of its matched pair.
LogicalCircuit generate_max(const RandomCircuitSpec& spec, Rng& rng) {
  const int q = spec.num_qubits;
  if (q % 2 != 0) throw std::invalid_argument("max family needs an even qubit count");
  LogicalCircuit c;
  c.num_qubits = q;
  std::vector<int> labels(q);
  int emitted = 0;
  while (emitted < spec.total_gates) {
    for (int i = 0; i < q; ++i) labels[i] = i;
    rng.shuffle(labels);
    for (int s = 0; s < q / 2 && emitted < spec.total_gates; ++s, ++emitted) {
      const int a = labels[2 * s], b = labels[2 * s + 1];
      if (!rng.coin(spec.cnot_ratio))
        c.gates.push_back({GateKind::T, -1, rng.coin(0.5) ? a : b});
      else
        c.gates.push_back({GateKind::Cnot, a, b});
    }
  }
  return c;
}

}  // namespace

LogicalCircuit generate_random_circuit(const RandomCircuitSpec& spec) {
  if (spec.total_gates < 0) throw std::invalid_argument("total_gates must be >= 0");
  if (spec.num_qubits <= 0) throw std::invalid_argument("num_qubits must be positive");
  if (spec.cnot_ratio < 0.0 || spec.cnot_ratio > 1.0)
    throw std::invalid_argument("cnot_ratio must be in [0,1]");
  Rng rng(spec.rng_seed);
  switch (spec.family) {
    case CircuitFamily::Seq:
      return generate_seq(spec, rng);
    case CircuitFamily::Rand:
      return generate_rand(spec, rng);
    case CircuitFamily::Max:
      return generate_max(spec, rng);
  }
  throw std::invalid_argument("unknown circuit family");
}

double cnot_ratio(const LogicalCircuit& c) {
  if (c.gates.empty()) throw std::invalid_argument("cnot_ratio of empty circuit");
  size_t cnots = 0;
  for (const auto& g : c.gates)
    if (g.kind == GateKind::Cnot) ++cnots;
  return static_cast<double>(cnots) / static_cast<double>(c.gates.size());
}

}  // namespace surgecc
