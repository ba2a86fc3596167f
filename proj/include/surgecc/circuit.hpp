#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace surgecc {

enum class GateKind { Cnot, T };

struct Gate {
  GateKind kind;
  int control = -1;  // unused for T
  int target = -1;

  bool acts_on(int q) const {
    return target == q || (kind == GateKind::Cnot && control == q);
  }
};

struct LogicalCircuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
};

// Gate together with its position in the source circuit; layering and routing
// must preserve the per-qubit source order, which is checked via this index.
struct IndexedGate {
  Gate gate;
  int index = -1;
};

struct LayeredCircuit {
  std::vector<std::vector<IndexedGate>> layers;
  size_t num_layers() const { return layers.size(); }
};

enum class CircuitFamily { Seq, Rand, Max };

struct RandomCircuitSpec {
  CircuitFamily family = CircuitFamily::Rand;
  int num_qubits = 0;
  int total_gates = 0;         // convention elsewhere: 4 * num_qubits
  double cnot_ratio = 1.0;     // expected fraction of CNOT gates
  uint64_t rng_seed = 0;
};

class CircuitParseError : public std::runtime_error {
public:
  CircuitParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

LogicalCircuit parse_circuit(const std::string& text);
std::string serialize_circuit(const LogicalCircuit& c);

// Greedy front-to-back maximal (ASAP) layering: each gate joins the earliest
// layer after the last layer containing a gate that shares one of its qubits.
LayeredCircuit layer_circuit(const LogicalCircuit& c);

LogicalCircuit generate_random_circuit(const RandomCircuitSpec& spec);

// #CNOT / (#CNOT + #T); throws on an empty circuit.
double cnot_ratio(const LogicalCircuit& c);

}  // namespace surgecc
