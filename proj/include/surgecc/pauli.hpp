#pragma once

#include <string>
#include <vector>

#include "surgecc/gf2.hpp"

namespace surgecc {

// Pauli operator in the symplectic GF(2) representation; phases are dropped
// since only commutation structure and support parity matter here.
struct PauliOp {
  BitVec x;
  BitVec z;

  PauliOp() = default;
  explicit PauliOp(size_t n) : x(n), z(n) {}

  size_t num_qubits() const { return x.size(); }

  bool commutes_with(const PauliOp& o) const {
    return !(BitVec::dot(x, o.z) ^ BitVec::dot(z, o.x));
  }

  size_t weight() const {
    size_t w = 0;
    for (size_t i = 0; i < x.size(); ++i)
      if (x.get(i) || z.get(i)) ++w;
    return w;
  }

  bool identity() const { return !x.any() && !z.any(); }

  PauliOp& operator*=(const PauliOp& o) {
    x ^= o.x;
    z ^= o.z;
    return *this;
  }

  bool operator==(const PauliOp& o) const { return x == o.x && z == o.z; }

  // Concatenated (x|z) vector of length 2n, for rank computations.
  BitVec symplectic() const {
    const size_t n = x.size();
    BitVec v(2 * n);
    for (size_t i : x.set_bits()) v.set(i);
    for (size_t i : z.set_bits()) v.set(n + i);
    return v;
  }

  static PauliOp from_symplectic(const BitVec& v) {
    const size_t n = v.size() / 2;
    PauliOp p(n);
    for (size_t i : v.set_bits()) {
      if (i < n)
        p.x.set(i);
      else
        p.z.set(i - n);
    }
    return p;
  }

  static PauliOp x_on(size_t n, const std::vector<size_t>& support) {
    PauliOp p(n);
    for (size_t q : support) p.x.set(q);
    return p;
  }

  static PauliOp z_on(size_t n, const std::vector<size_t>& support) {
    PauliOp p(n);
    for (size_t q : support) p.z.set(q);
    return p;
  }
};

inline std::vector<BitVec> symplectic_rows(const std::vector<PauliOp>& ops) {
  std::vector<BitVec> rows;
  rows.reserve(ops.size());
  for (const auto& p : ops) rows.push_back(p.symplectic());
  return rows;
}

inline bool all_pairwise_commute(const std::vector<PauliOp>& ops) {
  for (size_t i = 0; i < ops.size(); ++i)
    for (size_t j = i + 1; j < ops.size(); ++j)
      if (!ops[i].commutes_with(ops[j])) return false;
  return true;
}

// Text form used by the stabilizer dump: "X:{1,2} Z:{3} TAG".
inline std::string pauli_to_string(const PauliOp& p) {
  auto list = [](const BitVec& v) {
    std::string s = "{";
    bool first = true;
    for (size_t i : v.set_bits()) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
    return s + "}";
  };
  return "X:" + list(p.x) + " Z:" + list(p.z);
}

}  // namespace surgecc
