#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace surgecc {

// Bit-packed vector over GF(2).
class BitVec {
public:
  BitVec() = default;
  explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  size_t size() const { return n_; }

  bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v = true) {
    if (v)
      w_[i >> 6] |= (uint64_t{1} << (i & 63));
    else
      w_[i >> 6] &= ~(uint64_t{1} << (i & 63));
  }
  void flip(size_t i) { w_[i >> 6] ^= (uint64_t{1} << (i & 63)); }

  BitVec& operator^=(const BitVec& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

  bool any() const {
    for (uint64_t x : w_)
      if (x) return true;
    return false;
  }

  size_t count() const {
    size_t c = 0;
    for (uint64_t x : w_) c += static_cast<size_t>(std::popcount(x));
    return c;
  }

  // Parity of the AND of two vectors, i.e. <a,b> over GF(2).
  static bool dot(const BitVec& a, const BitVec& b) {
    uint64_t acc = 0;
    for (size_t k = 0; k < a.w_.size(); ++k) acc ^= a.w_[k] & b.w_[k];
    return std::popcount(acc) & 1;
  }

  // Index of the lowest set bit, or npos.
  static constexpr size_t npos = static_cast<size_t>(-1);
  size_t lowest_set() const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return (k << 6) + static_cast<size_t>(std::countr_zero(w_[k]));
    return npos;
  }

  std::vector<size_t> set_bits() const {
    std::vector<size_t> out;
    for (size_t k = 0; k < w_.size(); ++k) {
      uint64_t x = w_[k];
      while (x) {
        out.push_back((k << 6) + static_cast<size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
    return out;
  }

  // Lexicographic order on bit indices (needed only for deterministic ties).
  bool operator<(const BitVec& o) const { return w_ < o.w_; }

private:
  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

// Reduced row echelon form; rows are modified in place, zero rows dropped.
// Returns pivot columns (sorted ascending).
inline std::vector<size_t> gf2_rref(std::vector<BitVec>& rows) {
  std::vector<size_t> pivots;
  size_t r = 0;
  if (rows.empty()) return pivots;
  const size_t n = rows[0].size();
  for (size_t c = 0; c < n && r < rows.size(); ++c) {
    size_t sel = BitVec::npos;
    for (size_t i = r; i < rows.size(); ++i)
      if (rows[i].get(c)) {
        sel = i;
        break;
      }
    if (sel == BitVec::npos) continue;
    std::swap(rows[r], rows[sel]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i].get(c)) rows[i] ^= rows[r];
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

inline size_t gf2_rank(std::vector<BitVec> rows) {
  gf2_rref(rows);
  return rows.size();
}

// Canonical basis of a row space; equal spaces give equal bases.
inline std::vector<BitVec> gf2_row_space(std::vector<BitVec> rows) {
  gf2_rref(rows);
  return rows;
}

inline bool gf2_same_row_space(const std::vector<BitVec>& a, const std::vector<BitVec>& b) {
  return gf2_row_space(a) == gf2_row_space(b);
}

// Reduces v against an RREF basis; result is zero iff v is in the span.
inline BitVec gf2_reduce(const std::vector<BitVec>& rref_rows, const std::vector<size_t>& pivots,
                         BitVec v) {
  for (size_t i = 0; i < rref_rows.size(); ++i)
    if (v.get(pivots[i])) v ^= rref_rows[i];
  return v;
}

inline bool gf2_in_span(const std::vector<BitVec>& rref_rows, const std::vector<size_t>& pivots,
                        const BitVec& v) {
  return !gf2_reduce(rref_rows, pivots, v).any();
}

// Intersection of two row spaces (Zassenhaus algorithm).
inline std::vector<BitVec> gf2_intersect_row_spaces(const std::vector<BitVec>& a,
                                                    const std::vector<BitVec>& b) {
  if (a.empty() || b.empty()) return {};
  const size_t n = a[0].size();
  // Block rows [x | x] for x in a, [y | 0] for y in b.
  std::vector<BitVec> block;
  block.reserve(a.size() + b.size());
  for (const auto& x : a) {
    BitVec row(2 * n);
    for (size_t i : x.set_bits()) {
      row.set(i);
      row.set(n + i);
    }
    block.push_back(std::move(row));
  }
  for (const auto& y : b) {
    BitVec row(2 * n);
    for (size_t i : y.set_bits()) row.set(i);
    block.push_back(std::move(row));
  }
  // Eliminate on the left half only.
  size_t r = 0;
  for (size_t c = 0; c < n && r < block.size(); ++c) {
    size_t sel = BitVec::npos;
    for (size_t i = r; i < block.size(); ++i)
      if (block[i].get(c)) {
        sel = i;
        break;
      }
    if (sel == BitVec::npos) continue;
    std::swap(block[r], block[sel]);
    for (size_t i = 0; i < block.size(); ++i)
      if (i != r && block[i].get(c)) block[i] ^= block[r];
    ++r;
  }
  // Rows whose left half vanished carry intersection vectors on the right.
  std::vector<BitVec> out;
  for (size_t i = r; i < block.size(); ++i) {
    bool left_zero = true;
    for (size_t c = 0; c < n; ++c)
      if (block[i].get(c)) {
        left_zero = false;
        break;
      }
    if (!left_zero) continue;
    BitVec v(n);
    for (size_t c = 0; c < n; ++c)
      if (block[i].get(n + c)) v.set(c);
    if (v.any()) out.push_back(std::move(v));
  }
  return gf2_row_space(std::move(out));
}

// Expresses target as a XOR of a subset of the given rows, if possible.
// Returns the subset as row indices (deterministic: Gaussian elimination with
// first-come pivots).
inline std::optional<std::vector<size_t>> gf2_solve_subset(const std::vector<BitVec>& rows,
                                                           const BitVec& target) {
  if (rows.empty()) return target.any() ? std::nullopt : std::make_optional(std::vector<size_t>{});
  const size_t n = rows[0].size();
  const size_t m = rows.size();
  // Augment each row with an identity tag tracking which inputs combined.
  std::vector<BitVec> work(m);
  for (size_t i = 0; i < m; ++i) {
    BitVec row(n + m);
    for (size_t c : rows[i].set_bits()) row.set(c);
    row.set(n + i);
    work[i] = std::move(row);
  }
  BitVec t(n + m);
  for (size_t c : target.set_bits()) t.set(c);
  size_t r = 0;
  for (size_t c = 0; c < n && r < m; ++c) {
    size_t sel = BitVec::npos;
    for (size_t i = r; i < m; ++i)
      if (work[i].get(c)) {
        sel = i;
        break;
      }
    if (sel == BitVec::npos) continue;
    std::swap(work[r], work[sel]);
    for (size_t i = 0; i < m; ++i)
      if (i != r && work[i].get(c)) work[i] ^= work[r];
    if (t.get(c)) t ^= work[r];
    ++r;
  }
  for (size_t c = 0; c < n; ++c)
    if (t.get(c)) return std::nullopt;
  std::vector<size_t> subset;
  for (size_t i = 0; i < m; ++i)
    if (t.get(n + i)) subset.push_back(i);
  return subset;
}

// Basis of the kernel {x : <r, x> = 0 for every row r}.
inline std::vector<BitVec> gf2_nullspace(std::vector<BitVec> rows, size_t width) {
  std::vector<size_t> pivots = gf2_rref(rows);
  std::vector<bool> is_pivot(width, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<BitVec> basis;
  for (size_t f = 0; f < width; ++f) {
    if (is_pivot[f]) continue;
    BitVec v(width);
    v.set(f);
    for (size_t i = 0; i < rows.size(); ++i)
      if (rows[i].get(f)) v.set(pivots[i]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solves A x = b where the rows of A are constraint vectors over `unknowns`
// bits. Returns one solution (free variables set to zero).
inline std::optional<BitVec> gf2_solve_system(const std::vector<BitVec>& constraints,
                                              const std::vector<bool>& rhs, size_t unknowns) {
  if (constraints.size() != rhs.size()) throw std::invalid_argument("system shape mismatch");
  const size_t m = constraints.size();
  std::vector<BitVec> aug(m);
  for (size_t i = 0; i < m; ++i) {
    BitVec row(unknowns + 1);
    for (size_t c : constraints[i].set_bits()) row.set(c);
    if (rhs[i]) row.set(unknowns);
    aug[i] = std::move(row);
  }
  std::vector<size_t> pivots = gf2_rref(aug);
  BitVec x(unknowns);
  for (size_t i = 0; i < aug.size(); ++i) {
    if (pivots[i] == unknowns) return std::nullopt;  // 0 = 1 row
    if (aug[i].get(unknowns)) x.set(pivots[i]);
  }
  return x;
}

}  // namespace surgecc
