// Copyright 2026 The abpir authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "abpir/linalg.hpp"

#include <unordered_map>

#include "abpir/kernels.hpp"

namespace abpir::linalg {

namespace {

uint32_t inv_mod(uint32_t a, uint32_t p) {
  // p is 2 or 3 in practice; extended Euclid keeps this general anyway.
  int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw InvalidArgument("inv_mod: not invertible");
  return static_cast<uint32_t>(((t % p) + p) % p);
}

void validate_row(const SparseRow& row, uint32_t p, int64_t cols) {
  int64_t prev = -1;
  for (const auto& [col, coef] : row) {
    if (col < 0 || col >= cols) throw InvalidArgument("echelon: column out of range");
    if (col <= prev) throw InvalidArgument("echelon: row columns must be strictly ascending");
    if (coef == 0 || coef >= p) throw InvalidArgument("echelon: coefficient out of range");
    prev = col;
  }
}

// Pivot rows keep their leading column minimal, so reduction strictly
// advances the leading column and terminates.
class SparseEchelon final : public Echelon {
 public:
  SparseEchelon(uint32_t p, int64_t cols) : p_(p), cols_(cols) {}

  bool add_row(SparseRow row) override {
    validate_row(row, p_, cols_);
    reduce(row);
    if (row.empty()) return false;
    normalize(row);
    const int64_t lead = row[0].first;
    pivot_of_col_.emplace(lead, pivots_.size());
    pivots_.push_back(std::move(row));
    return true;
  }

  bool in_span(SparseRow row) const override {
    validate_row(row, p_, cols_);
    reduce(row);
    return row.empty();
  }

  int64_t rank() const override { return static_cast<int64_t>(pivots_.size()); }

 private:
  void normalize(SparseRow& row) const {
    const uint32_t inv = inv_mod(row[0].second, p_);
    if (inv == 1) return;
    for (auto& [col, coef] : row) coef = coef * inv % p_;
  }

  // row -= coef * pivot, merge of sorted term lists.
  static void subtract_scaled(SparseRow& row, const SparseRow& pivot, uint32_t coef, uint32_t p) {
    SparseRow out;
    out.reserve(row.size() + pivot.size());
    size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
      if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
        out.push_back(row[i++]);
      } else if (i == row.size() || pivot[j].first < row[i].first) {
        out.emplace_back(pivot[j].first, (p - coef * pivot[j].second % p) % p);
        if (out.back().second == 0) out.pop_back();
        j++;
      } else {
        uint32_t c = (row[i].second + p - coef * pivot[j].second % p) % p;
        if (c != 0) out.emplace_back(row[i].first, c);
        i++;
        j++;
      }
    }
    row = std::move(out);
  }

  void reduce(SparseRow& row) const {
    while (!row.empty()) {
      auto it = pivot_of_col_.find(row[0].first);
      if (it == pivot_of_col_.end()) return;
      subtract_scaled(row, pivots_[it->second], row[0].second, p_);
    }
  }

  uint32_t p_;
  int64_t cols_;
  std::vector<SparseRow> pivots_;
  std::unordered_map<int64_t, size_t> pivot_of_col_;
};

// Packed rows; the per-row elimination loop is the kernels' xor/axpy.
class DenseF2Echelon final : public Echelon {
 public:
  explicit DenseF2Echelon(int64_t cols)
      : cols_(cols), words_(static_cast<size_t>((cols + 63) / 64)), pivot_row_of_col_(static_cast<size_t>(cols), -1) {}

  bool add_row(SparseRow row) override {
    validate_row(row, 2, cols_);
    std::vector<uint64_t> packed(words_, 0);
    for (const auto& [col, coef] : row)
      packed[static_cast<size_t>(col >> 6)] |= uint64_t{1} << (col & 63);
    if (!reduce(packed)) return false;
    const int64_t lead = leading(packed);
    pivot_row_of_col_[static_cast<size_t>(lead)] = static_cast<int64_t>(pivots_.size());
    pivots_.push_back(std::move(packed));
    return true;
  }

  bool in_span(SparseRow row) const override {
    validate_row(row, 2, cols_);
    std::vector<uint64_t> packed(words_, 0);
    for (const auto& [col, coef] : row)
      packed[static_cast<size_t>(col >> 6)] |= uint64_t{1} << (col & 63);
    return !reduce(packed);
  }

  int64_t rank() const override { return static_cast<int64_t>(pivots_.size()); }

 private:
  int64_t leading(const std::vector<uint64_t>& packed) const {
    for (size_t w = 0; w < packed.size(); w++)
      if (packed[w] != 0) return static_cast<int64_t>(w * 64 + static_cast<size_t>(__builtin_ctzll(packed[w])));
    return -1;
  }

  // Reduces in place; returns true while a nonzero residue remains.
  bool reduce(std::vector<uint64_t>& packed) const {
    while (true) {
      const int64_t lead = leading(packed);
      if (lead < 0) return false;
      const int64_t pr = pivot_row_of_col_[static_cast<size_t>(lead)];
      if (pr < 0) return true;
      kernels::xor_words(packed.data(), pivots_[static_cast<size_t>(pr)].data(), words_);
    }
  }

  int64_t cols_;
  size_t words_;
  std::vector<std::vector<uint64_t>> pivots_;
  std::vector<int64_t> pivot_row_of_col_;
};

class DenseF3Echelon final : public Echelon {
 public:
  explicit DenseF3Echelon(int64_t cols)
      : cols_(cols), pivot_row_of_col_(static_cast<size_t>(cols), -1) {}

  bool add_row(SparseRow row) override {
    validate_row(row, 3, cols_);
    std::vector<uint8_t> bytes(static_cast<size_t>(cols_), 0);
    for (const auto& [col, coef] : row) bytes[static_cast<size_t>(col)] = static_cast<uint8_t>(coef);
    if (!reduce(bytes)) return false;
    const int64_t lead = leading(bytes);
    if (bytes[static_cast<size_t>(lead)] == 2)  // normalize pivot to 1 (2*2 = 1 mod 3)
      for (auto& b : bytes) b = static_cast<uint8_t>(b == 1 ? 2 : (b == 2 ? 1 : 0));
    pivot_row_of_col_[static_cast<size_t>(lead)] = static_cast<int64_t>(pivots_.size());
    pivots_.push_back(std::move(bytes));
    return true;
  }

  bool in_span(SparseRow row) const override {
    validate_row(row, 3, cols_);
    std::vector<uint8_t> bytes(static_cast<size_t>(cols_), 0);
    for (const auto& [col, coef] : row) bytes[static_cast<size_t>(col)] = static_cast<uint8_t>(coef);
    return !reduce(bytes);
  }

  int64_t rank() const override { return static_cast<int64_t>(pivots_.size()); }

 private:
  int64_t leading(const std::vector<uint8_t>& bytes) const {
    for (size_t c = 0; c < bytes.size(); c++)
      if (bytes[c] != 0) return static_cast<int64_t>(c);
    return -1;
  }

  bool reduce(std::vector<uint8_t>& bytes) const {
    while (true) {
      const int64_t lead = leading(bytes);
      if (lead < 0) return false;
      const int64_t pr = pivot_row_of_col_[static_cast<size_t>(lead)];
      if (pr < 0) return true;
      // lead coef c, pivot normalized to 1: add (3 - c) * pivot.
      const uint8_t coef = static_cast<uint8_t>(3 - bytes[static_cast<size_t>(lead)]);
      kernels::mod3_axpy(bytes.data(), pivots_[static_cast<size_t>(pr)].data(), coef,
                         static_cast<size_t>(cols_));
    }
  }

  int64_t cols_;
  std::vector<std::vector<uint8_t>> pivots_;
  std::vector<int64_t> pivot_row_of_col_;
};

}  // namespace

std::unique_ptr<Echelon> make_sparse_echelon(uint32_t p, int64_t cols) {
  return std::make_unique<SparseEchelon>(p, cols);
}

std::unique_ptr<Echelon> make_dense_echelon(uint32_t p, int64_t cols) {
  if (p == 2) return std::make_unique<DenseF2Echelon>(cols);
  if (p == 3) return std::make_unique<DenseF3Echelon>(cols);
  throw InvalidArgument("dense echelon supports p = 2 or 3 only");
}

std::unique_ptr<Echelon> make_echelon(uint32_t p, int64_t cols, int64_t expected_rows) {
  // Dense rows cost cols bits (p=2) or cols bytes (p=3); stay under ~.5 GB of
  // pivot storage and fall back to the sparse engine beyond.
  const int64_t per_row_bytes = (p == 2) ? (cols + 7) / 8 : cols;
  if (cols <= 1 << 14 && expected_rows * per_row_bytes <= (int64_t{1} << 27))
    return make_dense_echelon(p, cols);
  return make_sparse_echelon(p, cols);
}

}  // namespace abpir::linalg
