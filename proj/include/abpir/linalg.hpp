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

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "abpir/errors.hpp"

namespace abpir::linalg {

/// One matrix row as sorted (column, coefficient) pairs, coefficient in
/// [1, p-1].
using SparseRow = std::vector<std::pair<int64_t, uint32_t>>;

/// Incremental row-echelon basis over F_p for small prime p. add_row folds a
/// row into the basis; in_span answers membership queries against everything
/// added so far. Two interchangeable engines:
///  - a sparse one (merge-based row reduction), which handles the large,
///    few-terms-per-row systems the query plans produce;
///  - a dense packed one (bit rows for p = 2, byte rows for p = 3) whose row
///    operations run through the runtime-dispatched kernels.
class Echelon {
 public:
  virtual ~Echelon() = default;
  virtual bool add_row(SparseRow row) = 0;  // true iff rank grew
  virtual bool in_span(SparseRow row) const = 0;
  virtual int64_t rank() const = 0;
};

std::unique_ptr<Echelon> make_sparse_echelon(uint32_t p, int64_t cols);
std::unique_ptr<Echelon> make_dense_echelon(uint32_t p, int64_t cols);

/// Sparse engine for large systems, dense kernels otherwise.
std::unique_ptr<Echelon> make_echelon(uint32_t p, int64_t cols, int64_t expected_rows);

}  // namespace abpir::linalg
