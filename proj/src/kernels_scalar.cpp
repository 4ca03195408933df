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

#include "abpir/kernels.hpp"

namespace abpir::kernels {

void xor_words_scalar(uint64_t* dst, const uint64_t* src, size_t n) {
  for (size_t i = 0; i < n; i++) dst[i] ^= src[i];
}

void mod3_axpy_scalar(uint8_t* dst, const uint8_t* src, uint8_t coef, size_t n) {
  for (size_t i = 0; i < n; i++) {
    uint8_t t = static_cast<uint8_t>(dst[i] + coef * src[i]);  // at most 2 + 2*2 = 6
    dst[i] = static_cast<uint8_t>(t >= 3 ? (t >= 6 ? t - 6 : t - 3) : t);
  }
}

}  // namespace abpir::kernels
