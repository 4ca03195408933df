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

// Compiled with -mavx2; only ever called after a runtime cpu check.

#include "abpir/kernels.hpp"

#if defined(ABPIR_HAVE_AVX2)

#include <immintrin.h>

namespace abpir::kernels {

void xor_words_avx2(uint64_t* dst, const uint64_t* src, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
  }
  for (; i < n; i++) dst[i] ^= src[i];
}

void mod3_axpy_avx2(uint8_t* dst, const uint8_t* src, uint8_t coef, size_t n) {
  // Values stay in 0..6 before reduction, so a 16-entry shuffle table reduces
  // every lane mod 3 in one pshufb.
  const __m256i lut = _mm256_setr_epi8(0, 1, 2, 0, 1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
                                       0, 1, 2, 0, 1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0);
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    if (coef == 2) s = _mm256_add_epi8(s, s);
    __m256i t = _mm256_add_epi8(d, s);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_shuffle_epi8(lut, t));
  }
  if (i < n) mod3_axpy_scalar(dst + i, src + i, coef, n - i);
}

}  // namespace abpir::kernels

#endif  // ABPIR_HAVE_AVX2
