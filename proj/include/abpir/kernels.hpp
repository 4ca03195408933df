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

#include <cstddef>
#include <cstdint>
#include <string>

// Data-parallel inner loops of the finite-field layer. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2 variant selected at
// runtime. The two are bit-for-bit equivalent; tests enforce it. Set
// ABPIR_KERNELS=scalar|avx2 to override the automatic choice.

namespace abpir::kernels {

// dst[i] ^= src[i], the row operation of the packed GF(2) eliminator.
using XorWordsFn = void (*)(uint64_t* dst, const uint64_t* src, size_t n);

// dst[i] = (dst[i] + coef * src[i]) mod 3 on byte lanes holding values 0..2;
// coef is 1 or 2. Row operation of the GF(3) eliminator.
using Mod3AxpyFn = void (*)(uint8_t* dst, const uint8_t* src, uint8_t coef, size_t n);

extern XorWordsFn xor_words;
extern Mod3AxpyFn mod3_axpy;

void xor_words_scalar(uint64_t* dst, const uint64_t* src, size_t n);
void mod3_axpy_scalar(uint8_t* dst, const uint8_t* src, uint8_t coef, size_t n);

#if defined(ABPIR_HAVE_AVX2)
void xor_words_avx2(uint64_t* dst, const uint64_t* src, size_t n);
void mod3_axpy_avx2(uint8_t* dst, const uint8_t* src, uint8_t coef, size_t n);
#endif

/// Name of the active variant ("scalar" or "avx2"). Dispatch happens once,
/// before main, and is safe to query from any thread afterwards.
std::string active_variant();

/// Re-runs dispatch; used by tests to exercise the override path.
void select_variant(const std::string& name);

}  // namespace abpir::kernels
