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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "abpir/kernels.hpp"

namespace abpir::kernels {

XorWordsFn xor_words = xor_words_scalar;
Mod3AxpyFn mod3_axpy = mod3_axpy_scalar;

namespace {

std::string g_variant = "scalar";

bool avx2_available() {
#if defined(ABPIR_HAVE_AVX2) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

struct DispatchAtInit {
  DispatchAtInit() {
    const char* env = std::getenv("ABPIR_KERNELS");
    select_variant(env ? env : "auto");
  }
} dispatch_at_init;

}  // namespace

void select_variant(const std::string& name) {
  if (name == "scalar") {
    xor_words = xor_words_scalar;
    mod3_axpy = mod3_axpy_scalar;
    g_variant = "scalar";
    return;
  }
#if defined(ABPIR_HAVE_AVX2)
  if (name == "avx2" || name == "auto") {
    if (avx2_available()) {
      xor_words = xor_words_avx2;
      mod3_axpy = mod3_axpy_avx2;
      g_variant = "avx2";
      return;
    }
    if (name == "avx2") throw std::runtime_error("ABPIR_KERNELS=avx2 but cpu lacks avx2");
  }
#endif
  if (name == "avx2") throw std::runtime_error("avx2 kernels not compiled in");
  // "auto" without avx2 support, or unknown names, fall back to scalar.
  xor_words = xor_words_scalar;
  mod3_axpy = mod3_axpy_scalar;
  g_variant = "scalar";
}

std::string active_variant() { return g_variant; }

}  // namespace abpir::kernels
