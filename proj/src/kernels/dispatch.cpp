// Copyright 2026 The carbm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <string>

#include "carbm/kernels.hpp"

namespace carbm::kernels {

#if defined(CARBM_HAVE_AVX2)
const KernelTable* avx2_table_impl();
#endif

namespace {

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> ptr{nullptr};
  return ptr;
}

const KernelTable* widest() {
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

const KernelTable* lookup(std::string_view name) {
  if (name == "scalar") return &scalar_table();
  if (name == "avx2") return avx2_table();
  if (name == "auto") return widest();
  return nullptr;
}

}  // namespace

const KernelTable* avx2_table() {
#if defined(CARBM_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") != 0;
  return supported ? avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  const KernelTable* t = current().load(std::memory_order_acquire);
  if (t != nullptr) return *t;
  const KernelTable* chosen = nullptr;
  if (const char* env = std::getenv("CARBM_KERNELS")) chosen = lookup(env);
  if (chosen == nullptr) chosen = widest();
  const KernelTable* expected = nullptr;
  current().compare_exchange_strong(expected, chosen, std::memory_order_acq_rel);
  return *current().load(std::memory_order_acquire);
}

bool select(std::string_view name) {
  const KernelTable* t = lookup(name);
  if (t == nullptr) return false;
  current().store(t, std::memory_order_release);
  return true;
}

}  // namespace carbm::kernels
