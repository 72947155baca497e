#include <cstdlib>
#include <string_view>

#include "seamkit/kernels.hpp"

namespace seamkit::kernels {

namespace detail {
#if defined(SEAMKIT_HAVE_AVX2)
const KernelTable& avx2_table_impl();
#endif
#if defined(SEAMKIT_HAVE_NEON)
const KernelTable& neon_table_impl();
#endif
}  // namespace detail

const KernelTable* avx2_table() {
#if defined(SEAMKIT_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(SEAMKIT_HAVE_NEON)
  return &detail::neon_table_impl();
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  const char* forced = std::getenv("SEAMKIT_SIMD");
  if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
  if (const KernelTable* t = avx2_table()) return *t;
  if (const KernelTable* t = neon_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace seamkit::kernels
