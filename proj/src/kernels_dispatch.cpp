#include <atomic>
#include <cstdlib>
#include <string_view>

#include "gq/kernels.hpp"

namespace gq::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(GQ_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Backend b) noexcept {
#if defined(GQ_HAVE_AVX2)
  if (b == Backend::Avx2) return &avx2_table();
#endif
  (void)b;
  return &scalar_table();
}

Backend initial_backend() noexcept {
  const char* env = std::getenv("GQ_KERNELS");
  if (env != nullptr && std::string_view(env) == "scalar") return Backend::Scalar;
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

struct Selection {
  std::atomic<Backend> backend;
  std::atomic<const KernelTable*> table;
  Selection() : backend(initial_backend()), table(table_for(backend.load())) {}
};

Selection& selection() noexcept {
  static Selection s;
  return s;
}

}  // namespace

bool backend_available(Backend b) noexcept { return b == Backend::Scalar || cpu_has_avx2(); }

Backend active_backend() noexcept { return selection().backend.load(std::memory_order_relaxed); }

bool select_backend(Backend b) noexcept {
  if (!backend_available(b)) return false;
  selection().table.store(table_for(b), std::memory_order_relaxed);
  selection().backend.store(b, std::memory_order_relaxed);
  return true;
}

std::string_view backend_name(Backend b) noexcept { return b == Backend::Avx2 ? "avx2" : "scalar"; }

const KernelTable& active() noexcept { return *selection().table.load(std::memory_order_relaxed); }

}  // namespace gq::kernels
