#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "kernels_impl.hpp"

namespace dcurv::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(DCURV_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* initial_table() noexcept {
  if (const char* env = std::getenv("DCURV_KERNELS"); env && std::string_view(env) == "scalar") {
    return &kScalarTable;
  }
  if (const KernelTable* t = avx2_table()) return t;
  return &kScalarTable;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalarTable; }

const KernelTable* avx2_table() noexcept {
#if defined(DCURV_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
  const KernelTable* t = isa == Isa::Scalar ? &kScalarTable : avx2_table();
  if (t == nullptr) throw std::invalid_argument("kernel table not available on this host");
  current().store(t, std::memory_order_release);
}

}  // namespace dcurv::kernels
