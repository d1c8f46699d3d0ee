#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "setfam/errors.hpp"
#include "setfam/kernels/kernels.hpp"

namespace setfam {
namespace {

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* pick_default() {
  if (const char* env = std::getenv("SETFAM_KERNEL")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_kernels();
    if (std::strcmp(env, "avx2") == 0) {
      if (const KernelTable* t = avx2_kernels()) return t;
      std::fprintf(stderr,
                   "setfam: SETFAM_KERNEL=avx2 unavailable here, "
                   "falling back to scalar\n");
      return &scalar_kernels();
    }
    if (std::strcmp(env, "auto") != 0)
      std::fprintf(stderr, "setfam: ignoring unknown SETFAM_KERNEL=%s\n", env);
  }
  if (const KernelTable* t = avx2_kernels()) return t;
  return &scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (!t) {
    t = pick_default();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

void set_active_kernels(const char* name) {
  if (std::strcmp(name, "scalar") == 0) {
    g_active.store(&scalar_kernels(), std::memory_order_release);
    return;
  }
  if (std::strcmp(name, "avx2") == 0) {
    if (const KernelTable* t = avx2_kernels()) {
      g_active.store(t, std::memory_order_release);
      return;
    }
    fail(Err::PreconditionViolated, "avx2 kernels unavailable on this host");
  }
  if (std::strcmp(name, "auto") == 0) {
    g_active.store(pick_default(), std::memory_order_release);
    return;
  }
  fail(Err::ParseError, std::string("unknown kernel name '") + name + "'");
}

}  // namespace setfam
