#include <cstdlib>

#include "squashlab/kernels.hpp"

namespace squashlab::kern {

const Ops* avx2_ops_impl();

const Ops* avx2_ops() {
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) return avx2_ops_impl();
#endif
  return nullptr;
}

const Ops& active_ops() {
  static const Ops* selected = [] {
    if (std::getenv("SQUASHLAB_FORCE_SCALAR") != nullptr) {
      return &scalar_ops();
    }
    if (const Ops* avx2 = avx2_ops()) return avx2;
    return &scalar_ops();
  }();
  return *selected;
}

}  // namespace squashlab::kern
