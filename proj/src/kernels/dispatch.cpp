// src/kernels/dispatch.cpp

#include "lle/kernels/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace lle::kernels {

#if defined(LLE_HAVE_AVX2_KERNELS)
const KernelTable& avx2_table_impl();
#endif

const KernelTable* avx2_table() {
#if defined(LLE_HAVE_AVX2_KERNELS) && (defined(__x86_64__) || defined(__i386__))
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &avx2_table_impl() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() {
    static const KernelTable* chosen = [] {
        const char* force = std::getenv("LLE_FORCE_SCALAR");
        if (force != nullptr && std::strcmp(force, "0") != 0 && force[0] != '\0') return &scalar_table();
        const KernelTable* simd = avx2_table();
        return simd != nullptr ? simd : &scalar_table();
    }();
    return *chosen;
}

}  // namespace lle::kernels
