#include "jcryd/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace jcryd::kernels {

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable& active() {
    static const KernelTable* table = [] {
        const char* env = std::getenv("JCRYD_KERNELS");
        if (env != nullptr && std::string_view(env) == "scalar")
            return &scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
        if (avx2_supported()) return &avx2_table();
#endif
        return &scalar_table();
    }();
    return *table;
}

}  // namespace jcryd::kernels
