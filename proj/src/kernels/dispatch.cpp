#include <atomic>
#include <cstdlib>

#include "ckg/errors.hpp"
#include "tables.hpp"

namespace ckg::kernels {
namespace {

std::atomic<const Ops*> g_active{nullptr};

bool cpu_has_avx2() {
#if defined(CKG_HAVE_AVX2_BUILD)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops* table_by_name(const std::string& name) {
    if (name == "scalar")
        return &scalar_table();
    if (name == "avx2") {
#if defined(CKG_HAVE_AVX2_BUILD)
        if (cpu_has_avx2())
            return &avx2_table();
        throw ParamError("kernel backend 'avx2' is not supported by this CPU");
#else
        throw ParamError("kernel backend 'avx2' is not available in this build");
#endif
    }
    throw ParamError("unknown kernel backend '" + name + "' (expected 'scalar' or 'avx2')");
}

const Ops* select_default() {
    if (const char* env = std::getenv("CKG_KERNEL_BACKEND"))
        return table_by_name(env);
#if defined(CKG_HAVE_AVX2_BUILD)
    if (cpu_has_avx2())
        return &avx2_table();
#endif
    return &scalar_table();
}

} // namespace

bool avx2_available() { return cpu_has_avx2(); }

const Ops& ops() {
    const Ops* t = g_active.load(std::memory_order_acquire);
    if (!t) {
        t = select_default();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

const Ops& scalar_ops() { return scalar_table(); }

void force_backend(const std::string& name) {
    g_active.store(table_by_name(name), std::memory_order_release);
}

std::string backend_name() {
#if defined(CKG_HAVE_AVX2_BUILD)
    if (&ops() == &avx2_table())
        return "avx2";
#else
    (void)ops();
#endif
    return "scalar";
}

} // namespace ckg::kernels
