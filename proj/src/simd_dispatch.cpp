#include <atomic>
#include <cstdlib>
#include <string>

#include "frontcap/error.hpp"
#include "frontcap/simd.hpp"

namespace frontcap::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(FRONTCAP_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa initial_isa() noexcept {
    if (const char* env = std::getenv("FRONTCAP_ISA")) {
        const std::string v(env);
        if (v == "scalar") return Isa::Scalar;
        if (v == "avx2" && cpu_has_avx2()) return Isa::Avx2;
    }
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() noexcept {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2: return cpu_has_avx2();
    }
    return false;
}

const KernelTable& kernels_for(Isa isa) {
    if (!isa_supported(isa)) throw ContractViolation("instruction set not available: " + std::string(to_string(isa)));
#if defined(FRONTCAP_HAVE_AVX2)
    if (isa == Isa::Avx2) return detail::avx2_table();
#endif
    return detail::scalar_table();
}

const KernelTable& active() noexcept {
#if defined(FRONTCAP_HAVE_AVX2)
    if (current().load(std::memory_order_relaxed) == Isa::Avx2) return detail::avx2_table();
#endif
    return detail::scalar_table();
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void select_isa(Isa isa) {
    if (!isa_supported(isa)) throw ContractViolation("instruction set not available: " + std::string(to_string(isa)));
    current().store(isa, std::memory_order_relaxed);
}

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

}  // namespace frontcap::simd
