#include "dlab/kernels.hpp"

#include "sincos_core.hpp"

namespace dlab::kernels {

void sincos_turn(double t, double& cos_out, double& sin_out) {
    detail::sincos_turn_scalar(t, cos_out, sin_out);
}

PhaseSum unit_phase_sum_scalar(std::span<const double> turns, double scale) {
    PhaseSum acc;
    for (double t : turns) {
        double c, s;
        detail::sincos_turn_scalar(scale * t, c, s);
        acc.cos_sum += c;
        acc.sin_sum += s;
    }
    return acc;
}

namespace {

using KernelFn = PhaseSum (*)(std::span<const double>, double);

struct Dispatch {
    KernelFn fn;
    const char* name;
};

Dispatch pick_kernel() {
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2()) return {&unit_phase_sum_avx2, "avx2"};
#endif
#if defined(__aarch64__)
    return {&unit_phase_sum_neon, "neon"};
#endif
    return {&unit_phase_sum_scalar, "scalar"};
}

const Dispatch& dispatch() {
    static const Dispatch d = pick_kernel();
    return d;
}

} // namespace

PhaseSum unit_phase_sum(std::span<const double> turns, double scale) {
    return dispatch().fn(turns, scale);
}

const char* active_backend() { return dispatch().name; }

} // namespace dlab::kernels
