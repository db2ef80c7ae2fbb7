#pragma once

#include <cstddef>
#include <span>

namespace dlab::kernels {

// Partial sums of e(2*pi*i * scale * t) over an array of phases t measured in
// turns (full circles). Phases may be any finite double; reduction mod 1 is
// part of the kernel.
struct PhaseSum {
    double cos_sum = 0.0;
    double sin_sum = 0.0;

    PhaseSum& operator+=(const PhaseSum& o) {
        cos_sum += o.cos_sum;
        sin_sum += o.sin_sum;
        return *this;
    }
};

// Scalar reference kernel. Always available; ground truth for the variants.
PhaseSum unit_phase_sum_scalar(std::span<const double> turns, double scale = 1.0);

#if defined(__x86_64__) || defined(_M_X64)
// AVX2+FMA variant, 4 lanes. Call only when cpu_has_avx2() is true.
PhaseSum unit_phase_sum_avx2(std::span<const double> turns, double scale = 1.0);
bool cpu_has_avx2();
#endif

#if defined(__aarch64__)
PhaseSum unit_phase_sum_neon(std::span<const double> turns, double scale = 1.0);
#endif

// Runtime-dispatched entry point used by the scan loops.
PhaseSum unit_phase_sum(std::span<const double> turns, double scale = 1.0);

// Name of the variant unit_phase_sum dispatches to: "scalar", "avx2", "neon".
const char* active_backend();

// Single-value cos/sin of 2*pi*t, same polynomial as the scalar kernel.
void sincos_turn(double t, double& cos_out, double& sin_out);

// Compensated (Kahan) accumulator for the deterministic fold paths.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

} // namespace dlab::kernels
