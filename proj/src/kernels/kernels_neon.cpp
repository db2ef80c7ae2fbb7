// NEON variant of the phase-accumulation kernel (aarch64, 2 lanes).

#if defined(__aarch64__)

#include <arm_neon.h>

#include "dlab/kernels.hpp"
#include "sincos_core.hpp"

namespace dlab::kernels {

namespace {

inline float64x2_t poly6_f64(float64x2_t z, const double (&c)[6]) {
    float64x2_t p = vdupq_n_f64(c[0]);
    p = vfmaq_f64(vdupq_n_f64(c[1]), p, z);
    p = vfmaq_f64(vdupq_n_f64(c[2]), p, z);
    p = vfmaq_f64(vdupq_n_f64(c[3]), p, z);
    p = vfmaq_f64(vdupq_n_f64(c[4]), p, z);
    p = vfmaq_f64(vdupq_n_f64(c[5]), p, z);
    return p;
}

} // namespace

PhaseSum unit_phase_sum_neon(std::span<const double> turns, double scale) {
    const std::size_t n = turns.size();
    const std::size_t vec_end = n - n % 2;
    const double* p = turns.data();

    const float64x2_t vscale = vdupq_n_f64(scale);
    const float64x2_t four = vdupq_n_f64(4.0);
    const float64x2_t quarter = vdupq_n_f64(0.25);
    const float64x2_t two_pi = vdupq_n_f64(detail::kTwoPi);
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t half = vdupq_n_f64(0.5);

    float64x2_t cos_acc = vdupq_n_f64(0.0);
    float64x2_t sin_acc = vdupq_n_f64(0.0);

    for (std::size_t i = 0; i < vec_end; i += 2) {
        float64x2_t x = vmulq_f64(vld1q_f64(p + i), vscale);
        float64x2_t u = vsubq_f64(x, vrndnq_f64(x));
        float64x2_t q = vrndnq_f64(vmulq_f64(four, u));
        float64x2_t r = vfmsq_f64(u, quarter, q);
        float64x2_t th = vmulq_f64(two_pi, r);
        float64x2_t z = vmulq_f64(th, th);

        float64x2_t sn = vfmaq_f64(th, vmulq_f64(th, z), poly6_f64(z, detail::kSinCoef));
        float64x2_t cs = vfmaq_f64(vfmsq_f64(one, half, z), vmulq_f64(z, z),
                                   poly6_f64(z, detail::kCosCoef));

        int64x2_t k = vandq_s64(vcvtnq_s64_f64(q), vdupq_n_s64(3));
        uint64x2_t is1 = vceqq_s64(k, vdupq_n_s64(1));
        uint64x2_t is2 = vceqq_s64(k, vdupq_n_s64(2));
        uint64x2_t is3 = vceqq_s64(k, vdupq_n_s64(3));

        float64x2_t neg_sn = vnegq_f64(sn);
        float64x2_t neg_cs = vnegq_f64(cs);

        float64x2_t cos_v = vbslq_f64(is1, neg_sn, vbslq_f64(is2, neg_cs, vbslq_f64(is3, sn, cs)));
        float64x2_t sin_v = vbslq_f64(is1, cs, vbslq_f64(is2, neg_sn, vbslq_f64(is3, neg_cs, sn)));

        cos_acc = vaddq_f64(cos_acc, cos_v);
        sin_acc = vaddq_f64(sin_acc, sin_v);
    }

    PhaseSum acc;
    acc.cos_sum = vgetq_lane_f64(cos_acc, 0) + vgetq_lane_f64(cos_acc, 1);
    acc.sin_sum = vgetq_lane_f64(sin_acc, 0) + vgetq_lane_f64(sin_acc, 1);

    for (std::size_t i = vec_end; i < n; ++i) {
        double c, s;
        detail::sincos_turn_scalar(scale * p[i], c, s);
        acc.cos_sum += c;
        acc.sin_sum += s;
    }
    return acc;
}

} // namespace dlab::kernels

#endif // aarch64
