// AVX2+FMA variant of the phase-accumulation kernel. Compiled with
// -mavx2 -mfma for this translation unit only; callers go through the
// runtime dispatch in kernels.cpp.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "dlab/kernels.hpp"
#include "sincos_core.hpp"

namespace dlab::kernels {

bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

inline __m256d poly6_pd(__m256d z, const double (&c)[6]) {
    __m256d p = _mm256_set1_pd(c[0]);
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[1]));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[2]));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[3]));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[4]));
    p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[5]));
    return p;
}

inline __m256d select_pd(__m256d mask, __m256d a, __m256d b) {
    return _mm256_blendv_pd(b, a, mask);
}

} // namespace

PhaseSum unit_phase_sum_avx2(std::span<const double> turns, double scale) {
    const std::size_t n = turns.size();
    const std::size_t vec_end = n - n % 4;
    const double* p = turns.data();

    const __m256d vscale = _mm256_set1_pd(scale);
    const __m256d quarter = _mm256_set1_pd(0.25);
    const __m256d four = _mm256_set1_pd(4.0);
    const __m256d two_pi = _mm256_set1_pd(detail::kTwoPi);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);

    __m256d cos_acc = _mm256_setzero_pd();
    __m256d sin_acc = _mm256_setzero_pd();

    for (std::size_t i = 0; i < vec_end; i += 4) {
        __m256d x = _mm256_mul_pd(_mm256_loadu_pd(p + i), vscale);
        __m256d u = _mm256_sub_pd(
            x, _mm256_round_pd(x, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC));
        __m256d q = _mm256_round_pd(_mm256_mul_pd(four, u),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
        __m256d r = _mm256_fnmadd_pd(quarter, q, u);
        __m256d th = _mm256_mul_pd(two_pi, r);
        __m256d z = _mm256_mul_pd(th, th);

        __m256d sn = _mm256_fmadd_pd(_mm256_mul_pd(th, z), poly6_pd(z, detail::kSinCoef), th);
        __m256d cs = _mm256_fmadd_pd(_mm256_mul_pd(z, z), poly6_pd(z, detail::kCosCoef),
                                     _mm256_fnmadd_pd(half, z, one));

        // Quadrant rotation keyed on q mod 4.
        __m128i k = _mm_and_si128(_mm256_cvtpd_epi32(q), _mm_set1_epi32(3));
        __m256d kd = _mm256_cvtepi32_pd(k);
        __m256d is1 = _mm256_cmp_pd(kd, one, _CMP_EQ_OQ);
        __m256d is2 = _mm256_cmp_pd(kd, _mm256_set1_pd(2.0), _CMP_EQ_OQ);
        __m256d is3 = _mm256_cmp_pd(kd, _mm256_set1_pd(3.0), _CMP_EQ_OQ);

        __m256d neg_sn = _mm256_xor_pd(sn, sign_mask);
        __m256d neg_cs = _mm256_xor_pd(cs, sign_mask);

        __m256d cos_v = select_pd(is1, neg_sn, select_pd(is2, neg_cs, select_pd(is3, sn, cs)));
        __m256d sin_v = select_pd(is1, cs, select_pd(is2, neg_sn, select_pd(is3, neg_cs, sn)));

        cos_acc = _mm256_add_pd(cos_acc, cos_v);
        sin_acc = _mm256_add_pd(sin_acc, sin_v);
    }

    alignas(32) double cl[4], sl[4];
    _mm256_store_pd(cl, cos_acc);
    _mm256_store_pd(sl, sin_acc);

    PhaseSum acc;
    acc.cos_sum = cl[0] + cl[1] + cl[2] + cl[3];
    acc.sin_sum = sl[0] + sl[1] + sl[2] + sl[3];

    for (std::size_t i = vec_end; i < n; ++i) {
        double c, s;
        detail::sincos_turn_scalar(scale * p[i], c, s);
        acc.cos_sum += c;
        acc.sin_sum += s;
    }
    return acc;
}

} // namespace dlab::kernels

#endif // x86_64
