#pragma once

#include <cmath>

// Shared polynomial core for the phase kernels. Half-turn reduction is exact
// (nearest-integer subtraction), quarter-turn reduction leaves |theta| <= pi/4
// where the minimax polynomials below are good to ~1 ulp.

namespace dlab::kernels::detail {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Degree-11 sin / degree-10 cos minimax coefficients for [-pi/4, pi/4]
// (classic Cephes sin.c set, highest degree first).
inline constexpr double kSinCoef[6] = {
    1.58962301576546568060e-10, -2.50507477628578072866e-8,
    2.75573136213857245213e-6,  -1.98412698295895385996e-4,
    8.33333333332211858878e-3,  -1.66666666666666307295e-1,
};

inline constexpr double kCosCoef[6] = {
    -1.13585365213876817300e-11, 2.08757008419747316778e-9,
    -2.75573141792967388112e-7,  2.48015872888517179954e-5,
    -1.38888888888730564116e-3,  4.16666666666665929218e-2,
};

inline double poly6(double z, const double (&c)[6]) {
    double p = c[0];
    p = p * z + c[1];
    p = p * z + c[2];
    p = p * z + c[3];
    p = p * z + c[4];
    p = p * z + c[5];
    return p;
}

// cos/sin of 2*pi*t for any finite t.
inline void sincos_turn_scalar(double t, double& cos_out, double& sin_out) {
    double u = t - std::nearbyint(t);      // [-1/2, 1/2]
    double q = std::nearbyint(4.0 * u);    // {-2,...,2}
    double r = u - 0.25 * q;               // [-1/8, 1/8]
    double x = kTwoPi * r;                 // [-pi/4, pi/4]
    double z = x * x;
    double sn = x + x * z * poly6(z, kSinCoef);
    double cs = 1.0 - 0.5 * z + z * z * poly6(z, kCosCoef);
    switch (static_cast<int>(q) & 3) {
        case 0: cos_out = cs;  sin_out = sn;  break;
        case 1: cos_out = -sn; sin_out = cs;  break;
        case 2: cos_out = -cs; sin_out = -sn; break;
        default: cos_out = sn; sin_out = -cs; break;
    }
}

} // namespace dlab::kernels::detail
