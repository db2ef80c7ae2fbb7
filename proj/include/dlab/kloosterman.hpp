#pragma once

#include <complex>
#include <cstdint>

#include "dlab/dedekind.hpp"
#include "dlab/group.hpp"

namespace dlab {

// S(m, n; c) = sum over units a mod c, d = a^{-1} mod c, of e((m a + n d)/c).
// Phases are reduced mod 1 in integer arithmetic before the single
// trigonometric evaluation per term. S(m, n; 1) = 1.
std::complex<double> kloosterman_classical(std::int64_t m, std::int64_t n, std::uint64_t c);

// Selberg's sum twisted by the weight-k eta multiplier, at the frequency the
// Vardi identity dictates: m = n = ceil(k V / 4pi),
//   S(m, m; c, chi_k) = sum_* conj(chi_k(gamma)) e((m - alpha)(a + d)/c)
// over the double-coset completions at modulus c. SL(2,Z) only.
std::complex<double> kloosterman_twisted(const Weight& k, std::uint64_t c,
                                         const GroupSpec& group);

// General-frequency twisted sum. No contract; exposed for exploration only.
std::complex<double> kloosterman_twisted_mn(const Weight& k, std::int64_t m, std::int64_t n,
                                            std::uint64_t c, const GroupSpec& group);

// LHS of the Vardi identity at fixed c: sum over cosets (a, c) of
// e(k * S(coset)), phases from exact rationals when k is exact.
std::complex<double> vardi_lhs(const Weight& k, std::uint64_t c);

// |vardi_lhs - e(-k/4) * kloosterman_twisted|; contract: <= 1e-9 * max(1, phi(c)).
double vardi_check(const Weight& k, std::uint64_t c);

enum class Weighting { Unweighted, OverC };

// sum_{c <= x} S(m, n; c) or sum S(m, n; c)/c, ascending c, fixed-shape
// compensated reduction (byte-identical across thread counts).
std::complex<double> kloosterman_partial_sum(std::int64_t m, std::int64_t n, double x,
                                             Weighting weighting, int threads = 0);

// |S(m, n; p)| / (2 sqrt p) for prime p with gcd(mn, p) = 1; Weil's bound
// says this never exceeds 1.
double weil_ratio(std::int64_t m, std::int64_t n, std::uint64_t p);

} // namespace dlab
