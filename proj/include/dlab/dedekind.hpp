#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "dlab/cosets.hpp"
#include "dlab/exact.hpp"
#include "dlab/matrix.hpp"

namespace dlab {

// Sawtooth ((x)): {x} - 1/2 off the integers, 0 on them.
Rational sawtooth(const Rational& x);

// s(a; c) = sum_{n=1}^{c-1} ((n/c)) ((n a / c)), the O(c) definition sum.
// This is the oracle the fast evaluator is tested against.
Rational dedekind_sum_naive(const Integer& a, const Integer& c);

// Same value in O(log c) rational operations via the reciprocity recursion
//   s(a, c) = -1/4 + (a^2 + c^2 + 1) / (12 a c) - s(c mod a, a)
// after reducing a mod c; base cases s(0,1) = 0 and s(1,c) = (c-1)(c-2)/(12c).
Rational dedekind_sum_fast(const Integer& a, const Integer& c);

// Rademacher's integer-valued eta defect:
//   Phi(g) = b/d                                  when c = 0
//   Phi(g) = (a+d)/c - 12 sign(c) s(a; |c|)       when c != 0.
// Throws IntegralityViolation if the result is not an integer (never fires
// on correct inputs; it guards the evaluator itself).
Rational phi_cocycle(const UnimodularMatrix& g);

// psi(g) = phi(g) - sign(c(-d))/4 where c(-d) = c if c != 0 else -d, and
// phi = Phi/12 for c != 0 but Phi/12 - 1/4 for c = 0 (the translation branch
// of the principal logarithm contributes an extra quarter turn there).
// Defined on matrices, not projective classes: psi(-g) != psi(g) in general.
// Pinned by chi_k(-I) = e^{-pi i k} and chi_k(T) = e^{-2 pi i alpha}:
//   psi(T^m) = m/12,  psi(-I) = -1/2,  psi(S) = -1/4.
Rational psi_cocycle(const UnimodularMatrix& g);

// Weight k, either exact ("1/2", "12") or floating ("3.3"). Exact weights
// keep multiplier and Weyl phases in rational arithmetic end to end.
struct Weight {
    double value = 0.0;
    std::optional<Rational> exact;

    static Weight from_double(double k) { return Weight{k, std::nullopt}; }
    static Weight from_rational(const Rational& k) { return Weight{k.to_double(), k}; }
    // "12", "1/2", "3.3"; fraction syntax selects the exact-phase path.
    static Weight parse(const std::string& text);

    bool is_exact() const { return exact.has_value(); }
    std::string str() const;
};

// Weight-k eta multiplier system chi_k = e^{2 pi i k psi} on SL(2,Z).
struct MultiplierSystem {
    Weight k;
    GroupSpec group;
    double alpha; // ceil(k V / 4pi) - k V / 4pi, in [0, 1)

    MultiplierSystem(Weight k, GroupSpec group);

    // ceil(k V / 4pi): the frequency index in the twisted Kloosterman sums.
    long frequency_index() const;
    // Exact alpha, available when k is exact.
    std::optional<Rational> alpha_exact() const;
};

// chi_k(g) = e^{2 pi i k psi(g)} in double precision; the phase k*psi is
// reduced mod 1 before hitting libm (exactly so for exact weights).
std::complex<double> multiplier(const MultiplierSystem& ms, const UnimodularMatrix& g);

// Phase of chi_k(g) in turns, in [0, 1): exact rational when k is exact.
Rational multiplier_phase_exact(const MultiplierSystem& ms, const UnimodularMatrix& g);
double multiplier_phase(const MultiplierSystem& ms, const UnimodularMatrix& g);

// S(Gamma_inf g Gamma_inf) = (V/4pi)(a+d)/c - phi(g) for any completion g of
// the coset; equals sign(c) s(a; |c|) = s(a; c) on SL(2,Z). Throws
// InfinityCoset for c = 0 and UnsupportedGroup off SL(2,Z).
Rational dedekind_symbol(const DoubleCoset& coset);
Rational dedekind_symbol(const UnimodularMatrix& completion);

// Product of `length` generators drawn uniformly from {S, S^-1, T, T^-1},
// deterministic per seed. Test-input generator.
UnimodularMatrix random_group_word(std::uint64_t length, std::uint64_t seed);

// e(t) = e^{2 pi i t} from a phase in turns (kernel-backed).
std::complex<double> unit_phase(double turns);
std::complex<double> unit_phase(const Rational& turns);

} // namespace dlab
