#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "dlab/kloosterman.hpp"

using namespace dlab;

namespace {
using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
} // namespace

TEST_CASE("classical Kloosterman examples") {
    CHECK(std::abs(kloosterman_classical(1, 1, 1) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(kloosterman_classical(1, 1, 2) - cplx(1.0, 0.0)) < 1e-13);
    CHECK(std::abs(kloosterman_classical(1, 1, 3) - cplx(-1.0, 0.0)) < 1e-13);
    CHECK(std::abs(kloosterman_classical(1, 1, 4) - cplx(-2.0, 0.0)) < 1e-13);
    CHECK(kloosterman_classical(1, 1, 5).real() ==
          doctest::Approx(2.0 - 2.0 * std::cos(kPi / 5.0)).epsilon(1e-12));
    // negative and reduced frequencies agree
    CHECK(std::abs(kloosterman_classical(-1, 1, 7) - kloosterman_classical(6, 1, 7)) < 1e-12);
}

TEST_CASE("classical Kloosterman symmetry and reality") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        std::int64_t m = static_cast<std::int64_t>(rng() % 21) - 10;
        std::int64_t n = static_cast<std::int64_t>(rng() % 21) - 10;
        std::uint64_t c = rng() % 500 + 1;
        CHECK(std::abs(kloosterman_classical(m, n, c) - kloosterman_classical(n, m, c)) < 1e-10);
    }
    for (std::uint64_t c = 1; c <= 500; ++c) {
        CHECK(std::abs(kloosterman_classical(1, 1, c).imag()) < 1e-10);
        CHECK(std::abs(kloosterman_classical(3, 3, c).imag()) < 1e-10);
    }
}

TEST_CASE("term count bound |S| <= a_c") {
    auto phi = totient_sieve(300);
    for (std::uint64_t c = 1; c <= 300; ++c)
        CHECK(std::abs(kloosterman_classical(2, 5, c)) <=
              static_cast<double>(phi[c]) + 1e-9);
}

TEST_CASE("twisted sum collapses to the classical one at k = 12") {
    Weight k12 = Weight::parse("12");
    GroupSpec g = GroupSpec::sl2z();
    for (std::uint64_t c = 1; c <= 300; ++c) {
        cplx t = kloosterman_twisted(k12, c, g);
        cplx s = kloosterman_classical(1, 1, c);
        CAPTURE(c);
        CHECK(std::abs(t - s) < 1e-10);
    }
}

TEST_CASE("twisted sum small cases") {
    GroupSpec g = GroupSpec::sl2z();
    CHECK(std::abs(kloosterman_twisted(Weight::parse("12"), 1, g) - cplx(1.0, 0.0)) < 1e-14);
    // k = 1, c = 2: single coset (1, 2); conj(chi)(gamma) e((1/12)(a+d)/c)
    //   = e(1/6) e(1/12) = e(1/4) = i   (psi(1 0; 2 1) = -1/6, alpha = 11/12)
    MultiplierSystem ms(Weight::parse("1"), g);
    CHECK(ms.alpha == doctest::Approx(11.0 / 12.0));
    CHECK(std::abs(kloosterman_twisted(Weight::parse("1"), 2, g) - cplx(0.0, 1.0)) < 1e-13);
    CHECK_THROWS_AS(kloosterman_twisted(Weight::parse("1"), 2, GroupSpec::gamma0(2)),
                    DomainError);
}

TEST_CASE("experimental general-frequency twisted sum matches at m = n = ceil(k/12)") {
    GroupSpec g = GroupSpec::sl2z();
    Weight k = Weight::parse("5/2");
    for (std::uint64_t c : {1ull, 2ull, 7ull, 12ull}) {
        cplx a = kloosterman_twisted(k, c, g);
        cplx b = kloosterman_twisted_mn(k, 1, 1, c, g);
        CHECK(std::abs(a - b) < 1e-13);
    }
}

TEST_CASE("vardi lhs examples") {
    Weight k12 = Weight::parse("12");
    CHECK(vardi_lhs(k12, 5).real() ==
          doctest::Approx(2.0 + 2.0 * std::cos(4.0 * kPi / 5.0)).epsilon(1e-12));
    CHECK(std::abs(vardi_lhs(k12, 1) - cplx(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(vardi_lhs(k12, 3) - cplx(-1.0, 0.0)) < 1e-13);
}

TEST_CASE("vardi residuals, exact and floating weights") {
    CHECK(vardi_check(Weight::parse("12"), 5) < 1e-12);
    CHECK(vardi_check(Weight::parse("12"), 1) < 1e-15);
    CHECK(vardi_check(Weight::parse("1/2"), 7) < 1e-9);
    auto phi = totient_sieve(60);
    for (const char* kt : {"1/2", "1", "3.3", "12"}) {
        Weight k = Weight::parse(kt);
        for (std::uint64_t c = 1; c <= 60; ++c) {
            CAPTURE(kt);
            CAPTURE(c);
            CHECK(vardi_check(k, c) <= 1e-9 * std::max<double>(1.0, phi[c]));
        }
    }
}

TEST_CASE("partial sums") {
    cplx s4 = kloosterman_partial_sum(1, 1, 4.0, Weighting::Unweighted);
    CHECK(std::abs(s4 - cplx(-1.0, 0.0)) < 1e-12);
    cplx s1 = kloosterman_partial_sum(1, 1, 1.0, Weighting::Unweighted);
    CHECK(std::abs(s1 - cplx(1.0, 0.0)) < 1e-15);
    // growth envelope from the spectral expansion, desk scale
    cplx w100 = kloosterman_partial_sum(1, 1, 100.0, Weighting::OverC);
    CHECK(std::abs(w100) < std::pow(100.0, 1.0 / 3.0 + 0.1));
}

TEST_CASE("partial sums are byte-identical across thread counts") {
    for (Weighting w : {Weighting::Unweighted, Weighting::OverC}) {
        cplx a = kloosterman_partial_sum(2, 3, 600.0, w, 1);
        cplx b = kloosterman_partial_sum(2, 3, 600.0, w, 8);
        CHECK(a.real() == b.real());
        CHECK(a.imag() == b.imag());
    }
}

TEST_CASE("weil ratio") {
    CHECK(weil_ratio(1, 1, 3) == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
    CHECK(weil_ratio(1, 1, 2) == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-12));
    CHECK(weil_ratio(1, 1, 10007) <= 1.0);
    CHECK_THROWS_AS(weil_ratio(1, 1, 10), DomainError);
    CHECK_THROWS_AS(weil_ratio(7, 1, 7), DomainError);
    try {
        weil_ratio(1, 1, 9);
    } catch (const DomainError& e) {
        CHECK(e.code() == Errc::NotPrime);
    }
}
