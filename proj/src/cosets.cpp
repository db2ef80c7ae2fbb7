#include "dlab/cosets.hpp"

#include <cmath>
#include <numbers>

#include "dlab/kernels.hpp"
#include "dlab/parallel.hpp"

namespace dlab {

DoubleCoset::DoubleCoset(GroupSpec g, std::uint64_t c_, std::uint64_t a_)
    : group(g), c(c_), a(a_) {
    if (c < 1) throw DomainError(Errc::BadArgument, "coset modulus c must be >= 1");
    if (a >= c) throw DomainError(Errc::BadArgument, "coset needs a in [0, c)");
    if (gcd_u64(a, c) != 1)
        throw DomainError(Errc::NotCoprime, "coset needs gcd(a, c) = 1");
    if (c % group.level() != 0)
        throw DomainError(Errc::BadArgument,
                          "coset modulus " + std::to_string(c) + " not divisible by level " +
                              std::to_string(group.level()));
}

std::uint64_t coset_count_at(const GroupSpec& group, std::uint64_t c) {
    if (c < 1) throw DomainError(Errc::BadArgument, "modulus must be >= 1");
    if (c % group.level() != 0) return 0;
    if (c == 1) return 1;
    // phi(c) by trial-division factorization; scans use the sieve instead.
    std::uint64_t phi = c, rest = c;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        phi -= phi / p;
        while (rest % p == 0) rest /= p;
    }
    if (rest > 1) phi -= phi / rest;
    return phi;
}

std::vector<std::uint64_t> units_mod(std::uint64_t c) {
    std::vector<std::uint64_t> units;
    if (c == 1) {
        units.push_back(0);
        return units;
    }
    // Distinct prime factors of c, then divisibility tests: cheaper than a
    // gcd per residue on scan-sized moduli.
    std::uint64_t factors[16];
    int nf = 0;
    std::uint64_t rest = c;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        factors[nf++] = p;
        while (rest % p == 0) rest /= p;
    }
    if (rest > 1) factors[nf++] = rest;

    for (std::uint64_t a = 1; a < c; ++a) {
        bool unit = true;
        for (int i = 0; i < nf; ++i) {
            if (a % factors[i] == 0) {
                unit = false;
                break;
            }
        }
        if (unit) units.push_back(a);
    }
    return units;
}

void for_each_coset(const GroupSpec& group, double x,
                    const std::function<void(const DoubleCoset&)>& fn) {
    if (!(x >= 0.0)) throw DomainError(Errc::BadArgument, "cutoff x must be non-negative");
    if (x < 1.0) return;
    const std::uint64_t cmax = static_cast<std::uint64_t>(std::floor(x));
    const std::uint64_t step = group.level();
    for (std::uint64_t c = step; c <= cmax; c += step) {
        for (std::uint64_t a : units_mod(c)) fn(DoubleCoset(group, c, a));
    }
}

std::vector<DoubleCoset> enumerate_cosets(const GroupSpec& group, double x,
                                          std::uint64_t budget) {
    std::vector<DoubleCoset> out;
    if (!(x >= 0.0)) throw DomainError(Errc::BadArgument, "cutoff x must be non-negative");
    if (x < 1.0) return out;
    CountReport projected = pi_count(group, x);
    if (projected.count > budget)
        throw DomainError(Errc::ResourceLimit,
                          "projected " + std::to_string(projected.count) +
                              " cosets exceeds budget " + std::to_string(budget));
    out.reserve(projected.count);
    for_each_coset(group, x, [&](const DoubleCoset& dc) { out.push_back(dc); });
    return out;
}

UnimodularMatrix complete_matrix(const DoubleCoset& coset) {
    const std::uint64_t c = coset.c, a = coset.a;
    const std::uint64_t d = mod_inverse_u64(a % c, c);
    // b = (a*d - 1)/c, exact by a*d == 1 (mod c). a*d < c^2 so 128 bits hold.
    const __int128 ad = static_cast<__int128>(a) * static_cast<__int128>(d);
    const __int128 b = (ad - 1) / static_cast<__int128>(c);
    return UnimodularMatrix(Integer(static_cast<unsigned long>(a)),
                            Integer(static_cast<long>(b)),
                            Integer(static_cast<unsigned long>(c)),
                            Integer(static_cast<unsigned long>(d)));
}

CountReport pi_count(const GroupSpec& group, double x, std::uint64_t budget) {
    if (!(x >= 1.0)) throw DomainError(Errc::BadArgument, "cutoff x must be >= 1");
    const std::uint64_t cmax = static_cast<std::uint64_t>(std::floor(x));
    const auto phi = totient_sieve(cmax, budget);
    std::uint64_t count = 0;
    for (std::uint64_t c = group.level(); c <= cmax; c += group.level()) count += phi[c];

    CountReport r;
    r.x = x;
    r.count = count;
    r.main_term = x * x / (std::numbers::pi * group.covolume());
    r.ratio = static_cast<double>(count) / r.main_term;
    r.remainder = static_cast<double>(count) - r.main_term;
    return r;
}

double zeta_partial(const GroupSpec& group, double s, double x, int threads,
                    std::uint64_t budget) {
    if (!(x >= 1.0)) throw DomainError(Errc::BadArgument, "cutoff x must be >= 1");
    if (!(s > 0.5)) throw DomainError(Errc::BadArgument, "zeta partial sums need s > 1/2");
    const std::uint64_t cmax = static_cast<std::uint64_t>(std::floor(x));
    const auto phi = totient_sieve(cmax, budget);
    const double minus_two_s = -2.0 * s;
    const std::uint64_t level = group.level();

    constexpr std::uint64_t kBlock = 4096;
    auto partials = map_blocks<double>(
        1, cmax + 1, kBlock, threads, [&](std::uint64_t b, std::uint64_t e) {
            kernels::KahanSum acc;
            std::uint64_t c = b + (level - b % level) % level; // first multiple of level >= b
            for (; c < e; c += level)
                acc.add(static_cast<double>(phi[c]) * std::pow(static_cast<double>(c), minus_two_s));
            return acc.sum;
        });

    kernels::KahanSum total;
    for (double p : partials) total.add(p);
    return total.sum;
}

} // namespace dlab
