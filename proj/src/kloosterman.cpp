#include "dlab/kloosterman.hpp"

#include <cmath>
#include <vector>

#include "dlab/kernels.hpp"
#include "dlab/parallel.hpp"

namespace dlab {

namespace {

constexpr std::size_t kPhaseChunk = 8192;

std::complex<double> sum_phases(const std::vector<double>& turns) {
    // Fixed chunking: chunk partials are combined in index order so the
    // result is independent of how callers parallelize around this.
    kernels::KahanSum re, im;
    for (std::size_t i = 0; i < turns.size(); i += kPhaseChunk) {
        std::size_t len = std::min(kPhaseChunk, turns.size() - i);
        auto p = kernels::unit_phase_sum(std::span<const double>(turns.data() + i, len));
        re.add(p.cos_sum);
        im.add(p.sin_sum);
    }
    return {re.sum, im.sum};
}

std::uint64_t nonneg_mod(std::int64_t v, std::uint64_t c) {
    std::int64_t r = v % static_cast<std::int64_t>(c);
    if (r < 0) r += static_cast<std::int64_t>(c);
    return static_cast<std::uint64_t>(r);
}

} // namespace

std::complex<double> kloosterman_classical(std::int64_t m, std::int64_t n, std::uint64_t c) {
    if (c < 1) throw DomainError(Errc::BadArgument, "modulus c must be >= 1");
    if (c == 1) return {1.0, 0.0};

    const std::uint64_t mr = nonneg_mod(m, c);
    const std::uint64_t nr = nonneg_mod(n, c);

    std::vector<std::uint64_t> units = units_mod(c);
    std::vector<std::uint64_t> inv = units;
    batch_mod_inverse_u64(inv, c);

    std::vector<double> turns(units.size());
    const double inv_c = 1.0 / static_cast<double>(c);
    for (std::size_t i = 0; i < units.size(); ++i) {
        std::uint64_t num = mul_mod_u64(mr, units[i], c) + mul_mod_u64(nr, inv[i], c);
        if (num >= c) num -= c;
        turns[i] = static_cast<double>(num) * inv_c;
    }
    return sum_phases(turns);
}

namespace {

std::complex<double> twisted_impl(const Weight& k, std::int64_t m_idx,
                                  std::optional<std::int64_t> n_idx, std::uint64_t c,
                                  const GroupSpec& group) {
    if (!group.is_sl2z())
        throw DomainError(Errc::UnsupportedGroup,
                          "twisted sums need the sl2z eta multiplier; Gamma_0(N) multiplier "
                          "systems have no finite construction here");
    if (c < 1) throw DomainError(Errc::BadArgument, "modulus c must be >= 1");

    MultiplierSystem ms(k, group);
    const std::int64_t n_use = n_idx.value_or(m_idx);

    std::vector<std::uint64_t> units = units_mod(c);
    std::vector<double> turns;
    turns.reserve(units.size());

    if (k.is_exact()) {
        const Rational alpha = *ms.alpha_exact();
        const Rational fm = Rational(Integer(static_cast<long>(m_idx))) - alpha;
        const Rational fn = Rational(Integer(static_cast<long>(n_use))) - alpha;
        for (std::uint64_t a : units) {
            UnimodularMatrix g = complete_matrix(DoubleCoset(group, c, a));
            Rational freq_part = (fm * Rational(g.a, Integer(static_cast<unsigned long>(c))) +
                                  fn * Rational(g.d, Integer(static_cast<unsigned long>(c))));
            Rational phase = (freq_part - *k.exact * psi_cocycle(g)).frac();
            turns.push_back(phase.to_double());
        }
    } else {
        const double fm = static_cast<double>(m_idx) - ms.alpha;
        const double fn = static_cast<double>(n_use) - ms.alpha;
        const double inv_c = 1.0 / static_cast<double>(c);
        for (std::uint64_t a : units) {
            UnimodularMatrix g = complete_matrix(DoubleCoset(group, c, a));
            double d = g.d.get_d();
            double t = (fm * static_cast<double>(a) + fn * d) * inv_c -
                       k.value * psi_cocycle(g).to_double();
            turns.push_back(t - std::floor(t));
        }
    }
    return sum_phases(turns);
}

} // namespace

std::complex<double> kloosterman_twisted(const Weight& k, std::uint64_t c,
                                         const GroupSpec& group) {
    MultiplierSystem ms(k, group);
    return twisted_impl(k, ms.frequency_index(), std::nullopt, c, group);
}

std::complex<double> kloosterman_twisted_mn(const Weight& k, std::int64_t m, std::int64_t n,
                                            std::uint64_t c, const GroupSpec& group) {
    return twisted_impl(k, m, n, c, group);
}

std::complex<double> vardi_lhs(const Weight& k, std::uint64_t c) {
    if (c < 1) throw DomainError(Errc::BadArgument, "modulus c must be >= 1");
    const GroupSpec group = GroupSpec::sl2z();
    std::vector<std::uint64_t> units = units_mod(c);

    std::vector<double> turns;
    turns.reserve(units.size());
    for (std::uint64_t a : units) {
        Rational s = dedekind_symbol(DoubleCoset(group, c, a));
        if (k.is_exact()) {
            turns.push_back((*k.exact * s).frac().to_double());
        } else {
            double t = k.value * s.to_double();
            turns.push_back(t - std::floor(t));
        }
    }
    return sum_phases(turns);
}

double vardi_check(const Weight& k, std::uint64_t c) {
    std::complex<double> lhs = vardi_lhs(k, c);
    std::complex<double> rhs = kloosterman_twisted(k, c, GroupSpec::sl2z());
    std::complex<double> prefactor;
    if (k.is_exact()) {
        prefactor = unit_phase((-*k.exact / Rational(4)).frac().to_double());
    } else {
        double t = -k.value / 4.0;
        prefactor = unit_phase(t - std::floor(t));
    }
    return std::abs(lhs - prefactor * rhs);
}

std::complex<double> kloosterman_partial_sum(std::int64_t m, std::int64_t n, double x,
                                             Weighting weighting, int threads) {
    if (!(x >= 1.0)) throw DomainError(Errc::BadArgument, "cutoff x must be >= 1");
    const std::uint64_t cmax = static_cast<std::uint64_t>(std::floor(x));

    struct Partial {
        double re = 0.0, im = 0.0;
    };
    constexpr std::uint64_t kBlock = 64;
    auto partials = map_blocks<Partial>(
        1, cmax + 1, kBlock, threads, [&](std::uint64_t b, std::uint64_t e) {
            kernels::KahanSum re, im;
            for (std::uint64_t c = b; c < e; ++c) {
                std::complex<double> s = kloosterman_classical(m, n, c);
                if (weighting == Weighting::OverC) s /= static_cast<double>(c);
                re.add(s.real());
                im.add(s.imag());
            }
            return Partial{re.sum, im.sum};
        });

    kernels::KahanSum re, im;
    for (const Partial& p : partials) {
        re.add(p.re);
        im.add(p.im);
    }
    return {re.sum, im.sum};
}

double weil_ratio(std::int64_t m, std::int64_t n, std::uint64_t p) {
    if (!is_prime_u64(p)) throw DomainError(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (nonneg_mod(m, p) == 0 || nonneg_mod(n, p) == 0)
        throw DomainError(Errc::BadArgument, "Weil bound needs gcd(mn, p) = 1");
    double s = std::abs(kloosterman_classical(m, n, p));
    return s / (2.0 * std::sqrt(static_cast<double>(p)));
}

} // namespace dlab
