#include "dlab/equidist.hpp"

#include <algorithm>
#include <cmath>

#include "dlab/kernels.hpp"
#include "dlab/parallel.hpp"

namespace dlab {

SampleStream sample_stream(const Weight& k, const GroupSpec& group, double x, int threads,
                           std::uint64_t budget) {
    if (!group.is_sl2z())
        throw DomainError(Errc::UnsupportedGroup,
                          "symbol value streams are computable on sl2z only");
    if (!(k.value > 0.0)) throw DomainError(Errc::BadArgument, "weight k must be positive");
    if (!(x >= 1.0)) throw DomainError(Errc::BadArgument, "cutoff x must be >= 1");

    const std::uint64_t cmax = static_cast<std::uint64_t>(std::floor(x));
    CountReport projected = pi_count(group, x);
    if (projected.count > budget)
        throw DomainError(Errc::ResourceLimit,
                          "stream of " + std::to_string(projected.count) +
                              " samples exceeds budget " + std::to_string(budget));

    // Per-c sample vectors are independent; blocks concatenate in c order.
    constexpr std::uint64_t kBlock = 32;
    auto chunks = map_blocks<std::vector<double>>(
        1, cmax + 1, kBlock, threads, [&](std::uint64_t b, std::uint64_t e) {
            std::vector<double> vals;
            for (std::uint64_t c = b; c < e; ++c) {
                for (std::uint64_t a : units_mod(c)) {
                    Rational s = dedekind_symbol(DoubleCoset(group, c, a));
                    if (k.is_exact()) {
                        vals.push_back((*k.exact * s).frac().to_double());
                    } else {
                        double t = k.value * s.to_double();
                        double f = t - std::floor(t);
                        vals.push_back(f < 1.0 ? f : 0.0);
                    }
                }
            }
            return vals;
        });

    SampleStream stream{k, group, x, {}};
    stream.values.reserve(projected.count);
    for (auto& ch : chunks)
        stream.values.insert(stream.values.end(), ch.begin(), ch.end());
    return stream;
}

WeylReport weyl_sum(const SampleStream& stream, std::int64_t m, int threads) {
    if (stream.values.empty()) throw DomainError(Errc::EmptyStream, "empty sample stream");
    if (m == 0) throw DomainError(Errc::BadArgument, "Weyl frequency m must be nonzero");

    const double scale = static_cast<double>(m);
    const double* data = stream.values.data();
    constexpr std::uint64_t kChunk = 8192;

    auto partials = map_blocks<kernels::PhaseSum>(
        0, stream.values.size(), kChunk, threads, [&](std::uint64_t b, std::uint64_t e) {
            return kernels::unit_phase_sum(
                std::span<const double>(data + b, static_cast<std::size_t>(e - b)), scale);
        });

    kernels::KahanSum re, im;
    for (const auto& p : partials) {
        re.add(p.cos_sum);
        im.add(p.sin_sum);
    }

    WeylReport r;
    r.m = m;
    r.weyl_sum = {re.sum, im.sum};
    r.normalized = std::abs(r.weyl_sum) / static_cast<double>(stream.values.size());
    return r;
}

double star_discrepancy(const SampleStream& stream) {
    if (stream.values.empty()) throw DomainError(Errc::EmptyStream, "empty sample stream");
    std::vector<double> sorted(stream.values);
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double hi = static_cast<double>(i + 1) / n - sorted[i];
        const double lo = sorted[i] - static_cast<double>(i) / n;
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

DiscrepancyReport erdos_turan_bound(const SampleStream& stream, std::uint64_t M,
                                    int threads) {
    if (stream.values.empty()) throw DomainError(Errc::EmptyStream, "empty sample stream");
    if (M < 1) throw DomainError(Errc::BadArgument, "truncation M must be >= 1");

    kernels::KahanSum tail;
    for (std::uint64_t m = 1; m <= M; ++m) {
        WeylReport w = weyl_sum(stream, static_cast<std::int64_t>(m), threads);
        tail.add(w.normalized / static_cast<double>(m));
    }

    DiscrepancyReport r;
    r.m_truncation = M;
    r.n_samples = stream.values.size();
    r.star_discrepancy = star_discrepancy(stream);
    r.et_bound = 3.0 / (static_cast<double>(M) + 1.0) + 3.0 * tail.sum;
    return r;
}

std::vector<std::uint64_t> histogram(const SampleStream& stream, std::uint64_t bins) {
    if (bins < 1) throw DomainError(Errc::BadArgument, "bins must be >= 1");
    std::vector<std::uint64_t> counts(bins, 0);
    const double scale = static_cast<double>(bins);
    for (double v : stream.values) {
        auto idx = static_cast<std::uint64_t>(v * scale);
        if (idx >= bins) idx = bins - 1; // v < 1 keeps this unreachable; guard fp edge
        ++counts[idx];
    }
    return counts;
}

} // namespace dlab
