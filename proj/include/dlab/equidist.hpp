#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "dlab/dedekind.hpp"

namespace dlab {

// Fractional parts of k * S(coset) over all cosets with c <= x, in
// enumeration order (c ascending, a ascending).
struct SampleStream {
    Weight k;
    GroupSpec group;
    double x = 1.0;
    std::vector<double> values; // each in [0, 1)
};

struct WeylReport {
    std::int64_t m = 0;
    std::complex<double> weyl_sum;
    double normalized = 0.0; // |weyl_sum| / N, in [0, 1]
};

struct DiscrepancyReport {
    double star_discrepancy = 0.0;
    double et_bound = 0.0;
    std::uint64_t m_truncation = 0;
    std::uint64_t n_samples = 0;
};

SampleStream sample_stream(const Weight& k, const GroupSpec& group, double x,
                           int threads = 0, std::uint64_t budget = kDefaultCosetBudget);

// sum e(m * value) over the stream; normalized = |sum| / N.
WeylReport weyl_sum(const SampleStream& stream, std::int64_t m, int threads = 0);

// Exact D*_N = max_i max(i/N - x_(i), x_(i) - (i-1)/N) over the sorted values.
double star_discrepancy(const SampleStream& stream);

// Explicit Erdos-Turan bound with constant 3:
//   et = 3/(M+1) + 3 * sum_{m=1}^{M} normalized_weyl(m) / m.
DiscrepancyReport erdos_turan_bound(const SampleStream& stream, std::uint64_t M,
                                    int threads = 0);

// Counts per bin [j/bins, (j+1)/bins).
std::vector<std::uint64_t> histogram(const SampleStream& stream, std::uint64_t bins);

} // namespace dlab
