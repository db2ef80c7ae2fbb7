#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "dlab/group.hpp"
#include "dlab/matrix.hpp"

namespace dlab {

// Canonical double-coset representative data: c > 0, a in [0, c) coprime to
// c, with the group's level dividing c. (a, c) determines the coset.
struct DoubleCoset {
    GroupSpec group;
    std::uint64_t c;
    std::uint64_t a;

    DoubleCoset(GroupSpec g, std::uint64_t c_, std::uint64_t a_);
};

struct CountReport {
    double x = 0.0;
    std::uint64_t count = 0;
    double main_term = 0.0; // x^2 / (pi * V)
    double ratio = 0.0;     // count / main_term
    double remainder = 0.0; // count - main_term
};

// Number of double cosets at modulus c: phi(c) when level | c, else 0.
// The membership rule is a consequence of the completion construction: for
// level | c and gcd(a, c) = 1, (a, (a*d-1)/c; c, d) lies in Gamma_0(level),
// and every coset at modulus c arises this way.
std::uint64_t coset_count_at(const GroupSpec& group, std::uint64_t c);

// Streams all cosets with c <= x, c ascending, then a ascending.
void for_each_coset(const GroupSpec& group, double x,
                    const std::function<void(const DoubleCoset&)>& fn);

// Materialized version of the stream. Throws ResourceLimit when the projected
// count exceeds the budget.
inline constexpr std::uint64_t kDefaultCosetBudget = 50'000'000;
std::vector<DoubleCoset> enumerate_cosets(const GroupSpec& group, double x,
                                          std::uint64_t budget = kDefaultCosetBudget);

// Completion (a, b; c, d) with d = a^{-1} mod c in [0, c), b = (a*d - 1)/c.
UnimodularMatrix complete_matrix(const DoubleCoset& coset);

// pi(x) = sum_{c <= x} a_c via the totient sieve; no enumeration.
CountReport pi_count(const GroupSpec& group, double x,
                     std::uint64_t budget = kDefaultSieveBudget);

// Partial zeta sum sum_{c <= x} a_c / c^{2s}, ascending c, compensated
// per-block with a fixed block geometry (thread-count independent).
double zeta_partial(const GroupSpec& group, double s, double x, int threads = 0,
                    std::uint64_t budget = kDefaultSieveBudget);

// Coprime residues 0 <= a < c (ascending). Shared by the scan loops.
std::vector<std::uint64_t> units_mod(std::uint64_t c);

} // namespace dlab
