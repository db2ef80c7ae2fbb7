#include "dlab/group.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace dlab {

namespace {

// mu(Gamma_0(N)) = N * prod_{p | N} (1 + 1/p), computed as N/p*(p+1) over
// distinct prime factors so everything stays integral.
std::uint64_t gamma0_index(std::uint64_t n) {
    std::uint64_t mu = n;
    std::uint64_t rest = n;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        mu = mu / p * (p + 1);
        while (rest % p == 0) rest /= p;
    }
    if (rest > 1) mu = mu / rest * (rest + 1);
    return mu;
}

} // namespace

GroupSpec::GroupSpec(Kind kind, std::uint64_t level) : kind_(kind), level_(level) {
    if (level_ < 1) throw DomainError(Errc::BadArgument, "group level must be >= 1");
    index_ = (kind_ == Kind::SL2Z) ? 1 : gamma0_index(level_);
}

GroupSpec GroupSpec::gamma0(std::uint64_t level) { return GroupSpec(Kind::Gamma0, level); }

double GroupSpec::covolume() const {
    return std::numbers::pi / 3.0 * static_cast<double>(index_);
}

std::string GroupSpec::name() const {
    if (kind_ == Kind::SL2Z) return "sl2z";
    return "gamma0(" + std::to_string(level_) + ")";
}

GroupSpec GroupSpec::parse(const std::string& text, std::uint64_t level) {
    std::string t;
    t.reserve(text.size());
    for (char ch : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (t == "sl2z" || t == "sl(2,z)") {
        if (level > 1)
            throw DomainError(Errc::BadArgument, "sl2z does not take a level");
        return sl2z();
    }
    if (t.rfind("gamma0", 0) == 0) {
        std::string rest = t.substr(6);
        if (rest.empty()) return gamma0(level);
        if (rest.front() == '(' && rest.back() == ')') {
            std::string digits = rest.substr(1, rest.size() - 2);
            if (digits.empty()) throw DomainError(Errc::BadArgument, "missing gamma0 level");
            std::uint64_t n = std::stoull(digits);
            return gamma0(n);
        }
    }
    throw DomainError(Errc::BadArgument, "unknown group '" + text + "'");
}

} // namespace dlab
