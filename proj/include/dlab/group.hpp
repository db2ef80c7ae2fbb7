#pragma once

#include <cstdint>
#include <string>

#include "dlab/exact.hpp"

namespace dlab {

// SL(2,Z) or the Hecke congruence group Gamma_0(N). Carries the projective
// index mu = [PSL(2,Z) : image] and the covolume V = (pi/3) * mu; the ratio
// V/(4*pi) = mu/12 is kept exact since it enters multiplier phases.
class GroupSpec {
public:
    enum class Kind { SL2Z, Gamma0 };

    static GroupSpec sl2z() { return GroupSpec(Kind::SL2Z, 1); }
    static GroupSpec gamma0(std::uint64_t level);

    Kind kind() const { return kind_; }
    std::uint64_t level() const { return level_; }
    std::uint64_t index() const { return index_; }

    bool is_sl2z() const { return kind_ == Kind::SL2Z; }

    // Hyperbolic area of the quotient, (pi/3) * mu.
    double covolume() const;

    // V / (4*pi) = mu / 12, exact.
    Rational covolume_over_4pi() const { return Rational(Integer(index_), Integer(12)); }

    // "sl2z" or "gamma0(N)".
    std::string name() const;

    // Accepts "sl2z", "SL2Z", "gamma0", "gamma0(N)".
    static GroupSpec parse(const std::string& text, std::uint64_t level);

    bool operator==(const GroupSpec& o) const {
        return kind_ == o.kind_ && level_ == o.level_;
    }

private:
    GroupSpec(Kind kind, std::uint64_t level);

    Kind kind_;
    std::uint64_t level_;
    std::uint64_t index_;
};

} // namespace dlab
