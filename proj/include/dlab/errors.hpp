#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

// Domain error kinds. Every throwing operation documents which of these it
// can raise; the CLI maps any DomainError to exit code 1 and prints the name.
enum class Errc {
    NotCoprime,
    NotPrime,
    NotUnimodular,
    InfinityCoset,
    UnsupportedGroup,
    ResourceLimit,
    IntegralityViolation,
    EmptyStream,
    BadArgument,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NotCoprime: return "NotCoprime";
        case Errc::NotPrime: return "NotPrime";
        case Errc::NotUnimodular: return "NotUnimodular";
        case Errc::InfinityCoset: return "InfinityCoset";
        case Errc::UnsupportedGroup: return "UnsupportedGroup";
        case Errc::ResourceLimit: return "ResourceLimit";
        case Errc::IntegralityViolation: return "IntegralityViolation";
        case Errc::EmptyStream: return "EmptyStream";
        case Errc::BadArgument: return "BadArgument";
    }
    return "UnknownError";
}

class DomainError : public std::runtime_error {
public:
    DomainError(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }
    const char* name() const noexcept { return errc_name(code_); }

private:
    Errc code_;
};

} // namespace dlab
