#include "dlab/dedekind.hpp"

#include <cmath>
#include <random>

#include "dlab/kernels.hpp"

namespace dlab {

namespace {

const Rational kQuarter(1, 4);
const Rational kHalf(1, 2);

void require_coprime(const Integer& a, const Integer& c) {
    if (gcd(a, c) != 1)
        throw DomainError(Errc::NotCoprime,
                          "gcd(" + a.get_str() + ", " + c.get_str() + ") != 1");
}

} // namespace

Rational sawtooth(const Rational& x) {
    if (x.is_integer()) return Rational(0);
    return x.frac() - kHalf;
}

Rational dedekind_sum_naive(const Integer& a, const Integer& c) {
    if (c < 1) throw DomainError(Errc::BadArgument, "modulus c must be >= 1");
    require_coprime(a, c);
    Rational sum(0);
    for (Integer n = 1; n < c; ++n) {
        sum += sawtooth(Rational(n, c)) * sawtooth(Rational(n * a, c));
    }
    return sum;
}

Rational dedekind_sum_fast(const Integer& a_in, const Integer& c_in) {
    if (c_in < 1) throw DomainError(Errc::BadArgument, "modulus c must be >= 1");
    require_coprime(a_in, c_in);

    // Least non-negative residue; keeps every later argument positive.
    Integer a;
    mpz_mod(a.get_mpz_t(), a_in.get_mpz_t(), c_in.get_mpz_t());
    Integer c = c_in;

    Rational acc(0);
    int sign = 1;
    for (;;) {
        if (c == 1) break; // s(0, 1) = 0
        if (a == 1) {
            // s(1, c) = (c-1)(c-2)/(12c)
            Rational closed((c - 1) * (c - 2), 12 * c);
            acc += (sign > 0) ? closed : -closed;
            break;
        }
        if (2 * a > c) {
            // oddness: s(a, c) = -s(c - a, c)
            a = c - a;
            sign = -sign;
            continue;
        }
        Rational step = Rational(a * a + c * c + 1, 12 * a * c) - kQuarter;
        acc += (sign > 0) ? step : -step;
        Integer r;
        mpz_mod(r.get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
        c = a;
        a = r;
        sign = -sign;
    }
    return acc;
}

Rational phi_cocycle(const UnimodularMatrix& g) {
    Rational result;
    if (g.c == 0) {
        // det = a*d = 1 here, so d = +-1 and b/d is an integer.
        result = Rational(g.b, g.d);
    } else {
        const int sign_c = sgn(g.c);
        const Integer abs_c = abs(g.c);
        Integer a_mod;
        mpz_mod(a_mod.get_mpz_t(), g.a.get_mpz_t(), abs_c.get_mpz_t());
        Rational s = dedekind_sum_fast(a_mod, abs_c);
        result = Rational(g.a + g.d, g.c) - Rational(12 * sign_c) * s;
    }
    if (!result.is_integer())
        throw DomainError(Errc::IntegralityViolation,
                          "Phi" + g.str() + " = " + result.str() + " is not an integer");
    return result;
}

Rational psi_cocycle(const UnimodularMatrix& g) {
    Rational phi = phi_cocycle(g) / Rational(12);
    if (g.c == 0) {
        phi -= kQuarter;
        const int sign_md = sgn(g.d) > 0 ? -1 : 1; // sign(-d); d = +-1 when c = 0
        return phi - Rational(sign_md, 4);
    }
    return phi - Rational(sgn(g.c), 4);
}

Weight Weight::parse(const std::string& text) {
    if (text.find('/') != std::string::npos) return from_rational(Rational::parse(text));
    // Integer literals also take the exact path.
    try {
        return from_rational(Rational::parse(text));
    } catch (const DomainError&) {
        // fall through to floating parse
    }
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size() || !std::isfinite(v))
            throw DomainError(Errc::BadArgument, "bad weight '" + text + "'");
        return from_double(v);
    } catch (const DomainError&) {
        throw;
    } catch (...) {
        throw DomainError(Errc::BadArgument, "bad weight '" + text + "'");
    }
}

std::string Weight::str() const {
    if (exact) return exact->str();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

MultiplierSystem::MultiplierSystem(Weight k_, GroupSpec group_)
    : k(std::move(k_)), group(group_) {
    if (!group.is_sl2z())
        throw DomainError(Errc::UnsupportedGroup,
                          "eta multiplier system is defined on sl2z only");
    if (auto a = alpha_exact()) {
        alpha = a->to_double();
    } else {
        double kv = k.value * group.covolume_over_4pi().to_double();
        alpha = std::ceil(kv) - kv;
    }
}

long MultiplierSystem::frequency_index() const {
    if (k.is_exact()) {
        Rational kv = *k.exact * group.covolume_over_4pi();
        return static_cast<long>(kv.ceil().get_si());
    }
    return static_cast<long>(std::ceil(k.value * group.covolume_over_4pi().to_double()));
}

std::optional<Rational> MultiplierSystem::alpha_exact() const {
    if (!k.is_exact()) return std::nullopt;
    Rational kv = *k.exact * group.covolume_over_4pi();
    return Rational(kv.ceil()) - kv;
}

Rational multiplier_phase_exact(const MultiplierSystem& ms, const UnimodularMatrix& g) {
    if (!ms.k.is_exact())
        throw DomainError(Errc::BadArgument, "exact multiplier phase needs an exact weight");
    return (*ms.k.exact * psi_cocycle(g)).frac();
}

double multiplier_phase(const MultiplierSystem& ms, const UnimodularMatrix& g) {
    if (ms.k.is_exact()) return multiplier_phase_exact(ms, g).to_double();
    double t = ms.k.value * psi_cocycle(g).to_double();
    double f = t - std::floor(t);
    return f < 1.0 ? f : 0.0;
}

std::complex<double> multiplier(const MultiplierSystem& ms, const UnimodularMatrix& g) {
    return unit_phase(multiplier_phase(ms, g));
}

Rational dedekind_symbol(const UnimodularMatrix& completion) {
    if (completion.c == 0)
        throw DomainError(Errc::InfinityCoset, "c = 0 coset maps to the symbolic value infinity");
    // (V/4pi)(a+d)/c - phi, with V/4pi = 1/12 and phi = Phi/12 on SL(2,Z).
    return Rational(completion.a + completion.d, 12 * completion.c) -
           phi_cocycle(completion) / Rational(12);
}

Rational dedekind_symbol(const DoubleCoset& coset) {
    if (!coset.group.is_sl2z())
        throw DomainError(Errc::UnsupportedGroup,
                          "Dedekind symbol values are computable on sl2z only");
    return dedekind_symbol(complete_matrix(coset));
}

UnimodularMatrix random_group_word(std::uint64_t length, std::uint64_t seed) {
    if (length < 1) throw DomainError(Errc::BadArgument, "word length must be >= 1");
    std::mt19937_64 rng(seed);
    const UnimodularMatrix gens[4] = {
        UnimodularMatrix::s(),
        UnimodularMatrix::s().inverse(),
        UnimodularMatrix::t_power(1),
        UnimodularMatrix::t_power(-1),
    };
    UnimodularMatrix m = UnimodularMatrix::identity();
    for (std::uint64_t i = 0; i < length; ++i) m = m * gens[rng() % 4];
    // Constructor re-checks det = 1 on every product already.
    return m;
}

std::complex<double> unit_phase(double turns) {
    double c, s;
    kernels::sincos_turn(turns, c, s);
    return {c, s};
}

std::complex<double> unit_phase(const Rational& turns) {
    return unit_phase(turns.frac().to_double());
}

} // namespace dlab
