#include "dlab/exact.hpp"

#include <algorithm>
#include <cctype>

namespace dlab {

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw DomainError(Errc::BadArgument, "empty rational literal");
    auto slash = s.find('/');
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        return std::all_of(t.begin() + i, t.end(), [](unsigned char ch) { return std::isdigit(ch); });
    };
    if (slash == std::string::npos) {
        if (!is_int(s)) throw DomainError(Errc::BadArgument, "bad rational literal '" + s + "'");
        return Rational(Integer(s));
    }
    std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!is_int(p) || !is_int(q)) throw DomainError(Errc::BadArgument, "bad rational literal '" + s + "'");
    Integer den(q);
    if (den == 0) throw DomainError(Errc::BadArgument, "zero denominator in '" + s + "'");
    return Rational(Integer(p), den);
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Integer mod_inverse(const Integer& a, const Integer& c) {
    if (c <= 0) throw DomainError(Errc::BadArgument, "modulus must be positive");
    if (c == 1) {
        if (gcd(a, c) != 1) throw DomainError(Errc::NotCoprime, "gcd != 1");
        return 0;
    }
    Integer d;
    if (mpz_invert(d.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t()) == 0)
        throw DomainError(Errc::NotCoprime,
                          "no inverse of " + a.get_str() + " mod " + c.get_str());
    return d;
}

std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % c);
}

std::uint64_t mod_inverse_u64(std::uint64_t a, std::uint64_t c) {
    if (c == 0) throw DomainError(Errc::BadArgument, "modulus must be positive");
    if (c == 1) {
        if (gcd_u64(a, c) != 1) throw DomainError(Errc::NotCoprime, "gcd != 1");
        return 0;
    }
    a %= c;
    // Extended Euclid on (a, c), tracking only the coefficient of a.
    std::int64_t x0 = 1, x1 = 0;
    std::uint64_t r0 = a, r1 = c;
    while (r1 != 0) {
        std::uint64_t q = r0 / r1;
        std::uint64_t r2 = r0 - q * r1;
        std::int64_t x2 = x0 - static_cast<std::int64_t>(q) * x1;
        r0 = r1;
        r1 = r2;
        x0 = x1;
        x1 = x2;
    }
    if (r0 != 1)
        throw DomainError(Errc::NotCoprime, "no inverse of " + std::to_string(a) +
                                                " mod " + std::to_string(c));
    std::int64_t m = static_cast<std::int64_t>(c);
    std::int64_t r = x0 % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

void batch_mod_inverse_u64(std::vector<std::uint64_t>& units, std::uint64_t c) {
    if (units.empty()) return;
    std::vector<std::uint64_t> prefix(units.size());
    std::uint64_t acc = 1;
    for (std::size_t i = 0; i < units.size(); ++i) {
        acc = mul_mod_u64(acc, units[i], c);
        prefix[i] = acc;
    }
    std::uint64_t inv = mod_inverse_u64(acc, c);
    for (std::size_t i = units.size(); i-- > 0;) {
        std::uint64_t u = units[i];
        units[i] = (i == 0) ? inv : mul_mod_u64(inv, prefix[i - 1], c);
        inv = mul_mod_u64(inv, u, c);
    }
}

std::vector<std::uint32_t> totient_sieve(std::uint64_t x, std::uint64_t budget) {
    if (x < 1) throw DomainError(Errc::BadArgument, "sieve bound must be >= 1");
    if (x + 1 > budget)
        throw DomainError(Errc::ResourceLimit,
                          "totient sieve of size " + std::to_string(x) + " exceeds budget " +
                              std::to_string(budget));
    std::vector<std::uint32_t> phi(x + 1);
    for (std::uint64_t i = 0; i <= x; ++i) phi[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t p = 2; p <= x; ++p) {
        if (phi[p] == p) { // p prime
            for (std::uint64_t m = p; m <= x; m += p) phi[m] -= phi[m] / p;
        }
    }
    if (x >= 1) phi[1] = 1;
    return phi;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        if (n % p == 0) return n == p;
    }
    // 30-wheel trial division.
    static constexpr std::uint64_t wheel[] = {7, 11, 13, 17, 19, 23, 29, 31};
    for (std::uint64_t base = 0;; base += 30) {
        for (std::uint64_t off : wheel) {
            std::uint64_t d = base + off;
            if (d * d > n) return true;
            if (n % d == 0) return false;
        }
    }
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t x) {
    std::vector<bool> comp(static_cast<std::size_t>(x) + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 2; p <= x; ++p) {
        if (comp[p]) continue;
        out.push_back(p);
        for (std::uint64_t m = static_cast<std::uint64_t>(p) * p; m <= x; m += p)
            comp[static_cast<std::size_t>(m)] = true;
    }
    return out;
}

} // namespace dlab
