#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dlab/errors.hpp"

namespace dlab {

// Arbitrary-precision integer. All group/cocycle arithmetic runs on these;
// fixed-width fast paths exist only inside scan kernels where the range is
// proven (completions have 0 <= a,d < c, so a*d fits in 128 bits).
using Integer = mpz_class;

// Exact rational, always stored reduced with positive denominator.
// Arithmetic never rounds; double conversion is the only lossy exit.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(const Integer& n) : v_(n) {}
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw DomainError(Errc::BadArgument, "rational with zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }

    bool is_integer() const { return v_.get_den() == 1; }
    bool is_zero() const { return v_ == 0; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.v_ == 0) throw DomainError(Errc::BadArgument, "division by zero rational");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    double to_double() const { return v_.get_d(); }

    // Greatest integer <= value.
    Integer floor() const {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
        return q;
    }

    // Smallest integer >= value.
    Integer ceil() const {
        Integer q;
        mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
        return q;
    }

    // Fractional part in [0, 1), exact.
    Rational frac() const { return *this - Rational(floor()); }

    // "num/den", or just "num" for integers.
    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    // Parses "p", "p/q" or "-p/q". Rejects anything else.
    static Rational parse(const std::string& s);

private:
    mpq_class v_;
};

// gcd(a, b) >= 0, gcd(0, 0) = 0.
Integer gcd(const Integer& a, const Integer& b);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

// d in [0, c) with a*d == 1 (mod c); mod_inverse(anything coprime, 1) = 0.
// Throws NotCoprime when gcd(a, c) != 1.
Integer mod_inverse(const Integer& a, const Integer& c);
std::uint64_t mod_inverse_u64(std::uint64_t a, std::uint64_t c);

// In-place inversion of a list of units mod c with one extended gcd and
// 3(n-1) multiplications (prefix-product trick). Every entry must be a unit.
void batch_mod_inverse_u64(std::vector<std::uint64_t>& units, std::uint64_t c);

std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t c);

// Euler totient for every c in [1, x]; entry [0] is unused 0.
// Throws ResourceLimit when x exceeds the entry budget.
inline constexpr std::uint64_t kDefaultSieveBudget = 200'000'000;
std::vector<std::uint32_t> totient_sieve(std::uint64_t x,
                                         std::uint64_t budget = kDefaultSieveBudget);

// Trial-division primality for the Weil-bound checks (NotPrime gate).
bool is_prime_u64(std::uint64_t n);

// Primes <= x, ascending (plain Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint32_t x);

} // namespace dlab
