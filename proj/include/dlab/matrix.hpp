#pragma once

#include <string>

#include "dlab/exact.hpp"

namespace dlab {

// Element of SL(2,Z): (a b; c d) with ad - bc = 1, checked at construction.
struct UnimodularMatrix {
    Integer a, b, c, d;

    UnimodularMatrix(Integer a_, Integer b_, Integer c_, Integer d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (a * d - b * c != 1)
            throw DomainError(Errc::NotUnimodular, "determinant of " + str_of(a, b, c, d) + " is not 1");
    }

    static UnimodularMatrix identity() { return {1, 0, 0, 1}; }
    // T = (1 1; 0 1), the cusp-width translation.
    static UnimodularMatrix t_power(const Integer& m) { return {1, m, 0, 1}; }
    // S = (0 -1; 1 0), order-4 rotation.
    static UnimodularMatrix s() { return {0, -1, 1, 0}; }

    UnimodularMatrix operator*(const UnimodularMatrix& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }

    UnimodularMatrix inverse() const { return {d, -b, -c, a}; }

    bool operator==(const UnimodularMatrix& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }

    std::string str() const { return str_of(a, b, c, d); }

private:
    static std::string str_of(const Integer& a, const Integer& b, const Integer& c,
                              const Integer& d) {
        return "(" + a.get_str() + " " + b.get_str() + "; " + c.get_str() + " " + d.get_str() + ")";
    }
};

} // namespace dlab
