#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

#include "chowkit/error.hpp"

namespace chowkit {

using Int = mpz_class;
using Rat = mpq_class;

// Dense univariate polynomial over arbitrary-precision integers.
// Coefficients are stored low to high; the zero polynomial has an empty
// coefficient vector and degree -1. All arithmetic is exact.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(std::initializer_list<long> coeffs);
    explicit IntPoly(std::vector<Int> coeffs);

    static IntPoly constant(Int c);
    static IntPoly monomial(Int c, int deg);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Int coeff(int i) const;
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& leading() const;

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator-() const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator*(const Int& k) const;
    IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
    IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }
    IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    IntPoly times_x(int k = 1) const; // multiply by x^k
    IntPoly derivative() const;
    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;
    int sign_at(const Rat& x) const;

    // Exact division over Z; returns false if the division leaves a remainder
    // or has non-integer quotient coefficients.
    static bool div_exact(const IntPoly& num, const IntPoly& den, IntPoly& quot);

    Int content() const;           // gcd of coefficients, nonnegative
    IntPoly primitive_part() const; // content divided out, leading sign kept

    // Primitive gcd over Z (Gauss), positive leading coefficient.
    static IntPoly gcd(IntPoly a, IntPoly b);

    std::string str(const char* var = "x") const;

private:
    void normalize();
    std::vector<Int> c_;
};

IntPoly operator*(const Int& k, const IntPoly& p);

// (1+x)^n as a convenience for the gamma basis and flag formulas.
IntPoly one_plus_x_pow(int n);

} // namespace chowkit
