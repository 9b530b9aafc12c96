#include "chowkit/intpoly.hpp"

#include <sstream>

namespace chowkit {

const char* errc_name(errc c) {
    switch (c) {
    case errc::NotBounded: return "NotBounded";
    case errc::NotGraded: return "NotGraded";
    case errc::NotComparable: return "NotComparable";
    case errc::RankZeroInterval: return "RankZeroInterval";
    case errc::SizeLimitExceeded: return "SizeLimitExceeded";
    case errc::NotPalindromic: return "NotPalindromic";
    case errc::DegreeTooHigh: return "DegreeTooHigh";
    case errc::ZeroPolynomial: return "ZeroPolynomial";
    case errc::NotRealRooted: return "NotRealRooted";
    case errc::DegreeGap: return "DegreeGap";
    case errc::NotACover: return "NotACover";
    case errc::MissingCover: return "MissingCover";
    case errc::TopElement: return "TopElement";
    case errc::NotEL: return "NotEL";
    case errc::NotUMEL: return "NotUMEL";
    case errc::NotALattice: return "NotALattice";
    case errc::InvalidChain: return "InvalidChain";
    case errc::NotRankUniform: return "NotRankUniform";
    case errc::NotSupersolvable: return "NotSupersolvable";
    case errc::NotLowerRankUniform: return "NotLowerRankUniform";
    case errc::SchemaError: return "SchemaError";
    case errc::UnknownFamily: return "UnknownFamily";
    }
    return "UnknownError";
}

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    normalize();
}

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPoly IntPoly::constant(Int c) {
    IntPoly p;
    if (c != 0) p.c_.push_back(std::move(c));
    return p;
}

IntPoly IntPoly::monomial(Int c, int deg) {
    IntPoly p;
    if (c != 0) {
        p.c_.assign(deg, Int(0));
        p.c_.push_back(std::move(c));
    }
    return p;
}

void IntPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Int IntPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Int(0);
    return c_[i];
}

const Int& IntPoly::leading() const {
    static const Int zero(0);
    return c_.empty() ? zero : c_.back();
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (Int& v : r.c_) v = -v;
    return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const Int& k) const {
    if (k == 0) return IntPoly();
    IntPoly r = *this;
    for (Int& v : r.c_) v *= k;
    return r;
}

IntPoly operator*(const Int& k, const IntPoly& p) { return p * k; }

IntPoly IntPoly::times_x(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<Int> r(c_.size() + k, Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<Int> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Int(static_cast<long>(i));
    return IntPoly(std::move(r));
}

Int IntPoly::eval(const Int& x) const {
    Int acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Rat IntPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + Rat(c_[i]);
    return acc;
}

int IntPoly::sign_at(const Rat& x) const { return sgn(eval(x)); }

bool IntPoly::div_exact(const IntPoly& num, const IntPoly& den, IntPoly& quot) {
    if (den.is_zero()) return false;
    if (num.is_zero()) {
        quot = IntPoly();
        return true;
    }
    if (num.degree() < den.degree()) return false;
    std::vector<Int> rem = num.c_;
    std::vector<Int> q(num.degree() - den.degree() + 1, Int(0));
    const Int& lead = den.c_.back();
    for (int d = num.degree(); d >= den.degree(); --d) {
        Int& top = rem[d];
        if (top == 0) continue;
        if (top % lead != 0) return false;
        Int f = top / lead;
        int shift = d - den.degree();
        for (int i = 0; i <= den.degree(); ++i) rem[shift + i] -= f * den.c_[i];
        q[shift] = std::move(f);
    }
    for (const Int& v : rem)
        if (v != 0) return false;
    quot = IntPoly(std::move(q));
    return true;
}

Int IntPoly::content() const {
    Int g(0);
    for (const Int& v : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    Int g = content();
    if (g == 0 || g == 1) return *this;
    IntPoly r = *this;
    for (Int& v : r.c_) v /= g;
    return r;
}

// Pseudo-remainder based primitive Euclid. Signs are irrelevant for gcd.
IntPoly IntPoly::gcd(IntPoly a, IntPoly b) {
    a = a.primitive_part();
    b = b.primitive_part();
    if (a.is_zero()) std::swap(a, b);
    while (!b.is_zero()) {
        if (a.degree() < b.degree()) {
            std::swap(a, b);
            continue;
        }
        // prem(a, b): scale a so each elimination step stays integral.
        int delta = a.degree() - b.degree() + 1;
        Int lead = b.leading();
        Int scale(1);
        for (int i = 0; i < delta; ++i) scale *= lead;
        IntPoly r = a * scale;
        while (!r.is_zero() && r.degree() >= b.degree()) {
            Int f = r.leading() / b.leading();
            r -= b.times_x(r.degree() - b.degree()) * f;
        }
        a = b;
        b = r.primitive_part();
    }
    if (!a.is_zero() && a.leading() < 0) a = -a;
    return a;
}

std::string IntPoly::str(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Int& v = c_[i];
        if (v == 0) continue;
        Int a = abs(v);
        if (first) {
            if (v < 0) out << "-";
            first = false;
        } else {
            out << (v < 0 ? " - " : " + ");
        }
        if (i == 0 || a != 1) out << a.get_str();
        if (i > 0) {
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

IntPoly one_plus_x_pow(int n) {
    IntPoly r{1};
    IntPoly base{1, 1};
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

} // namespace chowkit
