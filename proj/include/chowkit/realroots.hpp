#pragma once

#include <utility>
#include <vector>

#include "chowkit/intpoly.hpp"

namespace chowkit {

// Half-open rational interval (lo, hi] known to contain exactly one distinct
// real root of some square-free polynomial. lo == hi encodes an exact
// rational root.
struct RootInterval {
    Rat lo, hi;
};

// Sturm-based certification record for one polynomial.
struct RootCertificate {
    IntPoly polynomial;
    IntPoly square_free_part;
    int distinct_real_root_count = 0;
    std::vector<RootInterval> isolating_intervals; // ascending
    std::vector<int> multiplicities;               // parallel to intervals
    bool all_real = false;
    bool all_nonpositive = false;
};

bool is_palindromic(const IntPoly& f, int d);

// Coordinates of a palindromic f (center d/2) in the basis x^i (1+x)^{d-2i}.
IntPoly gamma_extract(const IntPoly& f, int d);
IntPoly gamma_expand(const IntPoly& g, int d);

// Square-free decomposition: result[k] has the roots of f of multiplicity
// k+1, each with multiplicity one. Product of result[k]^(k+1) equals f up to
// a rational constant.
std::vector<IntPoly> squarefree_decomposition(const IntPoly& f);

// Sturm sequence of a square-free primitive polynomial.
std::vector<IntPoly> sturm_sequence(const IntPoly& squarefree);
int sturm_variations(const std::vector<IntPoly>& seq, const Rat& x);
// Number of distinct roots in (lo, hi].
int sturm_count(const std::vector<IntPoly>& seq, const Rat& lo, const Rat& hi);

// Cauchy bound: every real root lies in (-B, B).
Rat root_bound(const IntPoly& f);

RootCertificate isolate_real_roots(const IntPoly& f);
RootCertificate certify_real_rooted_nonpositive(const IntPoly& f);

// Exact decision of f interlaces g (weak root alternation with g's largest
// root largest). Degree <= 1 pairs, constants and zero polynomials are true
// by convention.
bool certify_interlacing(const IntPoly& f, const IntPoly& g);

// Exact decision of W = f'g - g'f >= 0 on all of R.
bool wronskian_nonneg(const IntPoly& f, const IntPoly& g);

} // namespace chowkit
