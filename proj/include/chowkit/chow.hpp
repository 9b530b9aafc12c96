#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chowkit/labeling.hpp"
#include "chowkit/poset.hpp"

namespace chowkit {

enum class ChowMethod { recursion, flag };
enum class AugChowMethod { sum, adjoin, flag };
enum class RefineMethod { enumerate, recurse };

// Chow polynomial of a bounded graded poset, either by the incidence-algebra
// recursion over upper intervals or by the stable-set flag formula.
IntPoly chow_poly(const GradedPoset& p, ChowMethod method = ChowMethod::flag);

IntPoly aug_chow_poly(const GradedPoset& p, AugChowMethod method = AugChowMethod::flag);

// Gamma coordinates of the (augmented) Chow polynomial, as a polynomial in y.
IntPoly gamma_of(const GradedPoset& p, bool augmented);

// Per-first-label-index refinement of the gamma polynomials. Entry i-1 of
// each vector covers the maximal chains without double descents whose first
// label is the (i)-th smallest above the bottom; ascent/descent split by the
// comparison of the first two labels. all = ascent + descent termwise,
// sum(ascent) = gamma_of(P, false), sum(all) = gamma_of(P, true).
struct GammaRefinement {
    int n = 0; // poset rank
    std::vector<IntPoly> all, ascent, descent;
};

GammaRefinement gamma_refined(const GradedPoset& p, const EdgeLabeling& lam,
                              RefineMethod method);

// Descent generating polynomials of the maximal chains of an upper interval
// [s, top], refined by the index of the first label; elements of equal
// corank share the vector. h[k-1] is the vector at corank k, for k = 1..n;
// the corank-n entries sum to the h-polynomial of the order complex.
struct HRefinement {
    int corank = 0;
    std::vector<IntPoly> h;
};

std::vector<HRefinement> h_refined(const GradedPoset& p, const EdgeLabeling& lam,
                                   RefineMethod method);

// Gamma polynomials of the rank-selected subposet P_S, computed from the
// flag h-vector of P over S-stable subsets (no two members consecutive in
// S); first component drops the subsets containing min S.
std::pair<IntPoly, IntPoly> rank_selected_gamma(const GradedPoset& p,
                                                const EdgeLabeling& lam,
                                                const std::vector<int>& S);

struct BatteryCheck {
    std::string name;
    bool pass = false;
};

struct BatteryReport {
    bool ok = false;
    std::vector<BatteryCheck> checks;
};

// Exact interlacing certificates between the gamma polynomials of P and of
// its atom contractions, plus the duality identities against the dual poset.
BatteryReport interlacing_battery(const GradedPoset& p, const EdgeLabeling& lam);

// All square minors of the lower Whitney matrix M[i][j] = number of rank-j
// elements below any rank-i element are nonnegative. Requires the counts to
// be independent of the chosen rank-i element.
bool tn_check(const GradedPoset& p);

} // namespace chowkit
