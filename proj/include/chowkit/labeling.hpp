#pragma once

#include <string>
#include <vector>

#include "chowkit/poset.hpp"

namespace chowkit {

// Integer labels on the covers of a poset, aligned with p.covers().
// Immutable once attached.
struct EdgeLabeling {
    std::vector<int> by_cover;

    int label(const GradedPoset& p, int lo, int hi) const;
    int label_of_cover(int cover_id) const { return by_cover[cover_id]; }
};

// Each (lower, upper, label) triple must name a cover; every cover must be
// labeled exactly once.
EdgeLabeling attach_labeling(const GradedPoset& p,
                             const std::vector<std::tuple<int, int, int>>& labels);

// Labeling induced on an interval poset extracted from a labeled parent.
EdgeLabeling restrict_labeling(const GradedPoset& parent, const EdgeLabeling& lam,
                               const IntervalPoset& ip);

struct ELResult {
    bool ok = false;
    // On failure: the offending interval and the chains that demonstrate it
    // (as element sequences in the ambient poset).
    int lo = -1, hi = -1;
    std::vector<std::vector<int>> chains;
    std::string reason;
};

// EL property: every interval [s,t] has exactly one maximal chain with
// weakly increasing labels, and that chain is lexicographically minimal.
ELResult verify_el(const GradedPoset& p, const EdgeLabeling& lam);

struct CoverStat {
    int t;        // upper element of the cover
    int cover_id; // index into p.covers()
    int label;
    int ind; // 1-based index of label among distinct labels above s
    int des; // number of distinct labels above t strictly below label
};

struct LocalStats {
    std::vector<int> labels; // sorted distinct labels above s
    std::vector<int> widths; // widths[i] = number of covers with labels[i]
    std::vector<CoverStat> covers; // sorted by (label, t)
};

LocalStats local_stats(const GradedPoset& p, const EdgeLabeling& lam, int s);

struct RankLabelStats {
    // Indexed by rank 0..n-1; entries at index i describe the (i+1)-th label.
    std::vector<int> ell;
    std::vector<std::vector<int>> omega;
    std::vector<std::vector<int>> des;
};

struct RankStatsResult {
    bool uniform = false;
    RankLabelStats stats; // valid only when uniform
    // Nonuniformity witness: two same-rank elements whose width or descent
    // data differ (equal when a single element is inconsistent by itself).
    int witness_a = -1, witness_b = -1;
    std::string reason;
};

// Requires the labeling to be EL; throws NotEL otherwise.
RankStatsResult rank_stats(const GradedPoset& p, const EdgeLabeling& lam);

struct UmelReport {
    bool ok = false;
    std::string stage; // empty if ok, else "el", "uniform" or "monotonic"
    std::string detail;
    ELResult el;
    RankStatsResult stats; // populated when the EL stage passes
};

// UMEL-shellability of (P, lam): EL, rank-uniform label statistics, and
// descent counts weakly increasing in the label index at every rank.
UmelReport is_umel(const GradedPoset& p, const EdgeLabeling& lam);

// Positions i (1-based) where the label sequence of a saturated chain
// strictly decreases. The chain is given by its elements.
std::vector<int> chain_descent_set(const GradedPoset& p, const EdgeLabeling& lam,
                                   const std::vector<int>& chain);

} // namespace chowkit
