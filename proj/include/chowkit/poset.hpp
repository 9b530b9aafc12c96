#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chowkit/intpoly.hpp"

namespace chowkit {

// Finite graded bounded poset stored as its cover DAG. Immutable after
// construction; ranks are recomputed and validated, never trusted from the
// caller. Elements are dense indices 0..n-1, names are metadata only.
class GradedPoset {
public:
    int n() const { return count_; }
    int rank_of(int u) const { return rank_[u]; }
    int rank() const { return rank_[top_]; }
    int bottom() const { return bottom_; }
    int top() const { return top_; }

    const std::vector<std::pair<int, int>>& covers() const { return covers_; }
    const std::vector<int>& up(int u) const { return up_[u]; }
    const std::vector<int>& down(int u) const { return down_[u]; }
    // Cover indices (into covers()) of the covers leaving / entering u.
    const std::vector<int>& up_cover_ids(int u) const { return up_cov_[u]; }
    const std::vector<int>& down_cover_ids(int u) const { return down_cov_[u]; }
    const std::vector<std::vector<int>>& levels() const { return levels_; }

    std::string name_of(int u) const;
    const std::vector<std::string>& names() const { return names_; }

    int cover_index(int lo, int hi) const; // -1 if (lo,hi) is not a cover
    bool leq(int s, int t) const;          // transitive closure, built lazily

    friend GradedPoset build_poset(std::vector<std::pair<int, int>> covers, int count,
                                   std::vector<std::string> names);

private:
    void ensure_closure() const;

    int count_ = 0;
    int bottom_ = 0, top_ = 0;
    std::vector<int> rank_;
    std::vector<std::pair<int, int>> covers_;
    std::vector<std::vector<int>> up_, down_, up_cov_, down_cov_;
    std::vector<std::vector<int>> levels_;
    std::vector<std::string> names_;
    std::unordered_map<std::int64_t, int> cover_id_;

    mutable std::vector<std::uint64_t> closure_; // n rows of ceil(n/64) words
    mutable size_t closure_words_ = 0;
};

GradedPoset build_poset(std::vector<std::pair<int, int>> covers, int count,
                        std::vector<std::string> names = {});

GradedPoset dual(const GradedPoset& p);
GradedPoset add_bottom(const GradedPoset& p);

struct Interval {
    const GradedPoset* parent;
    int lo, hi;
    std::vector<int> members; // ascending element ids, includes lo and hi
};

Interval interval(const GradedPoset& p, int s, int t);

// The interval as a standalone poset; elems maps its indices back to parent.
struct IntervalPoset {
    GradedPoset poset;
    std::vector<int> elems;
};
IntervalPoset interval_poset(const GradedPoset& p, int s, int t);

Int mobius(const GradedPoset& p, int s, int t);

// chi-bar of [lo, hi]: the characteristic polynomial with its (x-1) factor
// divided out (verified exact).
IntPoly reduced_char_poly(const GradedPoset& p, int lo, int hi);
IntPoly char_poly(const GradedPoset& p, int lo, int hi);

struct WhitneyProfile {
    int base;
    std::vector<Int> counts; // per rank offset 0..corank
};
WhitneyProfile whitney_profile(const GradedPoset& p, int s);

struct RankUniformResult {
    bool uniform;
    int witness_a = -1, witness_b = -1; // same-rank elements with different profiles
};
RankUniformResult is_rank_uniform(const GradedPoset& p);

// Induced poset on ranks S ∪ {0, n}; S ⊆ {1..n-1}.
GradedPoset rank_select(const GradedPoset& p, const std::vector<int>& S);
// Remove the top k intermediate ranks; drops the rank by exactly k.
GradedPoset truncate(const GradedPoset& p, int k = 1);

// Number of chains hitting exactly the ranks in S, by level-to-level
// reachability counting (never by chain enumeration).
Int flag_alpha(const GradedPoset& p, const std::vector<int>& S);
Int flag_beta(const GradedPoset& p, const std::vector<int>& S);

// Memoizing calculator for repeated flag queries on one poset.
class FlagCache {
public:
    explicit FlagCache(const GradedPoset& p) : p_(p) {}
    const Int& alpha(std::uint64_t mask); // bit k set = rank k selected
    Int beta(std::uint64_t mask);

private:
    const GradedPoset& p_;
    std::map<std::uint64_t, Int> alpha_;
};

// All saturated chains from lo to hi, as element sequences, in a
// deterministic (index-lexicographic) order. Throws SizeLimitExceeded if the
// count exceeds the limit.
std::vector<std::vector<int>> max_chains(const GradedPoset& p, int lo, int hi,
                                         std::uint64_t limit = 10000000);
Int count_max_chains(const GradedPoset& p, int lo, int hi);

// f- and h-polynomials of the order complex of the proper part.
struct OrderComplexPolys {
    IntPoly f; // in x, f_i = number of chains of i elements through ranks 1..n-1
    IntPoly h; // in y
};
OrderComplexPolys order_complex_polys(const GradedPoset& p);

} // namespace chowkit
