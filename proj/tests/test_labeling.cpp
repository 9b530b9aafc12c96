#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chowkit/error.hpp"
#include "chowkit/labeling.hpp"
#include "chowkit/poset.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <tuple>

using namespace chowkit;

namespace {

// Rank 3 poset with two chains through every rank-1/rank-2 pair except the
// outer ones; the standard worked example with labels
//   0-b:1 0-c:2 b-d:1 b-e:2 c-e:1 c-f:2 d-1:1 e-1:1 f-1:1
GradedPoset diamond() {
    return build_poset({{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 6}, {4, 6}, {5, 6}},
                       7, {"0", "b", "c", "d", "e", "f", "1"});
}

std::vector<std::tuple<int, int, int>> diamond_labels() {
    return {{0, 1, 1}, {0, 2, 2}, {1, 3, 1}, {1, 4, 2}, {2, 4, 1},
            {2, 5, 2}, {3, 6, 1}, {4, 6, 1}, {5, 6, 1}};
}

// Subsets of {1,2,3} as bitmasks, covers add one element, labeled by the
// added element.
GradedPoset boolean3() {
    std::vector<std::pair<int, int>> cov;
    for (int m = 0; m < 8; ++m)
        for (int e = 0; e < 3; ++e)
            if (!(m >> e & 1)) cov.push_back({m, m | 1 << e});
    return build_poset(cov, 8);
}

EdgeLabeling boolean3_labels(const GradedPoset& p) {
    std::vector<std::tuple<int, int, int>> triples;
    for (auto [lo, hi] : p.covers()) {
        int added = hi & ~lo;
        int e = 0;
        while (!(added >> e & 1)) ++e;
        triples.push_back({lo, hi, e + 1});
    }
    return attach_labeling(p, triples);
}

// Direct refined Whitney counts: W[k][i] = weakly increasing chains of
// length k from s whose last cover has label index i (1-based), computed by
// brute-force DFS over chains.
std::map<std::pair<int, int>, std::int64_t> refined_whitney_direct(const GradedPoset& p,
                                                                   const EdgeLabeling& lam,
                                                                   int s) {
    std::map<std::pair<int, int>, std::int64_t> W;
    auto ind_of = [&](int u, int cover_id) {
        std::vector<int> labs;
        for (int ci : p.up_cover_ids(u)) labs.push_back(lam.by_cover[ci]);
        std::sort(labs.begin(), labs.end());
        labs.erase(std::unique(labs.begin(), labs.end()), labs.end());
        return int(std::lower_bound(labs.begin(), labs.end(), lam.by_cover[cover_id]) -
                   labs.begin()) +
               1;
    };
    auto dfs = [&](auto&& self, int u, int depth, int floor) -> void {
        for (int ci : p.up_cover_ids(u)) {
            int l = lam.by_cover[ci];
            if (l < floor) continue;
            W[{depth + 1, ind_of(u, ci)}] += 1;
            self(self, p.covers()[ci].second, depth + 1, l);
        }
    };
    dfs(dfs, s, 0, INT_MIN);
    return W;
}

} // namespace

TEST_CASE("attach_labeling validation") {
    GradedPoset p = diamond();
    EdgeLabeling lam = attach_labeling(p, diamond_labels());
    CHECK(lam.by_cover.size() == 9);
    CHECK(lam.label(p, 0, 2) == 2);
    CHECK(lam.label(p, 2, 4) == 1);
    CHECK_THROWS_AS(lam.label(p, 0, 6), error);

    auto bad = diamond_labels();
    bad.push_back({0, 6, 7}); // comparable but not a cover
    CHECK_THROWS_WITH_AS(attach_labeling(p, bad), doctest::Contains("not a cover"), error);

    auto missing = diamond_labels();
    missing.pop_back();
    try {
        attach_labeling(p, missing);
        FAIL("expected MissingCover");
    } catch (const error& e) {
        CHECK(e.code() == errc::MissingCover);
    }

    auto dup = diamond_labels();
    dup.push_back({0, 1, 5});
    try {
        attach_labeling(p, dup);
        FAIL("expected SchemaError");
    } catch (const error& e) {
        CHECK(e.code() == errc::SchemaError);
    }
}

TEST_CASE("verify_el accepts the worked examples") {
    GradedPoset p = diamond();
    CHECK(verify_el(p, attach_labeling(p, diamond_labels())).ok);

    GradedPoset b = boolean3();
    CHECK(verify_el(b, boolean3_labels(b)).ok);
}

TEST_CASE("verify_el rejects a perturbed diamond labeling") {
    GradedPoset p = diamond();
    // Swap the two labels above atom c; the chain through f then has
    // descending labels and its interval loses its increasing chain.
    auto triples = diamond_labels();
    for (auto& [lo, hi, l] : triples) {
        if (lo == 2 && hi == 4) l = 2;
        if (lo == 2 && hi == 5) l = 1;
    }
    ELResult r = verify_el(p, attach_labeling(p, triples));
    CHECK_FALSE(r.ok);
    CHECK(r.lo >= 0);
    CHECK(r.hi >= 0);
    CHECK(!r.chains.empty());
    // Witness chains really live in the reported interval.
    for (const auto& ch : r.chains) {
        REQUIRE(!ch.empty());
        CHECK(ch.front() == r.lo);
        CHECK(ch.back() == r.hi);
        for (size_t i = 0; i + 1 < ch.size(); ++i) CHECK(p.cover_index(ch[i], ch[i + 1]) >= 0);
    }
}

TEST_CASE("verify_el rejects a unique increasing chain that is not lex minimal") {
    // 0 < a,b < T with chains labeled (2,3) and (1,0): the increasing chain
    // (2,3) exists and is unique, but (1,0) is smaller lexicographically.
    GradedPoset p = build_poset({{0, 1}, {0, 2}, {1, 3}, {2, 3}}, 4, {"0", "a", "b", "T"});
    EdgeLabeling lam = attach_labeling(p, {{0, 1, 2}, {1, 3, 3}, {0, 2, 1}, {2, 3, 0}});
    ELResult r = verify_el(p, lam);
    REQUIRE_FALSE(r.ok);
    CHECK(r.lo == 0);
    CHECK(r.hi == 3);
    REQUIRE(r.chains.size() == 2);
    CHECK(r.chains[0] == std::vector<int>{0, 1, 3}); // the increasing chain
    CHECK(r.chains[1] == std::vector<int>{0, 2, 3}); // the lex smaller one
}

TEST_CASE("verify_el rejects an interval without an increasing chain") {
    // Single maximal chain with a descent.
    GradedPoset p = build_poset({{0, 1}, {1, 2}}, 3);
    ELResult r = verify_el(p, attach_labeling(p, {{0, 1, 2}, {1, 2, 1}}));
    REQUIRE_FALSE(r.ok);
    CHECK(r.lo == 0);
    CHECK(r.hi == 2);
    CHECK(r.chains.size() == 1);
}

TEST_CASE("local_stats on the diamond") {
    GradedPoset p = diamond();
    EdgeLabeling lam = attach_labeling(p, diamond_labels());

    LocalStats bot = local_stats(p, lam, 0);
    CHECK(bot.labels == std::vector<int>{1, 2});
    CHECK(bot.widths == std::vector<int>{1, 1});
    REQUIRE(bot.covers.size() == 2);
    CHECK(bot.covers[0].ind == 1);
    CHECK(bot.covers[0].des == 0);
    CHECK(bot.covers[1].ind == 2);
    CHECK(bot.covers[1].des == 1);

    for (int s : {1, 2}) {
        LocalStats ls = local_stats(p, lam, s);
        CHECK(ls.widths == std::vector<int>{1, 1});
        CHECK(ls.covers[0].des == 0);
        CHECK(ls.covers[1].des == 1);
    }
    for (int s : {3, 4, 5}) {
        LocalStats ls = local_stats(p, lam, s);
        CHECK(ls.widths == std::vector<int>{1});
        CHECK(ls.covers[0].des == 0); // covers into the top never descend
    }
    CHECK_THROWS_AS(local_stats(p, lam, 6), error);
}

TEST_CASE("rank_stats uniform cases") {
    GradedPoset p = diamond();
    RankStatsResult r = rank_stats(p, attach_labeling(p, diamond_labels()));
    REQUIRE(r.uniform);
    CHECK(r.stats.ell == std::vector<int>{2, 2, 1});
    CHECK(r.stats.omega[0] == std::vector<int>{1, 1});
    CHECK(r.stats.omega[1] == std::vector<int>{1, 1});
    CHECK(r.stats.omega[2] == std::vector<int>{1});
    CHECK(r.stats.des[0] == std::vector<int>{0, 1});
    CHECK(r.stats.des[1] == std::vector<int>{0, 1});
    CHECK(r.stats.des[2] == std::vector<int>{0});

    GradedPoset b = boolean3();
    RankStatsResult rb = rank_stats(b, boolean3_labels(b));
    REQUIRE(rb.uniform);
    CHECK(rb.stats.ell == std::vector<int>{3, 2, 1});
    CHECK(rb.stats.omega[0] == std::vector<int>{1, 1, 1});
    // Labels above a set are exactly the missing elements, so the descent
    // count of the i-th label equals i-1.
    CHECK(rb.stats.des[0] == std::vector<int>{0, 1, 2});
    CHECK(rb.stats.des[1] == std::vector<int>{0, 1});
}

TEST_CASE("rank_stats throws NotEL and reports nonuniformity") {
    GradedPoset p = build_poset({{0, 1}, {1, 2}}, 3);
    EdgeLabeling bad = attach_labeling(p, {{0, 1, 2}, {1, 2, 1}});
    try {
        rank_stats(p, bad);
        FAIL("expected NotEL");
    } catch (const error& e) {
        CHECK(e.code() == errc::NotEL);
    }

    // EL but the two atoms have different numbers of labels above them:
    // 0 < a,b; a < x; b < x,y; x,y < T.
    GradedPoset q = build_poset({{0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 5}, {4, 5}}, 6,
                                {"0", "a", "b", "x", "y", "T"});
    EdgeLabeling lam = attach_labeling(
        q, {{0, 1, 1}, {0, 2, 2}, {1, 3, 1}, {2, 3, 1}, {2, 4, 3}, {3, 5, 1}, {4, 5, 1}});
    REQUIRE(verify_el(q, lam).ok);
    RankStatsResult r = rank_stats(q, lam);
    REQUIRE_FALSE(r.uniform);
    CHECK(r.witness_a != -1);
    CHECK(r.witness_b != -1);
    CHECK(q.rank_of(r.witness_a) == q.rank_of(r.witness_b));
    CHECK(r.witness_a != r.witness_b);
}

TEST_CASE("is_umel verdicts") {
    GradedPoset p = diamond();
    UmelReport ok = is_umel(p, attach_labeling(p, diamond_labels()));
    CHECK(ok.ok);
    CHECK(ok.stage.empty());

    GradedPoset b = boolean3();
    CHECK(is_umel(b, boolean3_labels(b)).ok);

    // EL failure is reported as the first stage.
    auto triples = diamond_labels();
    for (auto& [lo, hi, l] : triples) {
        if (lo == 2 && hi == 4) l = 2;
        if (lo == 2 && hi == 5) l = 1;
    }
    UmelReport bad = is_umel(p, attach_labeling(p, triples));
    CHECK_FALSE(bad.ok);
    CHECK(bad.stage == "el");

    GradedPoset q = build_poset({{0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 5}, {4, 5}}, 6);
    EdgeLabeling lam = attach_labeling(
        q, {{0, 1, 1}, {0, 2, 2}, {1, 3, 1}, {2, 3, 1}, {2, 4, 3}, {3, 5, 1}, {4, 5, 1}});
    UmelReport nonuni = is_umel(q, lam);
    CHECK_FALSE(nonuni.ok);
    CHECK(nonuni.stage == "uniform");
}

TEST_CASE("chain_descent_set") {
    GradedPoset b = boolean3();
    EdgeLabeling lam = boolean3_labels(b);
    // 0, {2}, {1,2}, {1,2,3} has labels (2,1,3).
    CHECK(chain_descent_set(b, lam, {0, 2, 3, 7}) == std::vector<int>{1});
    // 0, {1}, {1,2}, {1,2,3} has labels (1,2,3): weakly increasing.
    CHECK(chain_descent_set(b, lam, {0, 1, 3, 7}).empty());
    CHECK(chain_descent_set(b, lam, {0}).empty());
    CHECK_THROWS_AS(chain_descent_set(b, lam, {0, 7}), error);
    CHECK_THROWS_AS(chain_descent_set(b, lam, std::vector<int>{}), error);
}

TEST_CASE("descent generating polynomial matches flag beta") {
    for (int which = 0; which < 2; ++which) {
        GradedPoset p = which == 0 ? diamond() : boolean3();
        EdgeLabeling lam =
            which == 0 ? attach_labeling(p, diamond_labels()) : boolean3_labels(p);
        REQUIRE(verify_el(p, lam).ok);

        std::map<size_t, std::int64_t> by_descents;
        for (const auto& ch : max_chains(p, p.bottom(), p.top()))
            by_descents[chain_descent_set(p, lam, ch).size()] += 1;

        // Sum beta(S) y^|S| over rank subsets S of 1..n-1.
        std::map<size_t, Int> by_beta;
        FlagCache fc(p);
        int n = p.rank();
        for (std::uint64_t mask = 0; mask < (1ull << (n - 1)); ++mask)
            by_beta[size_t(__builtin_popcountll(mask))] += fc.beta(mask << 1);

        for (const auto& [k, v] : by_beta) CHECK(Int(by_descents[k]) == v);
        CHECK(by_beta.size() >= by_descents.size());
    }
}

TEST_CASE("refined Whitney counts satisfy the transfer recursion") {
    for (int which = 0; which < 2; ++which) {
        GradedPoset p = which == 0 ? diamond() : boolean3();
        EdgeLabeling lam =
            which == 0 ? attach_labeling(p, diamond_labels()) : boolean3_labels(p);
        RankStatsResult rs = rank_stats(p, lam);
        REQUIRE(rs.uniform);
        int n = p.rank();

        for (int s = 0; s < p.n(); ++s) {
            if (s == p.top()) continue;
            int r = p.rank_of(s);
            auto direct = refined_whitney_direct(p, lam, s);

            // W_1^i = omega_r(i); W_{k+1}^i extends a chain ending with
            // index j at rank r+k-1 by any of the omega_{r+k}(i) covers with
            // index i, allowed exactly when i > des_{r+k-1}(j).
            std::vector<std::int64_t> W(rs.stats.ell[r]);
            for (int i = 0; i < rs.stats.ell[r]; ++i) {
                W[i] = rs.stats.omega[r][i];
                CHECK(direct[{1, i + 1}] == W[i]);
            }
            for (int k = 2; r + k <= n && k <= 6; ++k) {
                std::vector<std::int64_t> next(rs.stats.ell[r + k - 1]);
                for (int i = 0; i < rs.stats.ell[r + k - 1]; ++i) {
                    for (int j = 0; j < rs.stats.ell[r + k - 2]; ++j)
                        if (i + 1 > rs.stats.des[r + k - 2][j])
                            next[i] += W[j] * rs.stats.omega[r + k - 1][i];
                    CHECK(direct[{k, i + 1}] == next[i]);
                }
                W = std::move(next);
            }
        }
    }
}

TEST_CASE("restriction to intervals preserves the EL property") {
    for (int which = 0; which < 2; ++which) {
        GradedPoset p = which == 0 ? diamond() : boolean3();
        EdgeLabeling lam =
            which == 0 ? attach_labeling(p, diamond_labels()) : boolean3_labels(p);
        for (int s = 0; s < p.n(); ++s)
            for (int t = 0; t < p.n(); ++t) {
                if (s == t || !p.leq(s, t)) continue;
                IntervalPoset ip = interval_poset(p, s, t);
                EdgeLabeling sub = restrict_labeling(p, lam, ip);
                CHECK(verify_el(ip.poset, sub).ok);
            }
    }
}
