#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chowkit/error.hpp"
#include "chowkit/families.hpp"
#include "chowkit/supersolvable.hpp"

#include <algorithm>

using namespace chowkit;

namespace {

int by_name(const GradedPoset& p, const std::string& name) {
    for (int u = 0; u < p.n(); ++u)
        if (p.name_of(u) == name) return u;
    REQUIRE(false);
    return -1;
}

// 0 < a,b < x,y < 1: a and b have two minimal upper bounds.
GradedPoset bowtie() {
    return build_poset({{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}}, 6,
                       {"0", "a", "b", "x", "y", "1"});
}

GradedPoset chain_poset(int len) {
    std::vector<std::pair<int, int>> cov;
    for (int i = 0; i < len; ++i) cov.push_back({i, i + 1});
    return build_poset(cov, len + 1);
}

} // namespace

TEST_CASE("lattice operations and validation") {
    GradedPoset b3 = boolean_lattice(3).poset;
    LatticeOps ops(b3);
    CHECK(ops.join(1, 2) == 3);  // {1} v {2} = {1,2}
    CHECK(ops.meet(3, 5) == 1);  // {1,2} ^ {1,3} = {1}
    CHECK(ops.join(0, 6) == 6);
    CHECK(ops.meet(7, 2) == 2);

    try {
        LatticeOps bad{bowtie()};
        FAIL("expected NotALattice");
    } catch (const error& e) {
        CHECK(e.code() == errc::NotALattice);
    }
}

TEST_CASE("modular elements") {
    GradedPoset b4 = boolean_lattice(4).poset;
    LatticeOps ops(b4);
    for (int u = 0; u < b4.n(); ++u) CHECK(is_modular_element(b4, ops, u));

    GradedPoset u35 = uniform_lattice(3, 5).poset;
    LatticeOps uops(u35);
    CHECK(is_modular_element(u35, uops, u35.bottom()));
    CHECK(is_modular_element(u35, uops, u35.top()));
    CHECK(is_modular_element(u35, uops, by_name(u35, "1")));
    CHECK_FALSE(is_modular_element(u35, uops, by_name(u35, "1,2")));
    // no rank-2 flat is modular: {a,b} and a disjoint {c,d} violate the pair
    for (int u : u35.levels()[2]) CHECK_FALSE(is_modular_element(u35, uops, u));
}

TEST_CASE("modular maximal chain search") {
    auto prefix = modular_maximal_chain(boolean_lattice(3).poset);
    REQUIRE(prefix.has_value());
    CHECK(prefix->elements.size() == 4);

    GradedPoset p3 = partition_lattice(3).poset;
    auto c3 = modular_maximal_chain(p3);
    REQUIRE(c3.has_value());
    CHECK(c3->elements.front() == p3.bottom());
    CHECK(c3->elements.back() == p3.top());

    CHECK_FALSE(modular_maximal_chain(uniform_lattice(3, 5).poset).has_value());
}

TEST_CASE("mcnamara labeling examples") {
    // boolean(3) with the prefix chain gives the added-element labels
    LabeledPoset b3 = boolean_lattice(3);
    ModularChain prefix{{0, 1, 3, 7}};
    EdgeLabeling lam = mcnamara_labeling(b3.poset, prefix);
    CHECK(lam.by_cover == b3.labeling.by_cover);

    // partition(3) = dowling(2,1) over {0,1,2}; take the chain through the
    // atom merging 0 and 1.
    GradedPoset p3 = partition_lattice(3).poset;
    int a = by_name(p3, "0 1|2");
    ModularChain chain{{p3.bottom(), a, p3.top()}};
    EdgeLabeling lm = mcnamara_labeling(p3, chain);
    int b = by_name(p3, "0 2|1");
    CHECK(lm.label(p3, p3.bottom(), b) == 2);
    CHECK(lm.label(p3, b, p3.top()) == 1);

    // a chain lattice with itself as the modular chain
    GradedPoset ch = chain_poset(4);
    ModularChain self{{0, 1, 2, 3, 4}};
    EdgeLabeling lc = mcnamara_labeling(ch, self);
    for (int i = 0; i < 4; ++i) CHECK(lc.label(ch, i, i + 1) == i + 1);

    // invalid chains
    CHECK_THROWS_AS(mcnamara_labeling(b3.poset, ModularChain{{0, 7}}), error);
    GradedPoset u35 = uniform_lattice(3, 5).poset;
    ModularChain through_12{{u35.bottom(), by_name(u35, "1"), by_name(u35, "1,2"), u35.top()}};
    CHECK_THROWS_AS(mcnamara_labeling(u35, through_12), error); // {1,2} is not modular
}

TEST_CASE("umel_from_supersolvable") {
    for (auto lp : {boolean_lattice(4), dowling(3, 2), projective(3, 2), partition_lattice(4)}) {
        SupersolvableResult r = umel_from_supersolvable(lp.poset);
        CHECK(r.report.ok);
        CHECK(r.des_matches_ind);
        CHECK(verify_el(lp.poset, r.labeling).ok);
    }

    try {
        umel_from_supersolvable(uniform_lattice(3, 5).poset);
        FAIL("expected NotSupersolvable");
    } catch (const error& e) {
        CHECK(e.code() == errc::NotSupersolvable);
    }

    // near-pencil is a geometric lattice but not rank-uniform
    PointConfig np{2, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}}};
    try {
        umel_from_supersolvable(flats_from_points(np).poset);
        FAIL("expected NotRankUniform");
    } catch (const error& e) {
        CHECK(e.code() == errc::NotRankUniform);
    }

    CHECK_THROWS_AS(umel_from_supersolvable(bowtie()), error);
}

TEST_CASE("diamond isomorphism for modular elements") {
    for (auto lp : {boolean_lattice(3), dowling(2, 2), partition_lattice(4)}) {
        const GradedPoset& p = lp.poset;
        LatticeOps ops(p);
        for (int s = 0; s < p.n(); ++s) {
            if (!is_modular_element(p, ops, s)) continue;
            for (int t = 0; t < p.n(); ++t) {
                // join with t maps [s^t, s] onto [t, s v t], meet with s back
                int lo = ops.meet(s, t), hi = ops.join(s, t);
                std::vector<int> image;
                for (int u = 0; u < p.n(); ++u) {
                    if (!p.leq(lo, u) || !p.leq(u, s)) continue;
                    int v = ops.join(u, t);
                    CHECK(p.leq(t, v));
                    CHECK(p.leq(v, hi));
                    CHECK(ops.meet(v, s) == u); // injective with explicit inverse
                    image.push_back(v);
                }
                std::sort(image.begin(), image.end());
                std::vector<int> target;
                for (int v = 0; v < p.n(); ++v)
                    if (p.leq(t, v) && p.leq(v, hi)) target.push_back(v);
                CHECK(image == target);
                // order preserving in both directions on the interval
                for (int u1 : image)
                    for (int u2 : image)
                        CHECK(p.leq(ops.meet(u1, s), ops.meet(u2, s)) == p.leq(u1, u2));
            }
        }
    }
}

TEST_CASE("heredity of the modular chain in upper intervals") {
    for (auto lp : {boolean_lattice(3), dowling(3, 2)}) {
        const GradedPoset& p = lp.poset;
        LatticeOps ops(p);
        auto chain = modular_maximal_chain(p);
        REQUIRE(chain.has_value());
        for (int s = 0; s < p.n(); ++s) {
            std::vector<int> joined;
            for (int m : chain->elements) {
                int v = ops.join(s, m);
                if (joined.empty() || joined.back() != v) joined.push_back(v);
            }
            // after deduplication: a maximal chain of [s, top] ...
            REQUIRE(joined.front() == s);
            REQUIRE(joined.back() == p.top());
            for (size_t i = 0; i + 1 < joined.size(); ++i)
                CHECK(p.cover_index(joined[i], joined[i + 1]) >= 0);
            // ... whose members are modular in the interval
            IntervalPoset up = interval_poset(p, s, p.top());
            LatticeOps iops(up.poset);
            for (int v : joined) {
                int local = int(std::find(up.elems.begin(), up.elems.end(), v) -
                                up.elems.begin());
                CHECK(is_modular_element(up.poset, iops, local));
            }
        }
    }
}
