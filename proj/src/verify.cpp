#include "chowkit/verify.hpp"

#include <map>
#include <random>
#include <set>
#include <sstream>

#include "chowkit/chow.hpp"
#include "chowkit/error.hpp"
#include "chowkit/families.hpp"
#include "chowkit/realroots.hpp"
#include "chowkit/supersolvable.hpp"

namespace chowkit {

namespace {

struct Instance {
    std::string name;
    LabeledPoset lp;
};

std::vector<Instance> family_instances() {
    std::vector<Instance> out;
    auto add = [&](std::string name, LabeledPoset lp) {
        out.push_back({std::move(name), std::move(lp)});
    };
    for (int n = 1; n <= 6; ++n) add("boolean(" + std::to_string(n) + ")", boolean_lattice(n));
    for (int n = 3; n <= 8; ++n)
        for (int k = 2; k < n; ++k)
            add("uniform(" + std::to_string(k) + "," + std::to_string(n) + ")",
                uniform_lattice(k, n));
    for (int n = 2; n <= 6; ++n)
        add("partition(" + std::to_string(n) + ")", partition_lattice(n));
    for (int n = 2; n <= 4; ++n)
        for (int m = 1; m <= 3; ++m)
            add("dowling(" + std::to_string(n) + "," + std::to_string(m) + ")", dowling(n, m));
    for (auto [n, q] : {std::pair{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}})
        add("projective(" + std::to_string(n) + "," + std::to_string(q) + ")",
            projective(n, q));
    return out;
}

// The running example: a rank-3 poset whose bottom half is a diamond, with
// the standard labeling.
LabeledPoset labeled_diamond() {
    GradedPoset p = build_poset(
        {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 6}, {4, 6}, {5, 6}}, 7,
        {"0", "a", "b", "c", "d", "e", "1"});
    EdgeLabeling lam = attach_labeling(
        p, {{0, 1, 1}, {0, 2, 2}, {1, 3, 1}, {1, 4, 2}, {2, 4, 1}, {2, 5, 2},
            {3, 6, 1}, {4, 6, 1}, {5, 6, 1}});
    return {std::move(p), std::move(lam)};
}

GradedPoset random_graded(std::mt19937& rng) {
    std::vector<int> sizes{1};
    int n = 2 + int(rng() % 4); // rank 2..5
    for (int r = 1; r < n; ++r) sizes.push_back(1 + int(rng() % 4));
    sizes.push_back(1);

    std::vector<std::vector<int>> ids;
    int count = 0;
    for (int s : sizes) {
        ids.push_back({});
        for (int i = 0; i < s; ++i) ids.back().push_back(count++);
    }
    std::set<std::pair<int, int>> cov;
    for (size_t r = 0; r + 1 < ids.size(); ++r) {
        for (int u : ids[r]) cov.insert({u, ids[r + 1][rng() % ids[r + 1].size()]});
        for (int v : ids[r + 1]) cov.insert({ids[r][rng() % ids[r].size()], v});
        for (unsigned e = rng() % 4; e > 0; --e)
            cov.insert({ids[r][rng() % ids[r].size()], ids[r + 1][rng() % ids[r + 1].size()]});
    }
    return build_poset({cov.begin(), cov.end()}, count);
}

// Palindromic product of quadratics x^2 + bx + 1; b >= 3 keeps the roots
// real and the gamma coordinates full-degree, b = 1 introduces a complex
// conjugate pair.
IntPoly random_palindromic(std::mt19937& rng, int half, int bmin, int bmax) {
    IntPoly f{1};
    for (int i = 0; i < half; ++i)
        f *= IntPoly{1, bmin + int(rng() % (bmax - bmin + 1)), 1};
    return f;
}

bool real_rooted_nonpos(const IntPoly& f) {
    RootCertificate c = certify_real_rooted_nonpositive(f);
    return c.all_real && c.all_nonpositive;
}

// Collects failure witnesses for one acceptance criterion.
struct Critic {
    std::string name;
    std::vector<std::string> fails;

    explicit Critic(std::string n) : name(std::move(n)) {}
    void expect(bool ok, const std::string& what) {
        if (!ok) fails.push_back(what);
    }
    CheckResult done() const {
        CheckResult r;
        r.name = name;
        r.pass = fails.empty();
        std::ostringstream os;
        for (size_t i = 0; i < fails.size() && i < 5; ++i)
            os << (i ? "; " : "") << fails[i];
        if (fails.size() > 5) os << "; and " << fails.size() - 5 << " more";
        r.detail = os.str();
        return r;
    }
};

CheckResult criterion_golden(bool extended, const GoldenTable& golden) {
    Critic c("1. type-B Dowling golden values");
    for (const auto& [n, coeffs] : golden) {
        if (n >= 7 && !extended) continue;
        IntPoly got = chow_poly(dowling(n, 2).poset, ChowMethod::flag);
        if (got.coeffs() != coeffs) {
            std::ostringstream os;
            os << "dowling(" << n << ",2): computed " << got.str() << ", expected [";
            for (size_t i = 0; i < coeffs.size(); ++i)
                os << (i ? ", " : "") << coeffs[i].get_str();
            os << "]";
            c.expect(false, os.str());
        }
    }
    return c.done();
}

CheckResult criterion_methods(const std::vector<Instance>& fam,
                              const std::vector<GradedPoset>& randoms) {
    Critic c("2. method cross-validation");
    auto check = [&](const std::string& name, const GradedPoset& p) {
        IntPoly cf = chow_poly(p, ChowMethod::flag);
        c.expect(chow_poly(p, ChowMethod::recursion) == cf,
                 name + ": chow recursion vs flag");
        IntPoly af = aug_chow_poly(p, AugChowMethod::flag);
        c.expect(aug_chow_poly(p, AugChowMethod::sum) == af, name + ": aug sum vs flag");
        c.expect(aug_chow_poly(p, AugChowMethod::adjoin) == af,
                 name + ": aug adjoin vs flag");
    };
    for (const auto& inst : fam) check(inst.name, inst.lp.poset);
    for (size_t i = 0; i < randoms.size(); ++i)
        check("random#" + std::to_string(i), randoms[i]);
    return c.done();
}

CheckResult criterion_duality(const std::vector<Instance>& fam,
                              const std::vector<GradedPoset>& randoms) {
    Critic c("3. duality identities");
    auto check = [&](const std::string& name, const GradedPoset& p) {
        GradedPoset d = dual(p);
        c.expect(chow_poly(d) == aug_chow_poly(truncate(p, 1)),
                 name + ": chow of dual vs aug chow of truncation");
        c.expect(aug_chow_poly(d) == aug_chow_poly(p), name + ": aug chow of dual");
    };
    for (const auto& inst : fam) check(inst.name, inst.lp.poset);
    for (size_t i = 0; i < randoms.size(); ++i)
        check("random#" + std::to_string(i), randoms[i]);
    return c.done();
}

CheckResult criterion_real_rooted(const std::vector<Instance>& fam) {
    Critic c("4. exact real-rootedness");
    auto check = [&](const std::string& name, const GradedPoset& p) {
        c.expect(real_rooted_nonpos(chow_poly(p)), name + ": chow");
        c.expect(real_rooted_nonpos(aug_chow_poly(p)), name + ": aug chow");
        c.expect(real_rooted_nonpos(order_complex_polys(p).h), name + ": order-complex h");
    };
    for (const auto& inst : fam) check(inst.name, inst.lp.poset);
    for (const char* which : {"dowling", "projective"}) {
        GradedPoset p = which[0] == 'd' ? dowling(3, 2).poset : projective(3, 2).poset;
        int n = p.rank();
        for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
            std::vector<int> S;
            for (int r = 1; r <= n - 1; ++r)
                if (mask & (1u << (r - 1))) S.push_back(r);
            std::string tag = std::string(which) + " selection mask " + std::to_string(mask);
            check(tag, rank_select(p, S));
        }
    }
    return c.done();
}

CheckResult criterion_battery(const std::vector<Instance>& fam) {
    Critic c("5. interlacing battery");
    for (const auto& inst : fam) {
        BatteryReport rep = interlacing_battery(inst.lp.poset, inst.lp.labeling);
        for (const auto& chk : rep.checks)
            c.expect(chk.pass, inst.name + ": " + chk.name);
    }
    return c.done();
}

CheckResult criterion_refinements(const std::vector<Instance>& fam) {
    Critic c("6. refinement recursions and the interlacing grid");
    for (const auto& inst : fam) {
        const auto& p = inst.lp.poset;
        const auto& lam = inst.lp.labeling;
        GammaRefinement ge = gamma_refined(p, lam, RefineMethod::enumerate);
        GammaRefinement gr = gamma_refined(p, lam, RefineMethod::recurse);
        bool same = ge.ascent == gr.ascent && ge.descent == gr.descent && ge.all == gr.all;
        c.expect(same, inst.name + ": gamma_refined enumerate vs recurse");

        auto he = h_refined(p, lam, RefineMethod::enumerate);
        auto hr = h_refined(p, lam, RefineMethod::recurse);
        bool hsame = he.size() == hr.size();
        for (size_t k = 0; hsame && k < he.size(); ++k) hsame = he[k].h == hr[k].h;
        c.expect(hsame, inst.name + ": h_refined enumerate vs recurse");

        size_t ell = gr.all.size();
        for (size_t i = 0; i < ell; ++i)
            for (size_t j = 0; j < ell; ++j) {
                if (i < j) {
                    c.expect(certify_interlacing(gr.ascent[i], gr.ascent[j]),
                             inst.name + ": ascent row");
                    c.expect(certify_interlacing(gr.all[i], gr.all[j]),
                             inst.name + ": middle row");
                    c.expect(certify_interlacing(gr.descent[i], gr.descent[j]),
                             inst.name + ": descent row");
                }
                if (i <= j) {
                    c.expect(certify_interlacing(gr.ascent[i], gr.all[j]),
                             inst.name + ": ascent to middle");
                    c.expect(certify_interlacing(gr.all[i], gr.descent[j]),
                             inst.name + ": middle to descent");
                }
                c.expect(certify_interlacing(gr.ascent[i], gr.descent[j]),
                         inst.name + ": ascent to descent");
            }
    }
    return c.done();
}

CheckResult criterion_micro_examples() {
    Critic c("7. worked micro-examples");

    LabeledPoset dia = labeled_diamond();
    RankStatsResult rs = rank_stats(dia.poset, dia.labeling);
    c.expect(rs.uniform, "diamond example is rank-uniform");
    if (rs.uniform)
        for (int r : {0, 1}) {
            c.expect(rs.stats.omega[r] == std::vector<int>{1, 1},
                     "diamond widths at rank " + std::to_string(r));
            c.expect(rs.stats.des[r] == std::vector<int>{0, 1},
                     "diamond descents at rank " + std::to_string(r));
        }

    LabeledPoset d22 = dowling(2, 2);
    RankStatsResult ds = rank_stats(d22.poset, d22.labeling);
    c.expect(ds.uniform && ds.stats.omega[0] == std::vector<int>{1, 3},
             "dowling(2,2) bottom widths (1,3)");
    c.expect(ds.uniform && ds.stats.des[0] == std::vector<int>{0, 1},
             "dowling(2,2) bottom descents (0,1)");

    // uniform matroids: unit widths and des(i) = i - 1 on the first n-k
    // label indices, at the ranks where several covers remain
    for (auto [k, n] : {std::pair{2, 4}, {3, 5}, {3, 6}}) {
        LabeledPoset u = uniform_lattice(k, n);
        RankStatsResult us = rank_stats(u.poset, u.labeling);
        std::string tag = "uniform(" + std::to_string(k) + "," + std::to_string(n) + ")";
        c.expect(us.uniform, tag + " rank-uniform");
        if (!us.uniform) continue;
        for (int r = 0; r <= k - 2; ++r)
            for (int i = 1; i <= n - k; ++i) {
                c.expect(us.stats.omega[r][i - 1] == 1,
                         tag + " width 1 at rank " + std::to_string(r));
                // one rank below the coatoms only a single label remains
                // above each cover, which caps the descent count at 1
                if (r <= k - 3)
                    c.expect(us.stats.des[r][i - 1] == i - 1,
                             tag + " des(i)=i-1 at rank " + std::to_string(r));
            }
    }
    return c.done();
}

CheckResult criterion_negative_controls() {
    Critic c("8. negative controls");

    LabeledPoset np = flats_from_points({2, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}}});
    RankUniformResult ru = is_rank_uniform(np.poset);
    c.expect(!ru.uniform, "near-pencil should not be rank-uniform");
    c.expect(!ru.uniform && np.poset.rank_of(ru.witness_a) == 1 &&
                 np.poset.rank_of(ru.witness_b) == 1,
             "near-pencil witness should be a pair of atoms");

    bool not_ss = false;
    try {
        umel_from_supersolvable(uniform_lattice(3, 5).poset);
    } catch (const error& e) {
        not_ss = e.code() == errc::NotSupersolvable;
    }
    c.expect(not_ss, "uniform(3,5) should fail supersolvability");

    // diamond with the two labels above one atom swapped
    GradedPoset p = build_poset(
        {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 6}, {4, 6}, {5, 6}}, 7);
    EdgeLabeling bad = attach_labeling(
        p, {{0, 1, 1}, {0, 2, 2}, {1, 3, 1}, {1, 4, 2}, {2, 4, 2}, {2, 5, 1},
            {3, 6, 1}, {4, 6, 1}, {5, 6, 1}});
    c.expect(!verify_el(p, bad).ok, "perturbed diamond labeling should fail EL");

    RootCertificate rc = certify_real_rooted_nonpositive(IntPoly{1, 1, 1});
    c.expect(!rc.all_real, "x^2+x+1 should fail real-rootedness");

    bool tn_fails = false;
    try {
        tn_fails = !tn_check(partition_lattice(4).poset);
    } catch (const error& e) {
        tn_fails = e.code() == errc::NotLowerRankUniform;
    }
    c.expect(tn_fails, "partition(4) should fail the total-nonnegativity check");
    return c.done();
}

CheckResult criterion_properties(const std::vector<Instance>& fam, std::uint64_t seed) {
    Critic c("9. property suites");
    std::mt19937 rng(static_cast<std::uint32_t>(seed ^ 0x9e3779b9u));

    // flag alpha/beta inclusion-exclusion
    std::vector<std::pair<std::string, GradedPoset>> posets;
    posets.push_back({"boolean(5)", boolean_lattice(5).poset});
    posets.push_back({"dowling(3,2)", dowling(3, 2).poset});
    posets.push_back({"projective(3,2)", projective(3, 2).poset});
    posets.push_back({"partition(5)", partition_lattice(5).poset});
    for (int i = 0; i < 5; ++i)
        posets.push_back({"random#" + std::to_string(i), random_graded(rng)});
    for (const auto& [name, p] : posets) {
        FlagCache fc(p);
        int bits = std::max(p.rank() - 1, 0);
        for (std::uint64_t s = 0; s < (1ull << bits); ++s) {
            std::uint64_t smask = s << 1;
            Int sum = 0;
            for (std::uint64_t t = smask;; t = (t - 1) & smask) {
                sum += fc.beta(t);
                if (t == 0) break;
            }
            c.expect(fc.alpha(smask) == sum, name + ": alpha != sum of beta over subsets");
        }
    }

    // descent histogram equals the flag h-vector on every EL family instance
    for (const auto& inst : fam) {
        const auto& p = inst.lp.poset;
        if (p.n() > 5000 || count_max_chains(p, p.bottom(), p.top()) > 100000) continue;
        std::map<std::uint64_t, Int> hist;
        for (const auto& chain : max_chains(p, p.bottom(), p.top())) {
            std::uint64_t mask = 0;
            for (int d : chain_descent_set(p, inst.lp.labeling, chain)) mask |= 1ull << d;
            hist[mask] += 1;
        }
        FlagCache fc(p);
        int bits = std::max(p.rank() - 1, 0);
        for (std::uint64_t s = 0; s < (1ull << bits); ++s) {
            Int want = fc.beta(s << 1);
            Int got = hist.count(s << 1) ? hist[s << 1] : Int(0);
            c.expect(want == got, inst.name + ": descent counts vs flag h-vector");
        }
    }

    // Obreschkoff: positive combinations of certified pairs stay real-rooted
    std::vector<std::pair<IntPoly, IntPoly>> pairs;
    for (const char* name : {"boolean(4)", "uniform(3,5)", "dowling(3,2)", "projective(3,2)"})
        for (const auto& inst : fam)
            if (inst.name == name) {
                IntPoly a = gamma_of(inst.lp.poset, false), b = gamma_of(inst.lp.poset, true);
                if (certify_interlacing(a, b)) pairs.push_back({a, b});
            }
    for (auto& [f, g] : pairs)
        for (int trial = 0; trial < 100; ++trial) {
            Int a = 1 + rng() % 10, b = 1 + rng() % 10;
            c.expect(real_rooted_nonpos(f * a + g * b),
                     "combination of a certified pair is not real-rooted");
        }

    // gamma round-trip and the interlacing equivalence of the gamma transform
    for (int trial = 0; trial < 200; ++trial) {
        int half = 2 + int(rng() % 2);
        IntPoly f = random_palindromic(rng, half, 1, 12);
        int d = f.degree();
        IntPoly gf = gamma_extract(f, d);
        c.expect(gamma_expand(gf, d) == f, "gamma round trip failed: " + f.str());
        c.expect(real_rooted_nonpos(f) == real_rooted_nonpos(gf),
                 "gamma real-rootedness equivalence failed: " + f.str());
    }
    for (int trial = 0; trial < 200; ++trial) {
        int half = 2 + int(rng() % 2);
        IntPoly f = random_palindromic(rng, half, 3, 12);
        IntPoly g = IntPoly{1, 1} * random_palindromic(rng, half, 3, 12);
        bool direct = certify_interlacing(f, g);
        bool via_gamma =
            certify_interlacing(gamma_extract(f, f.degree()), gamma_extract(g, g.degree()));
        c.expect(direct == via_gamma,
                 "gamma interlacing equivalence failed: " + f.str() + " vs " + g.str());
    }
    return c.done();
}

} // namespace

const GoldenTable& default_golden_table() {
    static const GoldenTable table = {
        {3, {1, 14, 1}},
        {4, {1, 99, 99, 1}},
        {5, {1, 622, 3162, 622, 1}},
        {6, {1, 4051, 65812, 65812, 4051, 1}},
        {7, {1, Int("28590"), Int("1205199"), Int("3724100"), Int("1205199"), Int("28590"),
             1}},
    };
    return table;
}

SuiteReport run_acceptance_suite(bool extended, std::uint64_t seed,
                                 const GoldenTable* golden) {
    std::vector<Instance> fam = family_instances();
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    std::vector<GradedPoset> randoms;
    for (int i = 0; i < 50; ++i) randoms.push_back(random_graded(rng));

    SuiteReport rep;
    rep.criteria.push_back(
        criterion_golden(extended, golden ? *golden : default_golden_table()));
    rep.criteria.push_back(criterion_methods(fam, randoms));
    rep.criteria.push_back(criterion_duality(fam, randoms));
    rep.criteria.push_back(criterion_real_rooted(fam));
    rep.criteria.push_back(criterion_battery(fam));
    rep.criteria.push_back(criterion_refinements(fam));
    rep.criteria.push_back(criterion_micro_examples());
    rep.criteria.push_back(criterion_negative_controls());
    rep.criteria.push_back(criterion_properties(fam, seed));
    for (const auto& cr : rep.criteria) rep.ok = rep.ok && cr.pass;
    return rep;
}

} // namespace chowkit
