#include "chowkit/chow.hpp"

#include <algorithm>
#include <cstdint>

#include "chowkit/error.hpp"
#include "chowkit/realroots.hpp"

namespace chowkit {

namespace {

// Rank masks (bit k = rank k) of the subsets of {lo..hi} with no two
// consecutive members.
void stable_masks(int lo, int hi, std::uint64_t cur, std::vector<std::uint64_t>& out) {
    if (lo > hi) {
        out.push_back(cur);
        return;
    }
    stable_masks(lo + 1, hi, cur, out);
    stable_masks(lo + 2, hi, cur | (1ull << lo), out);
}

IntPoly chow_flag(const GradedPoset& p, bool augmented) {
    int n = p.rank();
    if (n == 0) return IntPoly{1};
    FlagCache fc(p);
    std::vector<std::uint64_t> masks;
    stable_masks(augmented ? 1 : 2, n - 1, 0, masks);
    int d = augmented ? n : n - 1;
    IntPoly out;
    for (std::uint64_t mask : masks) {
        int k = __builtin_popcountll(mask);
        out += one_plus_x_pow(d - 2 * k).times_x(k) * fc.beta(mask);
    }
    return out;
}

// H[u] = Chow polynomial of the interval [u, top], by the incidence-algebra
// recursion over the reduced characteristic polynomials.
std::vector<IntPoly> upper_chow_table(const GradedPoset& p) {
    std::vector<IntPoly> H(p.n());
    H[p.top()] = IntPoly{1};
    const auto& levels = p.levels();
    for (int r = p.rank() - 1; r >= 0; --r)
        for (int u : levels[r])
            for (int t = 0; t < p.n(); ++t)
                if (t != u && p.leq(u, t)) H[u] += reduced_char_poly(p, u, t) * H[t];
    return H;
}

// Termwise prefix p[i] = sum of v[0..i-1] and suffix s[i] = sum of v[i..].
struct PolySums {
    std::vector<IntPoly> prefix, suffix;
    explicit PolySums(const std::vector<IntPoly>& v) {
        size_t m = v.size();
        prefix.assign(m + 1, IntPoly());
        suffix.assign(m + 1, IntPoly());
        for (size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] + v[i];
        for (size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] + v[i];
    }
};

void require_el(const GradedPoset& p, const EdgeLabeling& lam) {
    ELResult el = verify_el(p, lam);
    if (!el.ok) throw error(errc::NotEL, el.reason);
}

RankLabelStats require_umel(const GradedPoset& p, const EdgeLabeling& lam) {
    UmelReport rep = is_umel(p, lam);
    if (!rep.ok)
        throw error(errc::NotUMEL, "failed at stage " + rep.stage + ": " + rep.detail);
    return rep.stats.stats;
}

// Per-cover chain counts over the upper interval of the cover's top end,
// weighted by y^descents. For cover c = (u, v) with label L, asc[c] sums the
// continuations where the junction at v is an ascent (or v is the top),
// desc[c] those where it is a descent; ndd restricts to chains without
// double descents (a descent junction may only be followed by an ascent).
struct CoverDP {
    std::vector<IntPoly> asc, desc;
};

CoverDP cover_chain_dp(const GradedPoset& p, const EdgeLabeling& lam, bool ndd) {
    CoverDP dp;
    dp.asc.assign(p.covers().size(), IntPoly());
    dp.desc.assign(p.covers().size(), IntPoly());
    IntPoly y{0, 1};
    const auto& levels = p.levels();
    for (int r = p.rank(); r >= 1; --r)
        for (int v : levels[r]) {
            // outgoing covers of v sorted by label, with running sums
            std::vector<std::pair<int, int>> out; // (label, cover id)
            for (int cid : p.up_cover_ids(v)) out.push_back({lam.label_of_cover(cid), cid});
            std::sort(out.begin(), out.end());
            std::vector<IntPoly> a(out.size()), tot(out.size());
            for (size_t i = 0; i < out.size(); ++i) {
                a[i] = dp.asc[out[i].second];
                tot[i] = a[i] + dp.desc[out[i].second];
            }
            // after a descent junction only ascent continuations remain in
            // the no-double-descent count; unrestricted counts take all
            PolySums sum_after_desc(ndd ? a : tot), sum_all(tot);
            for (int cid : p.down_cover_ids(v)) {
                int L = lam.label_of_cover(cid);
                if (v == p.top()) {
                    dp.asc[cid] = IntPoly{1};
                    continue;
                }
                size_t k = std::lower_bound(out.begin(), out.end(), std::pair<int, int>{L, -1}) -
                           out.begin();
                dp.asc[cid] = sum_all.suffix[k];
                dp.desc[cid] = y * sum_after_desc.prefix[k];
            }
        }
    return dp;
}

Int minor_det(std::vector<std::vector<Int>> m) {
    // Bareiss fraction-free elimination; all divisions are exact.
    int k = static_cast<int>(m.size());
    Int sign = 1, prev = 1;
    for (int i = 0; i < k - 1; ++i) {
        if (m[i][i] == 0) {
            int swap_row = -1;
            for (int r = i + 1; r < k; ++r)
                if (m[r][i] != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(m[i], m[swap_row]);
            sign = -sign;
        }
        for (int r = i + 1; r < k; ++r)
            for (int c = i + 1; c < k; ++c)
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev;
        prev = m[i][i];
    }
    return sign * m[k - 1][k - 1];
}

} // namespace

IntPoly chow_poly(const GradedPoset& p, ChowMethod method) {
    if (method == ChowMethod::flag) return chow_flag(p, false);
    return upper_chow_table(p)[p.bottom()];
}

IntPoly aug_chow_poly(const GradedPoset& p, AugChowMethod method) {
    switch (method) {
    case AugChowMethod::flag:
        return chow_flag(p, true);
    case AugChowMethod::adjoin:
        return chow_flag(add_bottom(p), false);
    case AugChowMethod::sum: {
        std::vector<IntPoly> H = upper_chow_table(p);
        IntPoly out;
        for (int u = 0; u < p.n(); ++u) out += H[u].times_x(p.rank_of(u));
        return out;
    }
    }
    return {};
}

IntPoly gamma_of(const GradedPoset& p, bool augmented) {
    int n = p.rank();
    if (n == 0) return IntPoly{1};
    return gamma_extract(chow_flag(p, augmented), augmented ? n : n - 1);
}

GammaRefinement gamma_refined(const GradedPoset& p, const EdgeLabeling& lam,
                              RefineMethod method) {
    GammaRefinement out;
    out.n = p.rank();
    if (out.n == 0) return out;

    if (method == RefineMethod::enumerate) {
        require_el(p, lam);
        CoverDP dp = cover_chain_dp(p, lam, true);
        LocalStats bottom = local_stats(p, lam, p.bottom());
        size_t ell = bottom.labels.size();
        out.ascent.assign(ell, IntPoly());
        out.descent.assign(ell, IntPoly());
        for (const CoverStat& c : bottom.covers) {
            out.ascent[c.ind - 1] += dp.asc[c.cover_id];
            out.descent[c.ind - 1] += dp.desc[c.cover_id];
        }
    } else {
        RankLabelStats stats = require_umel(p, lam);
        // walk coranks bottom-up: corank 1 has a single label, weight 1
        std::vector<IntPoly> asc{IntPoly{1}}, all{IntPoly{1}};
        IntPoly y{0, 1};
        for (int r = out.n - 2; r >= 0; --r) {
            int ell = stats.ell[r];
            std::vector<IntPoly> nasc(ell), ndesc(ell);
            PolySums sum_asc(asc), sum_all(all);
            for (int i = 0; i < ell; ++i) {
                int des = stats.des[r][i];
                Int w = stats.omega[r][i];
                nasc[i] = sum_all.suffix[des] * w;
                ndesc[i] = y * sum_asc.prefix[des] * w;
            }
            asc = std::move(nasc);
            all.resize(ell);
            for (int i = 0; i < ell; ++i) all[i] = asc[i] + ndesc[i];
            if (r == 0) out.descent = std::move(ndesc);
        }
        if (out.n == 1) out.descent.assign(1, IntPoly());
        out.ascent = std::move(asc);
    }

    out.all.resize(out.ascent.size());
    for (size_t i = 0; i < out.ascent.size(); ++i) out.all[i] = out.ascent[i] + out.descent[i];
    return out;
}

std::vector<HRefinement> h_refined(const GradedPoset& p, const EdgeLabeling& lam,
                                   RefineMethod method) {
    int n = p.rank();
    std::vector<HRefinement> out;
    if (n == 0) return out;

    if (method == RefineMethod::enumerate) {
        require_el(p, lam);
        CoverDP dp = cover_chain_dp(p, lam, false);
        for (int k = 1; k <= n; ++k) {
            int rep = p.levels()[n - k].front();
            LocalStats ls = local_stats(p, lam, rep);
            HRefinement hr;
            hr.corank = k;
            hr.h.assign(ls.labels.size(), IntPoly());
            for (const CoverStat& c : ls.covers)
                hr.h[c.ind - 1] += dp.asc[c.cover_id] + dp.desc[c.cover_id];
            out.push_back(std::move(hr));
        }
    } else {
        RankLabelStats stats = require_umel(p, lam);
        std::vector<IntPoly> h{IntPoly{1}};
        out.push_back({1, h});
        IntPoly y{0, 1};
        for (int k = 2; k <= n; ++k) {
            int r = n - k;
            int ell = stats.ell[r];
            std::vector<IntPoly> nh(ell);
            PolySums sums(h);
            for (int i = 0; i < ell; ++i) {
                int des = stats.des[r][i];
                nh[i] = (y * sums.prefix[des] + sums.suffix[des]) * Int(stats.omega[r][i]);
            }
            h = std::move(nh);
            out.push_back({k, h});
        }
    }
    return out;
}

std::pair<IntPoly, IntPoly> rank_selected_gamma(const GradedPoset& p,
                                                const EdgeLabeling& lam,
                                                const std::vector<int>& S) {
    require_el(p, lam);
    int n = p.rank();
    std::vector<int> s(S);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (int r : s)
        if (r < 1 || r > n - 1) throw error(errc::SchemaError, "selected rank out of range");

    FlagCache fc(p);
    IntPoly nonaug, aug;
    int m = static_cast<int>(s.size());
    // choose positions in s with no two adjacent; position 0 is min S
    for (std::uint32_t pick = 0; pick < (1u << m); ++pick) {
        if (pick & (pick << 1)) continue;
        std::uint64_t mask = 0;
        for (int i = 0; i < m; ++i)
            if (pick & (1u << i)) mask |= 1ull << s[i];
        IntPoly term = IntPoly::monomial(fc.beta(mask), __builtin_popcountll(mask));
        aug += term;
        if (!(pick & 1)) nonaug += term;
    }
    return {nonaug, aug};
}

BatteryReport interlacing_battery(const GradedPoset& p, const EdgeLabeling& lam) {
    RankLabelStats stats = require_umel(p, lam);
    BatteryReport out;
    out.ok = true;
    auto add = [&](const std::string& name, bool pass) {
        out.checks.push_back({name, pass});
        out.ok = out.ok && pass;
    };

    int n = p.rank();
    IntPoly gbar = gamma_of(p, false), gaug = gamma_of(p, true);
    add("gamma(chow) interlaces gamma(aug chow)", certify_interlacing(gbar, gaug));

    // atom contractions; the fourth relation needs every second label above
    // the bottom to close a descent, which holds for atomic lattices but is
    // checked rather than assumed
    bool atom_case = n >= 2 && stats.des[0].back() == stats.ell[1];
    for (int a : p.up(p.bottom())) {
        IntervalPoset up = interval_poset(p, a, p.top());
        IntPoly ga = gamma_of(up.poset, true);
        add("gamma(aug chow of [" + p.name_of(a) + ", top]) interlaces gamma(chow)",
            certify_interlacing(ga, gbar));
        add("gamma(aug chow of [" + p.name_of(a) + ", top]) interlaces gamma(aug chow)",
            certify_interlacing(ga, gaug));
        if (atom_case)
            add("gamma(chow of [" + p.name_of(a) + ", top]) interlaces gamma(chow)",
                certify_interlacing(gamma_of(up.poset, false), gbar));
    }

    GradedPoset d = dual(p);
    add("chow of the dual equals aug chow of the truncation",
        chow_poly(d) == aug_chow_poly(truncate(p, 1)));
    add("aug chow of the dual equals aug chow", aug_chow_poly(d) == aug_chow_poly(p));
    return out;
}

bool tn_check(const GradedPoset& p) {
    int n = p.rank();
    std::vector<std::vector<Int>> M(n + 1, std::vector<Int>(n + 1, 0));
    for (int r = 0; r <= n; ++r) {
        int rep = -1;
        for (int u : p.levels()[r]) {
            std::vector<Int> profile(n + 1, 0);
            for (int v = 0; v < p.n(); ++v)
                if (p.leq(v, u)) profile[p.rank_of(v)] += 1;
            if (rep < 0) {
                rep = u;
                M[r] = profile;
            } else if (profile != M[r]) {
                throw error(errc::NotLowerRankUniform,
                            "elements (" + p.name_of(rep) + ", " + p.name_of(u) +
                                ") of rank " + std::to_string(r) +
                                " have different lower Whitney profiles");
            }
        }
    }

    int side = n + 1;
    for (std::uint32_t rows = 1; rows < (1u << side); ++rows)
        for (std::uint32_t cols = 1; cols < (1u << side); ++cols) {
            if (__builtin_popcount(rows) != __builtin_popcount(cols)) continue;
            std::vector<std::vector<Int>> sub;
            for (int i = 0; i < side; ++i) {
                if (!(rows & (1u << i))) continue;
                std::vector<Int> row;
                for (int j = 0; j < side; ++j)
                    if (cols & (1u << j)) row.push_back(M[i][j]);
                sub.push_back(std::move(row));
            }
            if (minor_det(std::move(sub)) < 0) return false;
        }
    return true;
}

} // namespace chowkit
