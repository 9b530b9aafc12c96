#include "chowkit/labeling.hpp"

#include <algorithm>
#include <climits>
#include <tuple>

#include "chowkit/error.hpp"

namespace chowkit {

namespace {

std::string pair_name(const GradedPoset& p, int lo, int hi) {
    return "(" + p.name_of(lo) + ", " + p.name_of(hi) + ")";
}

// Chain counts only need to distinguish zero, one, and many.
int cap_add(int a, int b) { return std::min(a + b, 2); }

// Up to `want` maximal chains of [s,t], optionally restricted to weakly
// increasing label sequences. Used only to build failure witnesses.
std::vector<std::vector<int>> witness_chains(const GradedPoset& p, const EdgeLabeling& lam,
                                             int s, int t, size_t want, bool increasing) {
    std::vector<std::vector<int>> out;
    std::vector<int> chain{s};
    auto dfs = [&](auto&& self, int u, long long floor) -> void {
        if (out.size() >= want) return;
        if (u == t) {
            out.push_back(chain);
            return;
        }
        for (int ci : p.up_cover_ids(u)) {
            int v = p.covers()[ci].second;
            long long l = lam.by_cover[ci];
            if ((increasing && l < floor) || !p.leq(v, t)) continue;
            chain.push_back(v);
            self(self, v, l);
            chain.pop_back();
        }
    };
    dfs(dfs, s, LLONG_MIN);
    return out;
}

// Distinct labels above t that are strictly smaller than `label`.
int descent_count(const GradedPoset& p, const EdgeLabeling& lam, int t, int label) {
    std::vector<int> above;
    for (int ci : p.up_cover_ids(t)) above.push_back(lam.by_cover[ci]);
    std::sort(above.begin(), above.end());
    above.erase(std::unique(above.begin(), above.end()), above.end());
    return int(std::lower_bound(above.begin(), above.end(), label) - above.begin());
}

struct ElemStats {
    int ell = 0;
    std::vector<int> omega;
    std::vector<int> des; // by label index; requires a consistent value per index
};

bool elem_stats(const GradedPoset& p, const EdgeLabeling& lam, int s, ElemStats& out,
                std::string& why) {
    LocalStats ls = local_stats(p, lam, s);
    out.ell = int(ls.labels.size());
    out.omega = ls.widths;
    out.des.assign(out.ell, -1);
    for (const auto& c : ls.covers) {
        int i = c.ind - 1;
        if (out.des[i] >= 0 && out.des[i] != c.des) {
            why = "element " + p.name_of(s) + " has covers with label index " +
                  std::to_string(c.ind) + " but different descent counts";
            return false;
        }
        out.des[i] = c.des;
    }
    return true;
}

RankStatsResult rank_stats_impl(const GradedPoset& p, const EdgeLabeling& lam) {
    RankStatsResult res;
    int n = p.rank();
    res.stats.ell.assign(n, 0);
    res.stats.omega.resize(n);
    res.stats.des.resize(n);
    for (int k = 0; k < n; ++k) {
        const auto& level = p.levels()[k];
        ElemStats ref;
        std::string why;
        for (size_t idx = 0; idx < level.size(); ++idx) {
            ElemStats es;
            if (!elem_stats(p, lam, level[idx], es, why)) {
                res.witness_a = res.witness_b = level[idx];
                res.reason = why;
                return res;
            }
            if (idx == 0) {
                ref = es;
            } else if (es.ell != ref.ell || es.omega != ref.omega || es.des != ref.des) {
                res.witness_a = level[0];
                res.witness_b = level[idx];
                res.reason = "rank " + std::to_string(k) + " elements " +
                             p.name_of(level[0]) + " and " + p.name_of(level[idx]) +
                             " have different label statistics";
                return res;
            }
        }
        res.stats.ell[k] = ref.ell;
        res.stats.omega[k] = ref.omega;
        res.stats.des[k] = ref.des;
    }
    res.uniform = true;
    return res;
}

} // namespace

int EdgeLabeling::label(const GradedPoset& p, int lo, int hi) const {
    int id = p.cover_index(lo, hi);
    if (id < 0) throw error(errc::NotACover, pair_name(p, lo, hi) + " is not a cover");
    return by_cover[id];
}

EdgeLabeling attach_labeling(const GradedPoset& p,
                             const std::vector<std::tuple<int, int, int>>& labels) {
    std::vector<int> lab(p.covers().size(), 0);
    std::vector<char> seen(p.covers().size(), 0);
    for (const auto& [lo, hi, l] : labels) {
        int id = p.cover_index(lo, hi);
        if (id < 0) throw error(errc::NotACover, pair_name(p, lo, hi) + " is not a cover");
        if (seen[id])
            throw error(errc::SchemaError, "cover " + pair_name(p, lo, hi) + " labeled twice");
        seen[id] = 1;
        lab[id] = l;
    }
    for (size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) {
            auto [lo, hi] = p.covers()[i];
            throw error(errc::MissingCover, "cover " + pair_name(p, lo, hi) + " has no label");
        }
    return EdgeLabeling{std::move(lab)};
}

EdgeLabeling restrict_labeling(const GradedPoset& parent, const EdgeLabeling& lam,
                               const IntervalPoset& ip) {
    std::vector<int> lab(ip.poset.covers().size(), 0);
    for (size_t c = 0; c < lab.size(); ++c) {
        auto [lo, hi] = ip.poset.covers()[c];
        int id = parent.cover_index(ip.elems[lo], ip.elems[hi]);
        if (id < 0)
            throw error(errc::NotACover,
                        "interval cover " + pair_name(ip.poset, lo, hi) + " missing in parent");
        lab[c] = lam.by_cover[id];
    }
    return EdgeLabeling{std::move(lab)};
}

ELResult verify_el(const GradedPoset& p, const EdgeLabeling& lam) {
    const int n = p.n();
    const auto& covers = p.covers();
    const int m = int(covers.size());

    // Pass 1: for each source s count, capped at two, the weakly increasing
    // chains from s into every element above it. State lives on cover edges:
    // cnt[c] = chains from s ending with cover c.
    std::vector<int> cnt(m, 0);
    for (int s = 0; s < n; ++s) {
        std::fill(cnt.begin(), cnt.end(), 0);
        for (int ci : p.up_cover_ids(s)) cnt[ci] = 1;
        for (int r = p.rank_of(s) + 1; r <= p.rank(); ++r) {
            for (int u : p.levels()[r]) {
                int total = 0;
                std::vector<std::pair<int, int>> in; // (label, count)
                for (int ci : p.down_cover_ids(u)) {
                    if (!cnt[ci]) continue;
                    in.emplace_back(lam.by_cover[ci], cnt[ci]);
                    total = cap_add(total, cnt[ci]);
                }
                if (p.leq(s, u) && total != 1) {
                    ELResult res;
                    res.lo = s;
                    res.hi = u;
                    if (total == 0) {
                        res.reason = "interval " + pair_name(p, s, u) +
                                     " has no weakly increasing maximal chain";
                        res.chains = witness_chains(p, lam, s, u, 2, false);
                    } else {
                        res.reason = "interval " + pair_name(p, s, u) +
                                     " has more than one weakly increasing maximal chain";
                        res.chains = witness_chains(p, lam, s, u, 2, true);
                    }
                    return res;
                }
                if (in.empty()) continue;
                std::sort(in.begin(), in.end());
                for (int co : p.up_cover_ids(u)) {
                    int bound = lam.by_cover[co], acc = 0;
                    for (const auto& [l, c] : in) {
                        if (l > bound) break;
                        acc = cap_add(acc, c);
                    }
                    cnt[co] = acc;
                }
            }
        }
    }

    // Pass 2: for each target t, check that the unique increasing chain of
    // every interval [s,t] is lexicographically minimal. lexseq[u] is the
    // minimal label sequence over all maximal chains of [u,t]; M[u] is the
    // largest label that can start a weakly increasing chain from u to t.
    std::vector<char> inD(n, 0);
    for (int t = 0; t < n; ++t) {
        std::vector<int> D;
        for (int u = 0; u < n; ++u)
            if (p.leq(u, t)) D.push_back(u);
        std::sort(D.begin(), D.end(),
                  [&](int a, int b) { return p.rank_of(a) > p.rank_of(b); });
        std::fill(inD.begin(), inD.end(), 0);
        for (int u : D) inD[u] = 1;

        std::vector<std::vector<int>> lexseq(n);
        std::vector<int> lexnext(n, -1);
        std::vector<long long> M(n, LLONG_MIN);
        M[t] = LLONG_MAX;
        for (int u : D) {
            if (u == t) continue;
            for (int ci : p.up_cover_ids(u)) {
                int w = covers[ci].second;
                if (!inD[w]) continue;
                long long l = lam.by_cover[ci];
                if (l <= M[w]) M[u] = std::max(M[u], l);
                bool better;
                if (lexnext[u] < 0)
                    better = true;
                else if (int(l) != lexseq[u][0])
                    better = int(l) < lexseq[u][0];
                else
                    better = std::lexicographical_compare(lexseq[w].begin(), lexseq[w].end(),
                                                          lexseq[u].begin() + 1, lexseq[u].end());
                if (better) {
                    lexseq[u].clear();
                    lexseq[u].push_back(int(l));
                    lexseq[u].insert(lexseq[u].end(), lexseq[w].begin(), lexseq[w].end());
                    lexnext[u] = ci;
                }
            }
        }

        for (int s : D) {
            if (s == t) continue;
            // Walk the unique increasing chain, always taking the smallest
            // feasible label; feasibility is exactly l <= M[next].
            std::vector<int> incseq, incelems{s};
            int u = s;
            long long floor = LLONG_MIN;
            bool complete = true;
            while (u != t) {
                int best_ci = -1;
                long long best_l = 0;
                for (int ci : p.up_cover_ids(u)) {
                    int w = covers[ci].second;
                    if (!inD[w]) continue;
                    long long l = lam.by_cover[ci];
                    if (l < floor || l > M[w]) continue;
                    if (best_ci < 0 || l < best_l) {
                        best_ci = ci;
                        best_l = l;
                    }
                }
                if (best_ci < 0) {
                    complete = false; // already reported by pass 1
                    break;
                }
                incseq.push_back(int(best_l));
                u = covers[best_ci].second;
                incelems.push_back(u);
                floor = best_l;
            }
            if (!complete) continue;
            if (incseq > lexseq[s]) {
                ELResult res;
                res.lo = s;
                res.hi = t;
                res.reason = "increasing maximal chain of " + pair_name(p, s, t) +
                             " is not lexicographically minimal";
                std::vector<int> lexelems{s};
                for (int u2 = s; u2 != t;) {
                    u2 = covers[lexnext[u2]].second;
                    lexelems.push_back(u2);
                }
                res.chains = {incelems, lexelems};
                return res;
            }
        }
    }

    ELResult ok;
    ok.ok = true;
    return ok;
}

LocalStats local_stats(const GradedPoset& p, const EdgeLabeling& lam, int s) {
    if (s == p.top()) throw error(errc::TopElement, "no covers above the top element");
    LocalStats out;
    for (int ci : p.up_cover_ids(s)) {
        CoverStat cs;
        cs.t = p.covers()[ci].second;
        cs.cover_id = ci;
        cs.label = lam.by_cover[ci];
        out.covers.push_back(cs);
        out.labels.push_back(cs.label);
    }
    std::sort(out.labels.begin(), out.labels.end());
    out.labels.erase(std::unique(out.labels.begin(), out.labels.end()), out.labels.end());
    out.widths.assign(out.labels.size(), 0);
    for (auto& cs : out.covers) {
        cs.ind = int(std::lower_bound(out.labels.begin(), out.labels.end(), cs.label) -
                     out.labels.begin()) +
                 1;
        out.widths[cs.ind - 1] += 1;
        cs.des = descent_count(p, lam, cs.t, cs.label);
    }
    std::sort(out.covers.begin(), out.covers.end(), [](const CoverStat& a, const CoverStat& b) {
        return std::tie(a.label, a.t) < std::tie(b.label, b.t);
    });
    return out;
}

RankStatsResult rank_stats(const GradedPoset& p, const EdgeLabeling& lam) {
    ELResult el = verify_el(p, lam);
    if (!el.ok) throw error(errc::NotEL, el.reason);
    return rank_stats_impl(p, lam);
}

UmelReport is_umel(const GradedPoset& p, const EdgeLabeling& lam) {
    UmelReport rep;
    rep.el = verify_el(p, lam);
    if (!rep.el.ok) {
        rep.stage = "el";
        rep.detail = rep.el.reason;
        return rep;
    }
    rep.stats = rank_stats_impl(p, lam);
    if (!rep.stats.uniform) {
        rep.stage = "uniform";
        rep.detail = rep.stats.reason;
        return rep;
    }
    for (int k = 0; k < p.rank(); ++k) {
        const auto& d = rep.stats.stats.des[k];
        for (size_t i = 1; i < d.size(); ++i)
            if (d[i] < d[i - 1]) {
                rep.stage = "monotonic";
                rep.detail = "descent counts at rank " + std::to_string(k) +
                             " decrease from index " + std::to_string(i) + " to " +
                             std::to_string(i + 1);
                return rep;
            }
    }
    rep.ok = true;
    return rep;
}

std::vector<int> chain_descent_set(const GradedPoset& p, const EdgeLabeling& lam,
                                   const std::vector<int>& chain) {
    if (chain.empty()) throw error(errc::InvalidChain, "empty chain");
    std::vector<int> labels;
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        int id = p.cover_index(chain[i], chain[i + 1]);
        if (id < 0)
            throw error(errc::InvalidChain,
                        pair_name(p, chain[i], chain[i + 1]) + " is not a cover");
        labels.push_back(lam.by_cover[id]);
    }
    std::vector<int> out;
    for (size_t i = 1; i < labels.size(); ++i)
        if (labels[i - 1] > labels[i]) out.push_back(int(i));
    return out;
}

} // namespace chowkit
