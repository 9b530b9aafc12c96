#include "chowkit/poset.hpp"

#include <algorithm>
#include <cassert>

#include "chowkit/error.hpp"

namespace chowkit {

namespace {
constexpr int kClosureElementLimit = 60000;

std::int64_t cover_key(int lo, int hi) {
    return (static_cast<std::int64_t>(lo) << 32) | static_cast<std::uint32_t>(hi);
}
} // namespace

std::string GradedPoset::name_of(int u) const {
    if (u < static_cast<int>(names_.size()) && !names_[u].empty()) return names_[u];
    return "e" + std::to_string(u);
}

int GradedPoset::cover_index(int lo, int hi) const {
    auto it = cover_id_.find(cover_key(lo, hi));
    return it == cover_id_.end() ? -1 : it->second;
}

void GradedPoset::ensure_closure() const {
    if (!closure_.empty() || count_ == 0) return;
    if (count_ > kClosureElementLimit)
        throw error(errc::SizeLimitExceeded,
                    "transitive closure needs " + std::to_string(count_) +
                        " elements; limit " + std::to_string(kClosureElementLimit));
    closure_words_ = (count_ + 63) / 64;
    closure_.assign(static_cast<size_t>(count_) * closure_words_, 0);
    // Up-sets, filled top rank down so all successors are ready.
    for (int r = rank(); r >= 0; --r) {
        for (int u : levels_[r]) {
            std::uint64_t* row = &closure_[static_cast<size_t>(u) * closure_words_];
            row[u / 64] |= 1ull << (u % 64);
            for (int v : up_[u]) {
                const std::uint64_t* src = &closure_[static_cast<size_t>(v) * closure_words_];
                for (size_t w = 0; w < closure_words_; ++w) row[w] |= src[w];
            }
        }
    }
}

bool GradedPoset::leq(int s, int t) const {
    if (s == t) return true;
    if (rank_[s] >= rank_[t]) return false;
    ensure_closure();
    const std::uint64_t* row = &closure_[static_cast<size_t>(s) * closure_words_];
    return (row[t / 64] >> (t % 64)) & 1;
}

GradedPoset build_poset(std::vector<std::pair<int, int>> covers, int count,
                        std::vector<std::string> names) {
    if (count <= 0) throw error(errc::NotBounded, "a poset needs at least one element");
    std::sort(covers.begin(), covers.end());
    covers.erase(std::unique(covers.begin(), covers.end()), covers.end());

    GradedPoset p;
    p.count_ = count;
    p.names_ = std::move(names);
    p.up_.resize(count);
    p.down_.resize(count);
    p.up_cov_.resize(count);
    p.down_cov_.resize(count);
    for (auto [lo, hi] : covers) {
        if (lo < 0 || hi < 0 || lo >= count || hi >= count)
            throw error(errc::SchemaError, "cover index out of range");
        if (lo == hi) throw error(errc::NotGraded, "self-cover at element " + std::to_string(lo));
    }
    p.covers_ = std::move(covers);
    for (int i = 0; i < static_cast<int>(p.covers_.size()); ++i) {
        auto [lo, hi] = p.covers_[i];
        p.up_[lo].push_back(hi);
        p.up_cov_[lo].push_back(i);
        p.down_[hi].push_back(lo);
        p.down_cov_[hi].push_back(i);
        p.cover_id_[cover_key(lo, hi)] = i;
    }

    int minimal = -1, maximal = -1;
    for (int u = 0; u < count; ++u) {
        if (p.down_[u].empty()) {
            if (minimal >= 0) throw error(errc::NotBounded, "two minimal elements: " +
                                                                p.name_of(minimal) + ", " + p.name_of(u));
            minimal = u;
        }
        if (p.up_[u].empty()) {
            if (maximal >= 0) throw error(errc::NotBounded, "two maximal elements: " +
                                                                p.name_of(maximal) + ", " + p.name_of(u));
            maximal = u;
        }
    }
    p.bottom_ = minimal;
    p.top_ = maximal;

    // Longest path from the bottom, over a topological order.
    std::vector<int> indeg(count), order;
    order.reserve(count);
    for (int u = 0; u < count; ++u) indeg[u] = static_cast<int>(p.down_[u].size());
    for (int u = 0; u < count; ++u)
        if (indeg[u] == 0) order.push_back(u);
    for (size_t i = 0; i < order.size(); ++i)
        for (int v : p.up_[order[i]])
            if (--indeg[v] == 0) order.push_back(v);
    if (static_cast<int>(order.size()) != count)
        throw error(errc::NotGraded, "cover relation contains a cycle");

    p.rank_.assign(count, 0);
    for (int u : order)
        for (int v : p.up_[u]) p.rank_[v] = std::max(p.rank_[v], p.rank_[u] + 1);
    for (auto [lo, hi] : p.covers_)
        if (p.rank_[hi] != p.rank_[lo] + 1)
            throw error(errc::NotGraded, "cover " + p.name_of(lo) + " < " + p.name_of(hi) +
                                             " spans rank gap " +
                                             std::to_string(p.rank_[hi] - p.rank_[lo]));

    p.levels_.assign(p.rank_[p.top_] + 1, {});
    for (int u = 0; u < count; ++u) p.levels_[p.rank_[u]].push_back(u);
    return p;
}

GradedPoset dual(const GradedPoset& p) {
    std::vector<std::pair<int, int>> covers;
    covers.reserve(p.covers().size());
    for (auto [lo, hi] : p.covers()) covers.emplace_back(hi, lo);
    return build_poset(std::move(covers), p.n(), p.names());
}

GradedPoset add_bottom(const GradedPoset& p) {
    std::vector<std::pair<int, int>> covers = p.covers();
    covers.emplace_back(p.n(), p.bottom());
    std::vector<std::string> names = p.names();
    if (!names.empty()) names.push_back("bot");
    return build_poset(std::move(covers), p.n() + 1, std::move(names));
}

Interval interval(const GradedPoset& p, int s, int t) {
    if (!p.leq(s, t))
        throw error(errc::NotComparable, p.name_of(s) + " is not below " + p.name_of(t));
    Interval iv{&p, s, t, {}};
    for (int u = 0; u < p.n(); ++u)
        if (p.leq(s, u) && p.leq(u, t)) iv.members.push_back(u);
    return iv;
}

IntervalPoset interval_poset(const GradedPoset& p, int s, int t) {
    Interval iv = interval(p, s, t);
    std::vector<int> back(p.n(), -1);
    for (size_t i = 0; i < iv.members.size(); ++i) back[iv.members[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> covers;
    std::vector<std::string> names;
    for (int u : iv.members) {
        names.push_back(p.name_of(u));
        for (int v : p.up(u))
            if (back[v] >= 0) covers.emplace_back(back[u], back[v]);
    }
    return {build_poset(std::move(covers), static_cast<int>(iv.members.size()), std::move(names)),
            std::move(iv.members)};
}

namespace {

// Mobius values mu(s, u) for all u in [s, t], keyed by element id.
std::vector<std::pair<int, Int>> mobius_from(const GradedPoset& p, int s, int t) {
    Interval iv = interval(p, s, t);
    std::vector<int> members = iv.members;
    std::sort(members.begin(), members.end(),
              [&](int a, int b) { return p.rank_of(a) < p.rank_of(b); });
    std::vector<std::pair<int, Int>> mu;
    std::vector<Int> val(p.n());
    for (int u : members) {
        if (u == s) {
            val[u] = 1;
        } else {
            Int acc(0);
            for (int v : members) {
                if (p.rank_of(v) >= p.rank_of(u)) break;
                if (p.leq(v, u)) acc += val[v];
            }
            val[u] = -acc;
        }
        mu.emplace_back(u, val[u]);
    }
    return mu;
}

} // namespace

Int mobius(const GradedPoset& p, int s, int t) {
    auto mu = mobius_from(p, s, t);
    for (auto& [u, v] : mu)
        if (u == t) return v;
    assert(false);
    return Int(0);
}

IntPoly char_poly(const GradedPoset& p, int lo, int hi) {
    auto mu = mobius_from(p, lo, hi);
    IntPoly chi;
    for (auto& [u, v] : mu) chi += IntPoly::monomial(v, p.rank_of(hi) - p.rank_of(u));
    return chi;
}

IntPoly reduced_char_poly(const GradedPoset& p, int lo, int hi) {
    if (p.rank_of(hi) == p.rank_of(lo))
        throw error(errc::RankZeroInterval, "chi-bar is undefined on a rank-0 interval");
    IntPoly chi = char_poly(p, lo, hi);
    IntPoly quot;
    bool ok = IntPoly::div_exact(chi, IntPoly{-1, 1}, quot);
    if (!ok)
        throw error(errc::NotGraded, "characteristic polynomial not divisible by x-1: " + chi.str());
    return quot;
}

WhitneyProfile whitney_profile(const GradedPoset& p, int s) {
    WhitneyProfile w{s, {}};
    int corank = p.rank() - p.rank_of(s);
    w.counts.assign(corank + 1, Int(0));
    // BFS upward from s, counting distinct reachable elements per rank.
    std::vector<bool> seen(p.n(), false);
    std::vector<int> frontier{s};
    seen[s] = true;
    w.counts[0] = 1;
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int u : frontier)
            for (int v : p.up(u))
                if (!seen[v]) {
                    seen[v] = true;
                    w.counts[p.rank_of(v) - p.rank_of(s)] += 1;
                    next.push_back(v);
                }
        frontier = std::move(next);
    }
    return w;
}

RankUniformResult is_rank_uniform(const GradedPoset& p) {
    for (const auto& level : p.levels()) {
        if (level.size() <= 1) continue;
        WhitneyProfile first = whitney_profile(p, level[0]);
        for (size_t i = 1; i < level.size(); ++i) {
            WhitneyProfile other = whitney_profile(p, level[i]);
            if (other.counts != first.counts) return {false, level[0], level[i]};
        }
    }
    return {true};
}

GradedPoset rank_select(const GradedPoset& p, const std::vector<int>& S) {
    int n = p.rank();
    std::vector<int> ranks{0};
    for (int r : S) {
        if (r < 1 || r > n - 1) throw error(errc::SchemaError, "selected rank out of range");
        if (ranks.back() != r) ranks.push_back(r);
    }
    if (ranks.back() != n) ranks.push_back(n);
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());

    std::vector<int> back(p.n(), -1);
    std::vector<int> elems;
    std::vector<std::string> names;
    for (int r : ranks)
        for (int u : p.levels()[r]) {
            back[u] = static_cast<int>(elems.size());
            elems.push_back(u);
            names.push_back(p.name_of(u));
        }
    std::vector<std::pair<int, int>> covers;
    for (size_t i = 0; i + 1 < ranks.size(); ++i)
        for (int u : p.levels()[ranks[i]])
            for (int v : p.levels()[ranks[i + 1]])
                if (p.leq(u, v)) covers.emplace_back(back[u], back[v]);
    return build_poset(std::move(covers), static_cast<int>(elems.size()), std::move(names));
}

GradedPoset truncate(const GradedPoset& p, int k) {
    int n = p.rank();
    if (n <= k) {
        // Everything between bottom and top vanishes and the two ends merge.
        return build_poset({}, 1, {p.name_of(p.bottom())});
    }
    std::vector<int> S;
    for (int r = 1; r <= n - k - 1; ++r) S.push_back(r);
    return rank_select(p, S);
}

const Int& FlagCache::alpha(std::uint64_t mask) {
    auto it = alpha_.find(mask);
    if (it != alpha_.end()) return it->second;

    const GradedPoset& p = p_;
    std::vector<int> ranks;
    for (int r = 1; r <= p.rank() - 1; ++r)
        if (mask & (1ull << r)) ranks.push_back(r);

    Int result;
    if (ranks.empty()) {
        result = 1;
    } else {
        // Weights live on the current selected level; reachability to the
        // next selected level is tracked with bitsets over the current one.
        const auto& levels = p.levels();
        std::vector<Int> weight(levels[ranks[0]].size(), Int(1));
        for (size_t li = 0; li + 1 < ranks.size(); ++li) {
            const auto& base = levels[ranks[li]];
            size_t words = (base.size() + 63) / 64;
            // bits[u] = which base elements lie below u
            std::vector<std::vector<std::uint64_t>> bits(p.n());
            for (size_t i = 0; i < base.size(); ++i) {
                bits[base[i]].assign(words, 0);
                bits[base[i]][i / 64] |= 1ull << (i % 64);
            }
            for (int r = ranks[li] + 1; r <= ranks[li + 1]; ++r) {
                for (int v : levels[r]) {
                    std::vector<std::uint64_t> acc(words, 0);
                    for (int u : p.down(v))
                        if (!bits[u].empty())
                            for (size_t w = 0; w < words; ++w) acc[w] |= bits[u][w];
                    bits[v] = std::move(acc);
                }
                // the layer below is no longer needed
                for (int v : levels[r - 1]) std::vector<std::uint64_t>().swap(bits[v]);
            }
            const auto& nxt = levels[ranks[li + 1]];
            std::vector<Int> nw(nxt.size(), Int(0));
            for (size_t j = 0; j < nxt.size(); ++j) {
                const auto& row = bits[nxt[j]];
                if (row.empty()) continue;
                for (size_t w = 0; w < words; ++w) {
                    std::uint64_t m = row[w];
                    while (m) {
                        int b = __builtin_ctzll(m);
                        m &= m - 1;
                        nw[j] += weight[w * 64 + b];
                    }
                }
            }
            weight = std::move(nw);
        }
        result = 0;
        for (const Int& v : weight) result += v;
    }
    return alpha_.emplace(mask, std::move(result)).first->second;
}

Int FlagCache::beta(std::uint64_t mask) {
    // inclusion-exclusion over subsets of mask
    Int acc(0);
    int bits = __builtin_popcountll(mask);
    std::uint64_t sub = mask;
    while (true) {
        int sb = __builtin_popcountll(sub);
        Int term = alpha(sub);
        if ((bits - sb) % 2 == 0)
            acc += term;
        else
            acc -= term;
        if (sub == 0) break;
        sub = (sub - 1) & mask;
    }
    return acc;
}

namespace {
std::uint64_t rank_mask(const GradedPoset& p, const std::vector<int>& S) {
    std::uint64_t mask = 0;
    for (int r : S) {
        if (r < 1 || r > p.rank() - 1)
            throw error(errc::SchemaError, "selected rank out of range");
        mask |= 1ull << r;
    }
    return mask;
}
} // namespace

Int flag_alpha(const GradedPoset& p, const std::vector<int>& S) {
    FlagCache fc(p);
    return fc.alpha(rank_mask(p, S));
}

Int flag_beta(const GradedPoset& p, const std::vector<int>& S) {
    FlagCache fc(p);
    return fc.beta(rank_mask(p, S));
}

Int count_max_chains(const GradedPoset& p, int lo, int hi) {
    if (!p.leq(lo, hi)) throw error(errc::NotComparable, "chain endpoints not comparable");
    std::vector<Int> ways(p.n(), Int(0));
    ways[lo] = 1;
    for (int r = p.rank_of(lo); r < p.rank_of(hi); ++r)
        for (int u : p.levels()[r]) {
            if (ways[u] == 0) continue;
            if (!p.leq(u, hi)) continue;
            for (int v : p.up(u))
                if (p.leq(v, hi)) ways[v] += ways[u];
        }
    return ways[hi];
}

std::vector<std::vector<int>> max_chains(const GradedPoset& p, int lo, int hi,
                                         std::uint64_t limit) {
    Int total = count_max_chains(p, lo, hi);
    if (total > Int(static_cast<unsigned long>(limit)))
        throw error(errc::SizeLimitExceeded,
                    "chain count " + total.get_str() + " exceeds limit " + std::to_string(limit));
    std::vector<std::vector<int>> out;
    std::vector<int> cur{lo};
    // iterative DFS with explicit neighbor positions, ascending element order
    std::vector<size_t> idx{0};
    while (!cur.empty()) {
        int u = cur.back();
        if (u == hi) {
            out.push_back(cur);
            cur.pop_back();
            idx.pop_back();
            continue;
        }
        bool advanced = false;
        for (size_t& i = idx.back(); i < p.up(u).size();) {
            int v = p.up(u)[i++];
            if (p.leq(v, hi)) {
                cur.push_back(v);
                idx.push_back(0);
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            cur.pop_back();
            idx.pop_back();
        }
    }
    return out;
}

OrderComplexPolys order_complex_polys(const GradedPoset& p) {
    int n = p.rank();
    int d = std::max(n - 1, 0);
    FlagCache fc(p);
    std::vector<Int> fcoeffs(d + 1, Int(0));
    for (std::uint64_t mask = 0; mask < (1ull << std::max(n - 1, 0)); ++mask)
        fcoeffs[__builtin_popcountll(mask)] += fc.alpha(mask << 1);
    IntPoly f(std::move(fcoeffs));

    // h(y) = (1-y)^d f(y/(1-y)) expanded without rational arithmetic
    IntPoly h;
    IntPoly one_minus_y{1, -1};
    for (int i = 0; i <= d; ++i) {
        IntPoly term = IntPoly::constant(f.coeff(i));
        for (int j = 0; j < i; ++j) term *= IntPoly{0, 1};
        for (int j = 0; j < d - i; ++j) term *= one_minus_y;
        h += term;
    }

    // cross-check: h = sum over S of beta(S) y^|S|
    IntPoly h2;
    for (std::uint64_t mask = 0; mask < (1ull << std::max(n - 1, 0)); ++mask)
        h2 += IntPoly::monomial(fc.beta(mask << 1), __builtin_popcountll(mask));
    if (!(h == h2))
        throw error(errc::NotGraded, "internal: flag-beta h disagrees with the f-to-h transform");
    return {f, h};
}

} // namespace chowkit
