#include "chowkit/supersolvable.hpp"

#include <algorithm>

#include "chowkit/error.hpp"

namespace chowkit {

namespace {

std::string pair_name(const GradedPoset& p, int a, int b) {
    return "(" + p.name_of(a) + ", " + p.name_of(b) + ")";
}

// Modular pair test (s,t) with precomputed tables.
bool modular_pair(const GradedPoset& p, const LatticeOps& ops, int s, int t) {
    int st = ops.meet(s, t);
    for (int u = 0; u < p.n(); ++u) {
        if (!p.leq(u, t)) continue;
        if (ops.join(u, st) != ops.meet(ops.join(u, s), t)) return false;
    }
    return true;
}

} // namespace

LatticeOps::LatticeOps(const GradedPoset& p) : n_(p.n()) {
    join_.assign(size_t(n_) * n_, -1);
    meet_.assign(size_t(n_) * n_, -1);
    // Upper and lower sets as bitsets so candidate scans are cheap.
    size_t words = size_t(n_ + 63) / 64;
    std::vector<std::uint64_t> up(size_t(n_) * words, 0), down(size_t(n_) * words, 0);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (p.leq(a, b)) {
                up[size_t(a) * words + b / 64] |= 1ull << (b % 64);
                down[size_t(b) * words + a / 64] |= 1ull << (a % 64);
            }
    std::vector<int> common;
    auto extremum = [&](const std::vector<std::uint64_t>& dir, int a, int b, bool lowest) {
        common.clear();
        for (size_t w = 0; w < words; ++w) {
            std::uint64_t bits = dir[size_t(a) * words + w] & dir[size_t(b) * words + w];
            while (bits) {
                int u = int(w * 64 + __builtin_ctzll(bits));
                bits &= bits - 1;
                common.push_back(u);
            }
        }
        int best = -1;
        for (int u : common) {
            bool ok = lowest ? p.rank_of(u) < (best < 0 ? n_ + 1 : p.rank_of(best))
                             : p.rank_of(u) > (best < 0 ? -1 : p.rank_of(best));
            if (ok) best = u;
        }
        for (int u : common)
            if (lowest ? !p.leq(best, u) : !p.leq(u, best)) return -1;
        return best;
    };
    for (int a = 0; a < n_; ++a)
        for (int b = a; b < n_; ++b) {
            int j = extremum(up, a, b, true);
            if (j < 0)
                throw error(errc::NotALattice,
                            "elements " + pair_name(p, a, b) + " have no join");
            int m = extremum(down, a, b, false);
            if (m < 0)
                throw error(errc::NotALattice,
                            "elements " + pair_name(p, a, b) + " have no meet");
            join_[size_t(a) * n_ + b] = join_[size_t(b) * n_ + a] = j;
            meet_[size_t(a) * n_ + b] = meet_[size_t(b) * n_ + a] = m;
        }
}

bool is_modular_element(const GradedPoset& p, const LatticeOps& ops, int s) {
    for (int t = 0; t < p.n(); ++t)
        if (!modular_pair(p, ops, s, t) || !modular_pair(p, ops, t, s)) return false;
    return true;
}

bool is_modular_element(const GradedPoset& p, int s) {
    return is_modular_element(p, LatticeOps(p), s);
}

std::optional<ModularChain> modular_maximal_chain(const GradedPoset& p) {
    LatticeOps ops(p);
    std::vector<signed char> modular(p.n(), -1);
    auto is_mod = [&](int u) {
        if (modular[u] < 0) modular[u] = is_modular_element(p, ops, u) ? 1 : 0;
        return modular[u] == 1;
    };
    std::vector<int> chain{p.bottom()};
    auto dfs = [&](auto&& self, int u) -> bool {
        if (u == p.top()) return true;
        for (int v : p.up(u)) {
            if (!is_mod(v)) continue;
            chain.push_back(v);
            if (self(self, v)) return true;
            chain.pop_back();
        }
        return false;
    };
    if (!dfs(dfs, p.bottom())) return std::nullopt;
    return ModularChain{std::move(chain)};
}

EdgeLabeling mcnamara_labeling(const GradedPoset& p, const ModularChain& m) {
    int n = p.rank();
    if (int(m.elements.size()) != n + 1 || m.elements.front() != p.bottom() ||
        m.elements.back() != p.top())
        throw error(errc::InvalidChain, "chain must run from bottom to top");
    for (int i = 0; i < n; ++i)
        if (p.cover_index(m.elements[i], m.elements[i + 1]) < 0)
            throw error(errc::InvalidChain,
                        pair_name(p, m.elements[i], m.elements[i + 1]) + " is not a cover");
    LatticeOps ops(p);
    for (int u : m.elements)
        if (!is_modular_element(p, ops, u))
            throw error(errc::InvalidChain, p.name_of(u) + " is not a modular element");

    std::vector<std::tuple<int, int, int>> triples;
    for (auto [s, t] : p.covers()) {
        int label = n;
        for (int i = 1; i < n; ++i)
            if (p.leq(t, ops.join(s, m.elements[i]))) {
                label = i;
                break;
            }
        triples.push_back({s, t, label});
    }
    EdgeLabeling lam = attach_labeling(p, triples);
    ELResult el = verify_el(p, lam);
    if (!el.ok) throw error(errc::NotEL, "supersolvable labeling failed: " + el.reason);
    return lam;
}

SupersolvableResult umel_from_supersolvable(const GradedPoset& p) {
    LatticeOps ops(p); // NotALattice surfaces here
    RankUniformResult ru = is_rank_uniform(p);
    if (!ru.uniform)
        throw error(errc::NotRankUniform,
                    "elements " + pair_name(p, ru.witness_a, ru.witness_b) +
                        " of equal rank have different Whitney profiles");
    std::optional<ModularChain> chain = modular_maximal_chain(p);
    if (!chain)
        throw error(errc::NotSupersolvable, "no maximal chain of modular elements");

    SupersolvableResult out;
    out.chain = *chain;
    out.labeling = mcnamara_labeling(p, out.chain);
    out.report = is_umel(p, out.labeling);
    if (!out.report.ok)
        throw error(errc::NotUMEL, "supersolvable labeling is not UMEL at stage " +
                                       out.report.stage + ": " + out.report.detail);
    out.des_matches_ind = true;
    for (int s = 0; s < p.n(); ++s) {
        if (s == p.top()) continue;
        for (const auto& c : local_stats(p, out.labeling, s).covers)
            if (c.des != c.ind - 1) {
                out.des_matches_ind = false;
                throw error(errc::NotUMEL, "cover " + pair_name(p, s, c.t) +
                                               " has descent count " + std::to_string(c.des) +
                                               " but label index " + std::to_string(c.ind));
            }
    }
    return out;
}

} // namespace chowkit
