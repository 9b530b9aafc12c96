#include "chowkit/families.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "chowkit/error.hpp"
#include "json.hpp"

namespace chowkit {

namespace {

std::string join_ints(const std::vector<int>& v, const char* sep = ",") {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

std::vector<int> mask_to_list(std::uint64_t mask) {
    std::vector<int> out;
    for (int e = 0; mask; ++e, mask >>= 1)
        if (mask & 1) out.push_back(e + 1);
    return out;
}

std::string subset_name(std::uint64_t mask) {
    if (!mask) return "-";
    return join_ints(mask_to_list(mask));
}

LabeledPoset finish(std::vector<std::pair<int, int>> covers,
                    std::vector<std::tuple<int, int, int>> triples, int count,
                    std::vector<std::string> names) {
    LabeledPoset lp{build_poset(std::move(covers), count, std::move(names)), {}};
    lp.labeling = attach_labeling(lp.poset, triples);
    return lp;
}

// ---- Dowling geometries ------------------------------------------------

// One G-partition in canonical form: the zero block plus nonzero blocks
// sorted by minimum, each a sorted list of (element, shift) with the shift
// of the minimum pinned to 0. Structural equality is then set equality.
struct GPart {
    std::vector<int> zero; // sorted, starts with 0
    std::vector<std::vector<std::pair<int, int>>> blocks;

    std::vector<int> key() const {
        std::vector<int> k;
        k.push_back(-1);
        for (int e : zero) k.push_back(e);
        for (const auto& b : blocks) {
            k.push_back(-2);
            for (auto [e, s] : b) {
                k.push_back(e);
                k.push_back(s);
            }
        }
        return k;
    }

    std::string name() const {
        std::string out = join_ints(zero, " ");
        for (const auto& b : blocks) {
            out += "|";
            for (size_t i = 0; i < b.size(); ++i) {
                if (i) out += " ";
                out += std::to_string(b[i].first);
                if (b[i].second) out += "^" + std::to_string(b[i].second);
            }
        }
        return out;
    }
};

// ---- Linear algebra over a prime field ---------------------------------

int mod_inverse(int a, int q) {
    for (int x = 1; x < q; ++x)
        if (a * x % q == 1) return x;
    return 0;
}

// Row-reduced basis with incremental insertion and membership tests.
struct GaussBasis {
    int q, d;
    std::vector<std::vector<int>> rows; // each with a leading 1 at pivot[i]
    std::vector<int> pivots;

    GaussBasis(int q_, int d_) : q(q_), d(d_) {}

    // Reduces v against the basis in place; returns the first nonzero
    // position, or -1 if v reduces to zero.
    int reduce(std::vector<int>& v) const {
        for (size_t i = 0; i < rows.size(); ++i) {
            int c = v[pivots[i]];
            if (!c) continue;
            for (int j = 0; j < d; ++j) v[j] = ((v[j] - c * rows[i][j]) % q + q) % q;
        }
        for (int j = 0; j < d; ++j)
            if (v[j]) return j;
        return -1;
    }

    bool contains(std::vector<int> v) const { return reduce(v) < 0; }

    bool add(std::vector<int> v) {
        int p = reduce(v);
        if (p < 0) return false;
        int inv = mod_inverse(v[p], q);
        for (int j = 0; j < d; ++j) v[j] = v[j] * inv % q;
        rows.push_back(std::move(v));
        pivots.push_back(p);
        return true;
    }
};

int encode_vec(const std::vector<int>& v, int q) {
    int code = 0;
    for (int i = int(v.size()) - 1; i >= 0; --i) code = code * q + v[i];
    return code;
}

std::vector<int> decode_vec(int code, int q, int d) {
    std::vector<int> v(d);
    for (int i = 0; i < d; ++i) {
        v[i] = code % q;
        code /= q;
    }
    return v;
}

// All vector codes in the span of the basis.
std::vector<int> span_set(const GaussBasis& b) {
    std::vector<int> out{0};
    for (const auto& row : b.rows) {
        std::vector<int> next;
        for (int code : out) {
            std::vector<int> v = decode_vec(code, b.q, b.d);
            for (int c = 0; c < b.q; ++c) {
                std::vector<int> w(b.d);
                for (int j = 0; j < b.d; ++j) w[j] = (v[j] + c * row[j]) % b.q;
                next.push_back(encode_vec(w, b.q));
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_prime(int q) {
    if (q < 2) return false;
    for (int f = 2; f * f <= q; ++f)
        if (q % f == 0) return false;
    return true;
}

} // namespace

LabeledPoset boolean_lattice(int n) {
    if (n < 1 || n > 20) throw error(errc::SchemaError, "boolean needs 1 <= n <= 20");
    std::vector<std::pair<int, int>> covers;
    std::vector<std::tuple<int, int, int>> triples;
    std::vector<std::string> names;
    for (std::uint64_t m = 0; m < (1ull << n); ++m) {
        names.push_back(subset_name(m));
        for (int e = 0; e < n; ++e)
            if (!(m >> e & 1)) {
                covers.push_back({int(m), int(m | 1ull << e)});
                triples.push_back({int(m), int(m | 1ull << e), e + 1});
            }
    }
    return finish(std::move(covers), std::move(triples), 1 << n, std::move(names));
}

LabeledPoset uniform_lattice(int k, int n) {
    if (k < 1 || k > n || n > 25)
        throw error(errc::SchemaError, "uniform needs 1 <= k <= n <= 25");
    std::map<std::uint64_t, int> id;
    std::vector<std::uint64_t> masks;
    std::vector<std::string> names;
    auto add = [&](std::uint64_t m) {
        id[m] = int(masks.size());
        masks.push_back(m);
        names.push_back(subset_name(m));
    };
    // breadth first by cardinality so ids ascend with rank
    for (int size = 0; size <= k - 1; ++size)
        for (std::uint64_t m = 0; m < (1ull << n); ++m)
            if (__builtin_popcountll(m) == size) add(m);
    std::uint64_t full = (1ull << n) - 1;
    add(full);

    std::vector<std::pair<int, int>> covers;
    std::vector<std::tuple<int, int, int>> triples;
    for (std::uint64_t m : masks) {
        if (m == full) continue;
        if (__builtin_popcountll(m) < k - 1) {
            for (int e = 0; e < n; ++e)
                if (!(m >> e & 1)) {
                    covers.push_back({id[m], id[m | 1ull << e]});
                    triples.push_back({id[m], id[m | 1ull << e], e + 1});
                }
        } else {
            int e = 0;
            while (m >> e & 1) ++e; // smallest missing element
            covers.push_back({id[m], id[full]});
            triples.push_back({id[m], id[full], e + 1});
        }
    }
    return finish(std::move(covers), std::move(triples), int(masks.size()), std::move(names));
}

LabeledPoset partition_lattice(int n) {
    if (n < 2) throw error(errc::SchemaError, "partition needs n >= 2");
    return dowling(n - 1, 1);
}

LabeledPoset dowling(int n, int m, std::uint64_t max_elements) {
    if (n < 1 || m < 1) throw error(errc::SchemaError, "dowling needs n >= 1 and m >= 1");

    std::map<std::vector<int>, int> id;
    std::vector<GPart> elems;
    std::vector<std::string> names;
    auto intern = [&](const GPart& g) {
        auto [it, fresh] = id.try_emplace(g.key(), int(elems.size()));
        if (fresh) {
            if (elems.size() >= max_elements)
                throw error(errc::SizeLimitExceeded,
                            "dowling(" + std::to_string(n) + "," + std::to_string(m) +
                                ") exceeds " + std::to_string(max_elements) + " elements");
            elems.push_back(g);
            names.push_back(g.name());
        }
        return it->second;
    };

    GPart bottom;
    bottom.zero = {0};
    for (int i = 1; i <= n; ++i) bottom.blocks.push_back({{i, 0}});
    intern(bottom);

    std::vector<std::pair<int, int>> covers;
    std::vector<std::tuple<int, int, int>> triples;
    for (size_t cur = 0; cur < elems.size(); ++cur) {
        GPart g = elems[cur]; // copy: elems may reallocate while we append
        int b = int(g.blocks.size());
        // merge two nonzero blocks, one target per relative shift
        for (int i = 0; i < b; ++i)
            for (int j = i + 1; j < b; ++j)
                for (int shift = 0; shift < m; ++shift) {
                    GPart h;
                    h.zero = g.zero;
                    std::vector<std::pair<int, int>> merged = g.blocks[i];
                    for (auto [e, s] : g.blocks[j]) merged.push_back({e, (s + shift) % m});
                    std::sort(merged.begin(), merged.end());
                    for (int t = 0; t < b; ++t)
                        if (t != i && t != j) h.blocks.push_back(g.blocks[t]);
                    h.blocks.push_back(std::move(merged));
                    std::sort(h.blocks.begin(), h.blocks.end());
                    int hi = intern(h);
                    covers.push_back({int(cur), hi});
                    triples.push_back({int(cur), hi, g.blocks[j][0].first});
                }
        // absorb a nonzero block into the zero block
        for (int i = 0; i < b; ++i) {
            GPart h;
            h.zero = g.zero;
            for (auto [e, s] : g.blocks[i]) h.zero.push_back(e);
            std::sort(h.zero.begin(), h.zero.end());
            for (int t = 0; t < b; ++t)
                if (t != i) h.blocks.push_back(g.blocks[t]);
            int hi = intern(h);
            covers.push_back({int(cur), hi});
            triples.push_back({int(cur), hi, g.blocks[i][0].first});
        }
    }
    return finish(std::move(covers), std::move(triples), int(elems.size()), std::move(names));
}

LabeledPoset projective(int n, int q, std::uint64_t max_elements) {
    if (n < 1 || !is_prime(q)) throw error(errc::SchemaError, "projective needs n >= 1, q prime");
    double vecs = 1;
    for (int i = 0; i < n; ++i) vecs *= q;
    if (vecs > 1 << 20) throw error(errc::SizeLimitExceeded, "ambient space too large");

    // Subspaces as their sorted member-vector codes; grow by adjoining one
    // nonzero vector at a time, one level per dimension.
    std::map<std::vector<int>, int> id;
    std::vector<std::vector<int>> spaces;          // member codes
    std::vector<std::vector<std::vector<int>>> bases; // row-reduced basis rows
    std::vector<std::string> names;
    auto intern = [&](const GaussBasis& b) {
        std::vector<int> set = span_set(b);
        auto [it, fresh] = id.try_emplace(set, int(spaces.size()));
        if (fresh) {
            if (spaces.size() >= max_elements)
                throw error(errc::SizeLimitExceeded, "projective exceeds " +
                                                         std::to_string(max_elements) +
                                                         " elements");
            spaces.push_back(std::move(set));
            bases.push_back(b.rows);
            names.push_back("dim" + std::to_string(b.rows.size()) + "#" +
                            std::to_string(spaces.size()));
        }
        return it->second;
    };

    intern(GaussBasis(q, n));
    std::vector<std::pair<int, int>> covers;
    std::vector<std::tuple<int, int, int>> triples;
    int total = int(vecs);
    for (size_t cur = 0; cur < spaces.size(); ++cur) {
        std::vector<int> members = spaces[cur];
        std::vector<std::vector<int>> rows = bases[cur];
        if (int(rows.size()) == n) continue;
        std::set<int> seen;
        for (int code = 1; code < total; ++code) {
            if (std::binary_search(members.begin(), members.end(), code)) continue;
            GaussBasis b(q, n);
            for (const auto& r : rows) b.add(r);
            b.add(decode_vec(code, q, n));
            int hi = intern(b);
            if (seen.insert(hi).second) covers.push_back({int(cur), hi});
        }
        // Label each new cover along the coordinate chain: the smallest i
        // with U + <e_1..e_i> containing V.
        for (size_t c = triples.size(); c < covers.size(); ++c) {
            auto [lo, hi] = covers[c];
            int label = 0;
            GaussBasis b(q, n);
            for (const auto& r : bases[lo]) b.add(r);
            for (int i = 1; i <= n && !label; ++i) {
                std::vector<int> e(n, 0);
                e[i - 1] = 1;
                b.add(e);
                bool covers_hi = true;
                for (const auto& r : bases[hi])
                    if (!b.contains(r)) {
                        covers_hi = false;
                        break;
                    }
                if (covers_hi) label = i;
            }
            triples.push_back({lo, hi, label});
        }
    }
    return finish(std::move(covers), std::move(triples), int(spaces.size()), std::move(names));
}

LabeledPoset flats_from_points(const PointConfig& cfg) {
    if (!is_prime(cfg.q)) throw error(errc::SchemaError, "field order must be prime");
    if (cfg.d < 1) throw error(errc::SchemaError, "dimension must be positive");
    int N = int(cfg.points.size());
    if (N < 1) throw error(errc::SchemaError, "need at least one point");
    if (N > 62) throw error(errc::SizeLimitExceeded, "too many points");
    std::vector<std::vector<int>> pts;
    for (const auto& p : cfg.points) {
        if (int(p.size()) != cfg.d)
            throw error(errc::SchemaError, "point with wrong dimension");
        std::vector<int> v(p);
        bool zero = true;
        for (auto& x : v) {
            x = (x % cfg.q + cfg.q) % cfg.q;
            if (x) zero = false;
        }
        if (zero) throw error(errc::SchemaError, "zero point in configuration");
        pts.push_back(v);
    }
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            for (int c = 1; c < cfg.q; ++c) {
                bool parallel = true;
                for (int t = 0; t < cfg.d; ++t)
                    if (pts[j][t] != pts[i][t] * c % cfg.q) {
                        parallel = false;
                        break;
                    }
                if (parallel)
                    throw error(errc::SchemaError,
                                "points " + std::to_string(i + 1) + " and " +
                                    std::to_string(j + 1) + " are parallel");
            }

    auto closure = [&](std::uint64_t mask) {
        GaussBasis b(cfg.q, cfg.d);
        for (int i = 0; i < N; ++i)
            if (mask >> i & 1) b.add(pts[i]);
        std::uint64_t out = 0;
        for (int i = 0; i < N; ++i)
            if (b.contains(pts[i])) out |= 1ull << i;
        return std::pair<std::uint64_t, int>{out, int(b.rows.size())};
    };

    std::map<std::uint64_t, int> id;
    std::vector<std::uint64_t> flats;
    std::vector<std::string> names;
    auto intern = [&](std::uint64_t f) {
        auto [it, fresh] = id.try_emplace(f, int(flats.size()));
        if (fresh) {
            flats.push_back(f);
            std::vector<int> list;
            for (int i = 0; i < N; ++i)
                if (f >> i & 1) list.push_back(i + 1);
            names.push_back(list.empty() ? "-" : join_ints(list));
        }
        return it->second;
    };

    intern(closure(0).first);
    std::vector<std::pair<int, int>> covers;
    std::vector<std::tuple<int, int, int>> triples;
    for (size_t cur = 0; cur < flats.size(); ++cur) {
        std::uint64_t f = flats[cur];
        std::set<int> seen;
        for (int p = 0; p < N; ++p) {
            if (f >> p & 1) continue;
            std::uint64_t g = closure(f | 1ull << p).first;
            int hi = intern(g);
            if (seen.insert(hi).second) {
                covers.push_back({int(cur), hi});
                std::uint64_t added = g & ~f;
                int e = 0;
                while (!(added >> e & 1)) ++e;
                triples.push_back({int(cur), hi, e + 1});
            }
        }
    }
    return finish(std::move(covers), std::move(triples), int(flats.size()), std::move(names));
}

ParsedPoset from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::SchemaError, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("elements") || !doc.contains("covers"))
        throw error(errc::SchemaError, "document needs 'elements' and 'covers'");
    std::vector<std::string> names;
    try {
        for (const auto& e : doc.at("elements")) names.push_back(e.get<std::string>());
        int n = int(names.size());
        std::vector<std::pair<int, int>> covers;
        for (const auto& c : doc.at("covers")) {
            if (!c.is_array() || c.size() != 2)
                throw error(errc::SchemaError, "each cover must be [lo, hi]");
            int lo = c[0].get<int>(), hi = c[1].get<int>();
            if (lo < 0 || lo >= n || hi < 0 || hi >= n)
                throw error(errc::SchemaError, "cover references unknown element");
            covers.push_back({lo, hi});
        }
        ParsedPoset out{build_poset(std::move(covers), n, std::move(names)), std::nullopt};
        if (doc.contains("labels")) {
            std::vector<std::tuple<int, int, int>> triples;
            for (const auto& t : doc.at("labels")) {
                if (!t.is_array() || t.size() != 3)
                    throw error(errc::SchemaError, "each label must be [lo, hi, label]");
                triples.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
            }
            out.labeling = attach_labeling(out.poset, triples);
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::SchemaError, std::string("malformed document: ") + e.what());
    }
}

std::string to_json(const GradedPoset& p, const EdgeLabeling* lam) {
    nlohmann::json doc;
    doc["elements"] = nlohmann::json::array();
    for (int u = 0; u < p.n(); ++u) doc["elements"].push_back(p.name_of(u));
    doc["covers"] = nlohmann::json::array();
    for (auto [lo, hi] : p.covers()) doc["covers"].push_back({lo, hi});
    if (lam) {
        doc["labels"] = nlohmann::json::array();
        for (size_t c = 0; c < p.covers().size(); ++c)
            doc["labels"].push_back({p.covers()[c].first, p.covers()[c].second,
                                     lam->by_cover[c]});
    }
    return doc.dump(2);
}

} // namespace chowkit
