#include "chowkit/realroots.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace chowkit {

namespace {

// Small helper for exact arithmetic over Q where integer rescaling would
// break identities (Yun's algorithm, Sturm remainders).
struct QPoly {
    std::vector<Rat> c; // low to high, normalized

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
};

QPoly to_q(const IntPoly& p) {
    QPoly q;
    q.c.reserve(p.coeffs().size());
    for (const Int& v : p.coeffs()) q.c.emplace_back(v);
    return q;
}

// Multiply by a positive rational to reach a primitive integer polynomial.
// Positive scaling keeps all signs, which Sturm sequences rely on.
IntPoly primitivize(const QPoly& q) {
    if (q.is_zero()) return IntPoly();
    Int lcm(1);
    for (const Rat& v : q.c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<Int> ints;
    ints.reserve(q.c.size());
    for (const Rat& v : q.c) {
        Rat scaled = v * Rat(lcm);
        assert(scaled.get_den() == 1);
        ints.push_back(scaled.get_num());
    }
    return IntPoly(std::move(ints)).primitive_part();
}

QPoly q_sub(const QPoly& a, const QPoly& b) {
    QPoly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.normalize();
    return r;
}

QPoly q_derivative(const QPoly& a) {
    QPoly r;
    if (a.c.size() <= 1) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = a.c[i] * Rat(static_cast<long>(i));
    return r;
}

// Exact division; the caller guarantees divisibility.
QPoly q_div(const QPoly& a, const QPoly& b) {
    assert(!b.is_zero());
    QPoly rem = a;
    QPoly quot;
    if (a.degree() < b.degree()) {
        assert(a.is_zero());
        return quot;
    }
    quot.c.assign(a.degree() - b.degree() + 1, Rat(0));
    for (int d = rem.degree(); d >= b.degree(); --d) {
        Rat f = rem.c[d] / b.c.back();
        if (f == 0) continue;
        int shift = d - b.degree();
        quot.c[shift] = f;
        for (int i = 0; i <= b.degree(); ++i) rem.c[shift + i] -= f * b.c[i];
    }
    rem.normalize();
    assert(rem.is_zero());
    quot.normalize();
    return quot;
}

// Remainder of a mod b over Q, rescaled positively to a primitive IntPoly.
IntPoly q_rem_primitive(const IntPoly& a, const IntPoly& b) {
    QPoly rem = to_q(a);
    QPoly bq = to_q(b);
    while (!rem.is_zero() && rem.degree() >= bq.degree()) {
        Rat f = rem.c.back() / bq.c.back();
        int shift = rem.degree() - bq.degree();
        for (int i = 0; i <= bq.degree(); ++i) rem.c[shift + i] -= f * bq.c[i];
        rem.normalize();
    }
    return primitivize(rem);
}

QPoly q_gcd(const QPoly& a, const QPoly& b) {
    return to_q(IntPoly::gcd(primitivize(a), primitivize(b)));
}

IntPoly squarefree_part(const IntPoly& f) {
    if (f.degree() <= 0) return IntPoly{1};
    IntPoly g = IntPoly::gcd(f, f.derivative());
    if (g.degree() == 0) return f.primitive_part();
    return primitivize(q_div(to_q(f), to_q(g)));
}

} // namespace

std::vector<IntPoly> squarefree_decomposition(const IntPoly& f) {
    std::vector<IntPoly> out;
    if (f.degree() <= 0) return out;
    // Yun's algorithm, carried out over Q so the c - b' identities stay exact.
    QPoly fq = to_q(f);
    QPoly fd = q_derivative(fq);
    QPoly a0 = q_gcd(fq, fd);
    QPoly b = q_div(fq, a0);
    QPoly c = q_div(fd, a0);
    QPoly d = q_sub(c, q_derivative(b));
    while (b.degree() > 0) {
        QPoly ai = q_gcd(b, d);
        out.push_back(primitivize(ai));
        b = q_div(b, ai);
        c = q_div(d, ai);
        d = q_sub(c, q_derivative(b));
    }
    // Constant factors in the middle are placeholders for multiplicities
    // that do not occur; only trailing ones are dropped.
    while (!out.empty() && out.back().degree() <= 0) out.pop_back();
    return out;
}

std::vector<IntPoly> sturm_sequence(const IntPoly& squarefree) {
    std::vector<IntPoly> seq;
    seq.push_back(squarefree.primitive_part());
    if (squarefree.degree() <= 0) return seq;
    seq.push_back(squarefree.derivative().primitive_part());
    while (seq.back().degree() > 0) {
        IntPoly next = -q_rem_primitive(seq[seq.size() - 2], seq.back());
        if (next.is_zero()) break;
        seq.push_back(std::move(next));
    }
    return seq;
}

int sturm_variations(const std::vector<IntPoly>& seq, const Rat& x) {
    int var = 0;
    int prev = 0;
    for (const IntPoly& p : seq) {
        int s = p.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

int sturm_count(const std::vector<IntPoly>& seq, const Rat& lo, const Rat& hi) {
    return sturm_variations(seq, lo) - sturm_variations(seq, hi);
}

Rat root_bound(const IntPoly& f) {
    if (f.degree() <= 0) return Rat(1);
    Rat mx(0);
    for (int i = 0; i < f.degree(); ++i) {
        Rat a(abs(f.coeff(i)));
        if (a > mx) mx = a;
    }
    return Rat(1) + mx / Rat(abs(f.leading()));
}

namespace {

Rat midpoint(const Rat& lo, const Rat& hi) {
    Rat m = (lo + hi) / 2;
    m.canonicalize();
    return m;
}

// Halve an isolating interval while keeping its single root inside.
void refine_once(RootInterval& iv, const std::vector<IntPoly>& seq) {
    if (iv.lo == iv.hi) return; // exact rational root, nothing to do
    Rat mid = midpoint(iv.lo, iv.hi);
    if (sturm_count(seq, iv.lo, mid) == 1)
        iv.hi = mid;
    else
        iv.lo = mid;
}

std::vector<RootInterval> isolate_squarefree(const IntPoly& sf, const std::vector<IntPoly>& seq) {
    std::vector<RootInterval> done;
    if (sf.degree() <= 0) return done;
    Rat b = root_bound(sf);
    std::vector<std::pair<RootInterval, int>> work;
    int total = sturm_count(seq, -b, b);
    if (total > 0) work.push_back({{-b, b}, total});
    while (!work.empty()) {
        auto [iv, cnt] = work.back();
        work.pop_back();
        if (cnt == 1) {
            done.push_back(iv);
            continue;
        }
        Rat mid = midpoint(iv.lo, iv.hi);
        int left = sturm_count(seq, iv.lo, mid);
        if (left > 0) work.push_back({{iv.lo, mid}, left});
        if (cnt - left > 0) work.push_back({{mid, iv.hi}, cnt - left});
    }
    std::sort(done.begin(), done.end(),
              [](const RootInterval& a, const RootInterval& b2) { return a.lo < b2.lo; });
    return done;
}

RootCertificate analyze(const IntPoly& f) {
    if (f.is_zero()) throw error(errc::ZeroPolynomial, "cannot certify the zero polynomial");
    RootCertificate cert;
    cert.polynomial = f;
    cert.square_free_part = squarefree_part(f);
    if (f.degree() <= 0) {
        cert.all_real = true;
        cert.all_nonpositive = true;
        return cert;
    }
    auto seq = sturm_sequence(cert.square_free_part);
    cert.isolating_intervals = isolate_squarefree(cert.square_free_part, seq);
    cert.distinct_real_root_count = static_cast<int>(cert.isolating_intervals.size());

    auto factors = squarefree_decomposition(f);
    std::vector<std::vector<IntPoly>> factor_seqs(factors.size());
    for (size_t k = 0; k < factors.size(); ++k)
        if (factors[k].degree() > 0) factor_seqs[k] = sturm_sequence(factors[k]);

    Int mult_sum(0);
    for (const RootInterval& iv : cert.isolating_intervals) {
        int mult = 0;
        for (size_t k = 0; k < factors.size(); ++k) {
            if (factors[k].degree() <= 0) continue;
            if (sturm_count(factor_seqs[k], iv.lo, iv.hi) == 1) {
                mult = static_cast<int>(k) + 1;
                break;
            }
        }
        assert(mult > 0);
        cert.multiplicities.push_back(mult);
        mult_sum += mult;
    }
    cert.all_real = (mult_sum == f.degree());
    Rat b = root_bound(cert.square_free_part);
    cert.all_nonpositive = (sturm_count(seq, Rat(0), b) == 0);
    return cert;
}

} // namespace

RootCertificate isolate_real_roots(const IntPoly& f) { return analyze(f); }

RootCertificate certify_real_rooted_nonpositive(const IntPoly& f) { return analyze(f); }

bool is_palindromic(const IntPoly& f, int d) {
    for (int i = 0; i <= d; ++i)
        if (f.coeff(i) != f.coeff(d - i)) return false;
    return f.degree() <= d;
}

IntPoly gamma_extract(const IntPoly& f, int d) {
    if (!is_palindromic(f, d))
        throw error(errc::NotPalindromic, "gamma_extract needs a palindromic input of center " +
                                              std::to_string(d) + "/2, got " + f.str());
    IntPoly residual = f;
    std::vector<Int> gamma;
    for (int i = 0; 2 * i <= d; ++i) {
        Int gi = residual.coeff(i);
        gamma.push_back(gi);
        if (gi != 0) residual -= one_plus_x_pow(d - 2 * i).times_x(i) * gi;
    }
    assert(residual.is_zero());
    return IntPoly(std::move(gamma));
}

IntPoly gamma_expand(const IntPoly& g, int d) {
    if (2 * g.degree() > d)
        throw error(errc::DegreeTooHigh, "gamma coefficients exceed center " + std::to_string(d) + "/2");
    IntPoly out;
    for (int i = 0; i <= g.degree(); ++i)
        out += one_plus_x_pow(d - 2 * i).times_x(i) * g.coeff(i);
    return out;
}

namespace {

struct RootRecord {
    RootInterval iv;
    const std::vector<IntPoly>* seq; // Sturm sequence of the defining square-free poly
    Int mult_f, mult_g;
};

bool overlaps(const RootInterval& a, const RootInterval& b) {
    // Half-open (lo, hi]; degenerate lo == hi means the point {lo}.
    if (a.lo == a.hi) return b.lo < a.lo && a.lo <= b.hi;
    if (b.lo == b.hi) return a.lo < b.lo && b.lo <= a.hi;
    return a.lo < b.hi && b.lo < a.hi;
}

// Multiplicity of the single f-root inside iv, read off the square-free
// decomposition of f.
int mult_in(const std::vector<IntPoly>& factors, std::vector<std::vector<IntPoly>>& seqs,
            const RootInterval& iv) {
    for (size_t k = 0; k < factors.size(); ++k) {
        if (factors[k].degree() <= 0) continue;
        if (seqs[k].empty()) seqs[k] = sturm_sequence(factors[k]);
        if (sturm_count(seqs[k], iv.lo, iv.hi) == 1) return static_cast<int>(k) + 1;
    }
    return 0;
}

} // namespace

bool certify_interlacing(const IntPoly& f, const IntPoly& g) {
    // Conventions first: zero polynomials and (near-)constant pairs interlace.
    if (f.is_zero() || g.is_zero()) return true;
    if (f.degree() <= 1 && g.degree() <= 1) return true;
    if (f.degree() == 0 || g.degree() == 0) return true;
    int df = f.degree(), dg = g.degree();
    if (df >= 2 && dg >= 2 && std::abs(df - dg) >= 2)
        throw error(errc::DegreeGap, "degrees " + std::to_string(df) + " and " + std::to_string(dg));

    RootCertificate cf = analyze(f);
    RootCertificate cg = analyze(g);
    if (!cf.all_real)
        throw error(errc::NotRealRooted, "left argument " + f.str());
    if (!cg.all_real)
        throw error(errc::NotRealRooted, "right argument " + g.str());

    IntPoly sf = cf.square_free_part;
    IntPoly sg = cg.square_free_part;
    IntPoly shared = IntPoly::gcd(sf, sg);
    IntPoly fa = shared.degree() > 0 ? primitivize(q_div(to_q(sf), to_q(shared))) : sf;
    IntPoly gb = shared.degree() > 0 ? primitivize(q_div(to_q(sg), to_q(shared))) : sg;

    struct Group {
        IntPoly poly;
        std::vector<IntPoly> seq;
        std::vector<RootInterval> ivs;
        bool in_f, in_g;
    };
    std::vector<Group> groups;
    for (const auto& [poly, in_f, in_g] :
         std::initializer_list<std::tuple<IntPoly, bool, bool>>{{fa, true, false},
                                                                {gb, false, true},
                                                                {shared, true, true}}) {
        if (poly.degree() <= 0) continue;
        Group grp{poly, sturm_sequence(poly), {}, in_f, in_g};
        grp.ivs = isolate_squarefree(grp.poly, grp.seq);
        groups.push_back(std::move(grp));
    }

    // Refine isolating intervals until no two (necessarily distinct) roots
    // share overlapping intervals, so the root order is decided exactly.
    struct Ref {
        RootInterval* iv;
        const Group* grp;
    };
    std::vector<Ref> refs;
    for (Group& grp : groups)
        for (RootInterval& iv : grp.ivs) refs.push_back({&iv, &grp});
    bool any;
    do {
        any = false;
        for (size_t i = 0; i < refs.size(); ++i)
            for (size_t j = i + 1; j < refs.size(); ++j) {
                if (refs[i].grp == refs[j].grp) continue; // same poly: already disjoint
                if (overlaps(*refs[i].iv, *refs[j].iv)) {
                    refine_once(*refs[i].iv, refs[i].grp->seq);
                    refine_once(*refs[j].iv, refs[j].grp->seq);
                    any = true;
                }
            }
    } while (any);

    auto f_factors = squarefree_decomposition(f);
    auto g_factors = squarefree_decomposition(g);
    std::vector<std::vector<IntPoly>> f_seqs(f_factors.size()), g_seqs(g_factors.size());

    std::vector<RootRecord> roots;
    for (Group& grp : groups)
        for (RootInterval& iv : grp.ivs) {
            RootRecord rec{iv, &grp.seq, Int(0), Int(0)};
            if (grp.in_f) rec.mult_f = mult_in(f_factors, f_seqs, iv);
            if (grp.in_g) rec.mult_g = mult_in(g_factors, g_seqs, iv);
            assert(rec.mult_f > 0 || rec.mult_g > 0);
            roots.push_back(std::move(rec));
        }
    // Descending order; intervals are pairwise disjoint so lo-order is total.
    std::sort(roots.begin(), roots.end(),
              [](const RootRecord& a, const RootRecord& b) { return a.iv.lo > b.iv.lo; });

    // Weak alternation with g's largest root largest is equivalent to:
    // for every threshold t, #roots(f) >= t is between #roots(g) >= t - 1
    // and #roots(g) >= t. Counts only change at roots, so checking after
    // each root (scanned downward) decides it.
    Int nf(0), ng(0);
    for (const RootRecord& rec : roots) {
        nf += rec.mult_f;
        ng += rec.mult_g;
        if (nf > ng || ng > nf + 1) return false;
    }
    return true;
}

bool wronskian_nonneg(const IntPoly& f, const IntPoly& g) {
    IntPoly w = f.derivative() * g - g.derivative() * f;
    if (w.is_zero()) return true;
    if (w.degree() % 2 != 0) return false;
    if (w.leading() < 0) return false;
    auto factors = squarefree_decomposition(w);
    for (size_t k = 0; k < factors.size(); ++k) {
        if ((k + 1) % 2 == 0) continue; // even multiplicity cannot flip the sign
        if (factors[k].degree() <= 0) continue;
        auto seq = sturm_sequence(factors[k]);
        Rat b = root_bound(factors[k]);
        if (sturm_count(seq, -b, b) > 0) return false;
    }
    // No odd-multiplicity real roots and a positive even-degree leading term:
    // w is nonnegative. Spot-check one rational point per sign-constant
    // region as a cheap cross-verification.
    IntPoly sw = squarefree_part(w);
    auto seq = sturm_sequence(sw);
    auto ivs = isolate_squarefree(sw, seq);
    Rat b = root_bound(sw);
    std::vector<Rat> samples{-b - 1, b + 1};
    for (size_t i = 0; i + 1 < ivs.size(); ++i) samples.push_back(midpoint(ivs[i].hi, ivs[i + 1].lo));
    for (const Rat& x : samples) assert(w.sign_at(x) >= 0);
    return true;
}

} // namespace chowkit
