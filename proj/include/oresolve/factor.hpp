#pragma once

// Exact factorization of univariate polynomials over Q: Yun squarefree
// decomposition, distinct/equal-degree splitting modulo a machine prime,
// Hensel lifting, bounded recombination. Also integer/rational roots and
// dispersion.

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "oresolve/poly.hpp"

namespace oresolve {

struct Factorization {
    Rat content;
    std::vector<std::pair<Poly, int>> factors;  // monic irreducible, multiplicity

    Poly expand() const {
        Poly r(content);
        for (const auto& [f, m] : factors)
            for (int i = 0; i < m; ++i) r *= f;
        return r;
    }
};

namespace detail {

using zpoly::Fp;
using zpoly::FpPoly;
using zpoly::ZP;

inline FpPoly fp_derivative(const Fp& F, const FpPoly& a) {
    if (a.size() <= 1) return {};
    FpPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
    zpoly::ftrim(r);
    return r;
}

// Distinct-degree then Cantor-Zassenhaus equal-degree splitting.
// Input monic squarefree mod p; output monic irreducible mod-p factors.
inline std::vector<FpPoly> factor_mod_p(const Fp& F, const FpPoly& f, Rng& rng) {
    std::vector<FpPoly> out;
    std::vector<std::pair<FpPoly, int>> stages;  // (product of irreducibles of degree k, k)
    FpPoly rest = f;
    Int p_int((long)0);
    mpz_set_ui(p_int.raw(), F.p);
    FpPoly h{0, 1};  // x
    int k = 0;
    while (zpoly::fdeg(rest) > 0) {
        ++k;
        if (2 * k > zpoly::fdeg(rest)) {
            stages.push_back({rest, zpoly::fdeg(rest)});
            break;
        }
        h = zpoly::fpowmod(F, h, p_int, rest);
        FpPoly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = F.sub(hx[1], 1);
        FpPoly g = zpoly::fgcd(F, hx, rest);
        if (zpoly::fdeg(g) > 0) {
            stages.push_back({g, k});
            rest = zpoly::fdiv(F, rest, g);
            h = zpoly::frem(F, h, rest);
        }
    }
    // equal-degree split
    for (auto& [prod, d] : stages) {
        std::vector<FpPoly> work{prod};
        while (!work.empty()) {
            FpPoly g = work.back();
            work.pop_back();
            int dg = zpoly::fdeg(g);
            if (dg == d) {
                zpoly::fmake_monic(F, g);
                out.push_back(g);
                continue;
            }
            // random split
            for (;;) {
                FpPoly r(dg);
                for (auto& c : r) c = rng.next() % F.p;
                r.push_back(1);
                Int e = (Int::pow(p_int, d) - Int(1)) / Int(2);
                FpPoly t = zpoly::fpowmod(F, r, e, g);
                if (t.empty()) continue;
                t[0] = F.sub(t[0], 1);
                FpPoly q = zpoly::fgcd(F, t, g);
                int dq = zpoly::fdeg(q);
                if (dq > 0 && dq < dg) {
                    work.push_back(q);
                    work.push_back(zpoly::fdiv(F, g, q));
                    break;
                }
            }
        }
    }
    return out;
}

// Arithmetic in (Z/m)[x] with symmetric representatives, m a prime power.
struct ZModM {
    Int m;
    Int reduce(const Int& a) const { return Int::mods(a, m); }
    ZP reduce(ZP a) const {
        for (auto& c : a) c = reduce(c);
        zpoly::trim(a);
        return a;
    }
    ZP mul(const ZP& a, const ZP& b) const { return reduce(zpoly::mul(a, b)); }
    ZP add(ZP a, const ZP& b) const {
        if (a.size() < b.size()) a.resize(b.size(), Int(0));
        for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
        return reduce(std::move(a));
    }
    ZP sub(ZP a, const ZP& b) const {
        if (a.size() < b.size()) a.resize(b.size(), Int(0));
        for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
        return reduce(std::move(a));
    }
    // divrem by monic b
    std::pair<ZP, ZP> divrem_monic(ZP a, const ZP& b) const {
        int db = zpoly::deg(b);
        assert(db >= 0 && b[db].is_one());
        a = reduce(std::move(a));
        int da = zpoly::deg(a);
        if (da < db) return {{}, a};
        ZP q(da - db + 1, Int(0));
        for (int k = da; k >= db; --k) {
            Int c = a[k];
            if (c.is_zero()) continue;
            q[k - db] = c;
            for (int i = 0; i <= db; ++i) a[k - db + i] = reduce(a[k - db + i] - c * b[i]);
        }
        zpoly::trim(a);
        return {q, a};
    }
};

// One quadratic Hensel step: f = g*h (mod m), s*g + t*h = 1 (mod m), h monic;
// returns lifted (g, h, s, t) valid mod m^2. (von zur Gathen-style.)
struct HenselPair {
    ZP g, h, s, t;
};

inline HenselPair hensel_step(const ZP& f, const HenselPair& in, const Int& m) {
    ZModM M{m * m};
    ZP e = M.sub(f, zpoly::mul(in.g, in.h));
    auto [q, r] = M.divrem_monic(zpoly::mul(in.s, e), in.h);
    ZP gstar = M.add(M.add(in.g, zpoly::mul(in.t, e)), zpoly::mul(q, in.g));
    ZP hstar = M.add(in.h, r);
    ZP b = M.sub(M.add(zpoly::mul(in.s, gstar), zpoly::mul(in.t, hstar)), ZP{Int(1)});
    auto [c, d] = M.divrem_monic(zpoly::mul(in.s, b), hstar);
    ZP sstar = M.sub(in.s, d);
    ZP tstar = M.sub(M.sub(in.t, zpoly::mul(in.t, b)), zpoly::mul(c, gstar));
    return {gstar, hstar, sstar, tstar};
}

// Extended gcd mod p for the initial Bezout data.
inline void fp_extgcd(const Fp& F, FpPoly a, FpPoly b, FpPoly& s, FpPoly& t) {
    FpPoly s0{1}, s1{}, t0{}, t1{1};
    zpoly::ftrim(a);
    zpoly::ftrim(b);
    while (zpoly::fdeg(b) >= 0) {
        FpPoly r;
        FpPoly q = zpoly::fdiv(F, a, b, &r);
        a = std::move(b);
        b = std::move(r);
        FpPoly s2 = s0, t2 = t0;
        // s2 -= q*s1 ; t2 -= q*t1
        FpPoly qs = zpoly::fmul(F, q, s1), qt = zpoly::fmul(F, q, t1);
        s2.resize(std::max(s2.size(), qs.size()), 0);
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = F.sub(s2[i], qs[i]);
        t2.resize(std::max(t2.size(), qt.size()), 0);
        for (size_t i = 0; i < qt.size(); ++i) t2[i] = F.sub(t2[i], qt[i]);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // a = gcd (constant for coprime inputs); scale to 1
    assert(zpoly::fdeg(a) == 0);
    std::uint64_t inv = F.inv(a[0]);
    for (auto& c : s0) c = F.mul(c, inv);
    for (auto& c : t0) c = F.mul(c, inv);
    s = s0;
    t = t0;
}

inline ZP from_fp(const Fp& F, const FpPoly& a, const Int& /*m*/) {
    ZP r(a.size());
    Int p((long)0);
    mpz_set_ui(p.raw(), F.p);
    for (size_t i = 0; i < a.size(); ++i) {
        Int v((long)0);
        mpz_set_ui(v.raw(), a[i]);
        r[i] = Int::mods(v, p);
    }
    return r;
}

// Balanced product tree of the modular factors with Bezout data per split.
// All nodes are lifted one quadratic step at a time so that every child's f
// (its parent's g or h) is known to the same precision.
struct HenselNode {
    size_t lo, mid, hi;  // split of the factor range
    HenselPair pair;
    int left = -1, right = -1;  // child node indices (-1: leaf range)
};

inline int build_hensel_tree(const Fp& F, const std::vector<FpPoly>& parts, size_t lo, size_t hi,
                             const Int& p, std::vector<HenselNode>& nodes) {
    if (hi - lo <= 1) return -1;
    size_t mid = lo + (hi - lo) / 2;
    FpPoly G{1}, H{1};
    for (size_t i = lo; i < mid; ++i) G = zpoly::fmul(F, G, parts[i]);
    for (size_t i = mid; i < hi; ++i) H = zpoly::fmul(F, H, parts[i]);
    FpPoly s, t;
    fp_extgcd(F, G, H, s, t);
    HenselNode node;
    node.lo = lo;
    node.mid = mid;
    node.hi = hi;
    node.pair = {from_fp(F, G, p), from_fp(F, H, p), from_fp(F, s, p), from_fp(F, t, p)};
    int idx = (int)nodes.size();
    nodes.push_back(node);
    int l = build_hensel_tree(F, parts, lo, mid, p, nodes);
    int r = build_hensel_tree(F, parts, mid, hi, p, nodes);
    nodes[idx].left = l;
    nodes[idx].right = r;
    return idx;
}

inline void hensel_lift_level(std::vector<HenselNode>& nodes, int idx, const ZP& f, const Int& m) {
    if (idx < 0) return;
    HenselNode& node = nodes[idx];
    node.pair = hensel_step(f, node.pair, m);
    hensel_lift_level(nodes, node.left, node.pair.g, m);
    hensel_lift_level(nodes, node.right, node.pair.h, m);
}

inline void collect_hensel_leaves(const std::vector<HenselNode>& nodes, int idx, const ZP& f,
                                  std::vector<ZP>& out) {
    if (idx < 0) {
        out.push_back(f);
        return;
    }
    const HenselNode& node = nodes[idx];
    collect_hensel_leaves(nodes, node.left, node.pair.g, out);
    collect_hensel_leaves(nodes, node.right, node.pair.h, out);
}

// Returns the modulus the leaf factors are valid at (>= target).
inline Int hensel_tree(const Fp& Fprime, const ZP& f_monic_big, const std::vector<FpPoly>& parts,
                       const Int& p, const Int& target, std::vector<ZP>& out) {
    Int m = p;
    if (parts.size() == 1) {
        out.push_back(f_monic_big);
        while (m < target) m = m * m;
        return m;
    }
    std::vector<HenselNode> nodes;
    int root = build_hensel_tree(Fprime, parts, 0, parts.size(), p, nodes);
    while (m < target) {
        hensel_lift_level(nodes, root, f_monic_big, m);
        m = m * m;
    }
    collect_hensel_leaves(nodes, root, f_monic_big, out);
    return m;
}

// Factor a primitive squarefree integer polynomial, deg >= 1.
inline std::vector<ZP> factor_squarefree_z(const ZP& f, Rng& rng) {
    int n = zpoly::deg(f);
    if (n == 1) return {f};
    // pick a prime keeping f squarefree, with few modular factors
    Fp F{0};
    std::vector<FpPoly> best_parts;
    int tried = 0;
    for (std::uint64_t pv : zpoly::prime_pool()) {
        Fp Fc{pv};
        if (Int::abs(f[n]).mod_ui(pv) == 0) continue;
        FpPoly fp = zpoly::to_fp(Fc, f);
        FpPoly d = fp_derivative(Fc, fp);
        if (zpoly::fdeg(zpoly::fgcd(Fc, fp, d)) != 0) continue;
        zpoly::fmake_monic(Fc, fp);
        std::vector<FpPoly> parts = factor_mod_p(Fc, fp, rng);
        if (best_parts.empty() || parts.size() < best_parts.size()) {
            F = Fc;
            best_parts = std::move(parts);
        }
        if (++tried >= 3 || best_parts.size() == 1) break;
    }
    assert(F.p != 0 && "no usable prime for factorization");
    if (best_parts.size() == 1) return {f};

    // Mignotte-style bound on factor coefficients (times lc)
    double log2norm = 0;
    double maxc = 0;
    for (const Int& c : f) {
        double b = (double)c.bits();
        maxc = std::max(maxc, b);
    }
    log2norm = maxc + 0.5 * std::log2((double)n + 1);
    double log2bound = n + log2norm + (double)f[n].bits() + 2;
    Int p((long)0);
    mpz_set_ui(p.raw(), F.p);
    Int target(1);
    unsigned long e = (unsigned long)(log2bound / std::log2((double)F.p)) + 1;
    target = Int::pow(p, e);

    // Lift monic factors against the monic image of f; exactness is restored by
    // the final trial division against f itself.
    Int lc = f[n];
    Int big = target * target;  // comfortably above every pair modulus in the tree
    ZModM Mbig{big};
    Int lcinv_big;
    int ok = mpz_invert(lcinv_big.raw(), lc.raw(), big.raw());
    assert(ok);
    (void)ok;
    ZP f_monic(n + 1);
    for (int i = 0; i <= n; ++i) f_monic[i] = Mbig.reduce(f[i] * lcinv_big);

    std::vector<ZP> lifted;
    Int lift_mod = hensel_tree(F, f_monic, best_parts, p, target, lifted);

    // recombination (Zassenhaus)
    std::vector<ZP> result;
    std::vector<ZP> pool = lifted;
    ZP rest = f;
    ZModM Mt{lift_mod};
    auto try_subset = [&](const std::vector<size_t>& idx) -> bool {
        ZP prod{rest[zpoly::deg(rest)]};  // lc(rest)
        for (size_t i : idx) prod = Mt.mul(prod, pool[i]);
        // primitive part of symmetric lift
        Int ct = zpoly::content(prod);
        ZP cand = prod;
        if (!ct.is_zero() && !ct.is_one())
            for (auto& c : cand) c = Int::divexact(c, ct);
        if (zpoly::deg(cand) < 1) return false;
        if (cand.back().sgn() < 0)
            for (auto& c : cand) c = -c;
        // trial divide rest by cand over Z
        ZP r = rest;
        int dc = zpoly::deg(cand);
        ZP q;
        {
            int dr = zpoly::deg(r);
            if (dr < dc) return false;
            q.assign(dr - dc + 1, Int(0));
            for (int k = dr; k >= dc; --k) {
                int ik = k;
                Int c = (ik < (int)r.size()) ? r[ik] : Int(0);
                if (c.is_zero()) continue;
                if (!c.divisible_by(cand[dc])) return false;
                Int qq = Int::divexact(c, cand[dc]);
                q[k - dc] = qq;
                for (int i = 0; i <= dc; ++i) r[k - dc + i] -= qq * cand[i];
            }
            if (zpoly::deg(r) >= 0) return false;
        }
        result.push_back(cand);
        zpoly::trim(q);
        rest = q;
        // drop used modular factors
        std::vector<ZP> np;
        for (size_t i = 0; i < pool.size(); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) np.push_back(pool[i]);
        pool = std::move(np);
        return true;
    };

    size_t csize = 1;
    while (2 * csize <= pool.size()) {
        bool advanced = false;
        // enumerate csize-subsets
        std::vector<size_t> idx(csize);
        for (size_t i = 0; i < csize; ++i) idx[i] = i;
        for (;;) {
            if (try_subset(idx)) {
                advanced = true;
                break;  // pool changed; restart this size
            }
            // next combination
            int i = (int)csize - 1;
            while (i >= 0 && idx[i] == pool.size() - csize + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (size_t j = i + 1; j < csize; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!advanced) ++csize;
    }
    if (zpoly::deg(rest) >= 1) result.push_back(rest);
    return result;
}

}  // namespace detail

// Yun squarefree decomposition over Q (returned parts are monic-normalized
// by the gcd; callers re-primitivize as needed).
inline std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p) {
    std::vector<std::pair<Poly, int>> out;
    Poly f = Poly::from_integer(p.to_integer().second);
    Poly d = f.derivative();
    Poly a = Poly::gcd(f, d);
    Poly b = f / a, c = d / a;
    int i = 1;
    while (b.degree() > 0) {
        Poly z = c - b.derivative();
        Poly g = Poly::gcd(b, z);
        if (g.degree() > 0) out.push_back({g, i});
        b = b / g;
        c = z / g;
        ++i;
    }
    return out;
}

// Full irreducible factorization over Q. Factors are monic; the rational
// content carries the rest. Zero input rejected.
inline Factorization factor(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("factor: zero polynomial");
    Factorization out;
    if (p.is_constant()) {
        out.content = p.coeff(0);
        return out;
    }
    auto [content, zp] = p.to_integer();
    out.content = content;
    static thread_local Rng rng(0x5eed5eedULL);
    for (auto& [sqf, mult] : squarefree_decomposition(Poly::from_integer(zp))) {
        auto zsq = sqf.to_integer().second;
        for (const auto& zf : detail::factor_squarefree_z(zsq, rng)) {
            Poly f = Poly::from_integer(zf);
            Rat lc = f.leading();
            out.content = out.content * Rat::pow(lc, mult);
            out.factors.push_back({f.monic(), mult});
        }
    }
    // canonical order: by degree, then lexicographic by coefficients
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = a.first.degree(); i >= 0; --i) {
            if (a.first.coeff(i) != b.first.coeff(i)) return a.first.coeff(i) < b.first.coeff(i);
        }
        return false;
    });
    return out;
}

// All integer roots. Zero polynomial rejected.
inline std::set<Int> integer_roots(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("integer_roots: zero polynomial");
    std::set<Int> out;
    if (p.is_constant()) return out;
    for (const auto& [f, m] : factor(p).factors)
        if (f.degree() == 1 && f.coeff(0).is_integer()) out.insert(-f.coeff(0).num());
    return out;
}

// All rational roots.
inline std::vector<Rat> rational_roots(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("rational_roots: zero polynomial");
    std::vector<Rat> out;
    if (p.is_constant()) return out;
    for (const auto& [f, m] : factor(p).factors)
        if (f.degree() == 1) out.push_back(-f.coeff(0));
    return out;
}

// Largest j >= 0 with gcd(a(x), b(x+j)) nonconstant, via matching of
// irreducible factors under integer shifts.
inline std::optional<long> dispersion(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) throw std::domain_error("dispersion: zero input");
    if (a.is_constant() || b.is_constant()) return std::nullopt;
    auto fa = factor(a).factors;
    auto fb = factor(b).factors;
    std::optional<long> best;
    for (const auto& [qa, ma] : fa) {
        for (const auto& [qb, mb] : fb) {
            int d = qa.degree();
            if (d != qb.degree()) continue;
            // qb(x + j) = qa(x): compare subleading coefficients
            Rat diff = qa.coeff(d - 1) - qb.coeff(d - 1);
            Rat jr = diff / Rat((long)d);
            if (!jr.is_integer()) continue;
            if (jr.sgn() < 0) continue;
            if (!jr.num().fits_long()) continue;
            long j = jr.num().to_long();
            if (qb.shifted(Rat(j)) == qa) {
                if (!best || j > *best) best = j;
            }
        }
    }
    return best;
}

// Oracle-grade dispersion through Res_x(a(x), b(x+j)) interpolated in j.
// Intended for small test instances.
inline std::optional<long> dispersion_via_resultant(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) throw std::domain_error("dispersion: zero input");
    if (a.is_constant() || b.is_constant()) return std::nullopt;
    int dj = a.degree() * b.degree();
    // interpolate R(j) at j = 0..dj
    std::vector<Rat> xs, ys;
    for (int j = 0; j <= dj; ++j) {
        xs.push_back(Rat(j));
        ys.push_back(resultant(a, b.shifted(Rat(j))));
    }
    // Lagrange interpolation
    Poly R;
    for (int i = 0; i <= dj; ++i) {
        Poly term(ys[i]);
        for (int k = 0; k <= dj; ++k) {
            if (k == i) continue;
            term = term * Poly(std::vector<Rat>{-xs[k], Rat(1)}).scaled((xs[i] - xs[k]).inv());
        }
        R += term;
    }
    if (R.is_zero()) {
        // common factor at every shift cannot happen for nonzero a, b
        return std::nullopt;
    }
    std::optional<long> best;
    for (const Int& z : integer_roots(R)) {
        if (z.sgn() >= 0 && z.fits_long()) {
            long j = z.to_long();
            if (!best || j > *best) best = j;
        }
    }
    return best;
}

}  // namespace oresolve
