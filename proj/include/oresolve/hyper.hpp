#pragma once

// Hypergeometric machinery: polynomial solutions of twisted scalar equations
// and systems (with the indicial degree bound at infinity), candidate-type
// enumeration from trailing/leading coefficient factors, and order-d right
// factor search through the exterior-power operator with pluggable candidate
// filters, counters, and a per-candidate trace.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oresolve/dmod.hpp"
#include "oresolve/shiftclass.hpp"

namespace oresolve {

inline long default_degree_cap() {
    if (const char* env = std::getenv("ORESOLVE_DEGREE_CAP")) {
        long v = std::atol(env);
        if (v > 0) return v;
    }
    return 200;
}

namespace detail_hyper {

// nullspace of a dense rational matrix (rows x cols), basis of column vectors
inline std::vector<std::vector<Rat>> q_nullspace(std::vector<std::vector<Rat>> m, size_t cols) {
    size_t rows = m.size();
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        Rat inv = m[r][c].inv();
        for (size_t j = c; j < cols; ++j)
            if (!m[r][j].is_zero()) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j)
                if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<bool> is_piv(cols, false);
    for (size_t c : pivots) is_piv[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free] = Rat(1);
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace detail_hyper

// Indicial degree bound at infinity for sum_i F_i(x) C(x+i) = 0: rewrite in
// the difference operator basis and take the largest nonnegative integer root.
// nullopt: no nonzero polynomial solution exists.
inline std::optional<long> polynomial_degree_bound(const std::vector<Poly>& f) {
    int m = (int)f.size() - 1;
    if (m < 0) return std::nullopt;
    // G_k = sum_{i>=k} binom(i,k) F_i
    std::vector<Poly> g(m + 1);
    for (int k = 0; k <= m; ++k)
        for (int i = k; i <= m; ++i)
            g[k] += f[i].scaled(Rat(Int::binomial(i, k), Int(1)));
    int b = -1;
    bool any = false;
    for (int k = 0; k <= m; ++k) {
        if (g[k].is_zero()) continue;
        any = true;
        b = std::max(b, g[k].degree() - k);
    }
    if (!any) return std::nullopt;
    // ind(c) = sum_{deg Gk - k = b} lc(Gk) * c (c-1) ... (c-k+1)
    Poly ind;
    for (int k = 0; k <= m; ++k) {
        if (g[k].is_zero() || g[k].degree() - k != b) continue;
        Poly ff(Rat(1));
        for (int i = 0; i < k; ++i) ff = ff * Poly(std::vector<Rat>{Rat(-i), Rat(1)});
        ind += ff.scaled(g[k].leading());
    }
    if (ind.is_zero()) return std::nullopt;  // cannot happen: leading level nonempty
    std::optional<long> best;
    for (const Int& z : integer_roots(ind))
        if (z.sgn() >= 0 && z.fits_long() && (!best || z.to_long() > *best)) best = z.to_long();
    return best;
}

// All polynomial solutions of sum_i F_i(x) C(x+i) = 0 with deg C <= bound.
inline std::vector<Poly> polynomial_solutions_scalar(const std::vector<Poly>& f, long bound) {
    if (bound < 0) return {};
    int m = (int)f.size() - 1;
    int maxdeg = 0;
    for (const auto& p : f) maxdeg = std::max(maxdeg, p.degree());
    size_t cols = bound + 1;
    size_t rows = maxdeg + bound + 1;
    std::vector<std::vector<Rat>> mat(rows, std::vector<Rat>(cols, Rat(0)));
    for (long c = 0; c <= bound; ++c) {
        // coefficient column for C = x^c: sum_i F_i(x) (x+i)^c
        Poly acc;
        for (int i = 0; i <= m; ++i) {
            if (f[i].is_zero()) continue;
            Poly xc(Rat(1));
            for (long t = 0; t < c; ++t) xc = xc * Poly(std::vector<Rat>{Rat(i), Rat(1)});
            acc += f[i] * xc;
        }
        for (int rix = 0; rix <= acc.degree(); ++rix) mat[rix][c] = acc.coeff(rix);
    }
    std::vector<Poly> out;
    for (auto& v : detail_hyper::q_nullspace(std::move(mat), cols)) out.push_back(Poly(std::move(v)));
    return out;
}

enum class SolveStatus { complete, capped };

struct PolySolutions {
    std::vector<std::vector<Poly>> basis;  // vectors of polynomials
    SolveStatus status = SolveStatus::complete;
};

// All polynomial vector solutions of shift(P, 1) = lambda^{-1} A P, degree
// bound derived from per-coordinate scalarization; cap guards the bound.
inline PolySolutions polynomial_solutions(const Mat& a, const RatFunc& lambda,
                                          std::optional<long> degree_cap = std::nullopt) {
    if (!a.is_square()) throw std::domain_error("polynomial_solutions: square matrix required");
    if (lambda.is_zero()) throw std::domain_error("polynomial_solutions: zero lambda");
    long cap = degree_cap.value_or(default_degree_cap());
    size_t s = a.rows();
    Mat b = a.scaled(lambda.inv());

    // per-coordinate scalar annihilators via functional chains
    // rows w_k = e_j^T B(x+k-1) ... B(x); dependency gives the operator.
    PolySolutions out;
    long bound = -1;
    bool inconclusive = false;
    for (size_t j = 0; j < s; ++j) {
        IncrementalSpan span(s);
        std::vector<RatFunc> w(s);
        w[j] = RatFunc(1);
        std::vector<std::vector<RatFunc>> ws;
        std::optional<std::vector<RatFunc>> dep;
        for (size_t k = 0;; ++k) {
            dep = span.add(w);
            if (dep) {
                // scalar operator: z(x + order) - sum dep_k z(x+k) = 0
                size_t order = k;
                std::vector<RatFunc> cs(order + 1);
                for (size_t i = 0; i < order; ++i) cs[i] = -(*dep)[i];
                cs[order] = RatFunc(1);
                // clear denominators to polynomial coefficients
                Poly den(Rat(1));
                for (auto& c : cs) den = Poly::lcm(den, c.den());
                std::vector<Poly> f(order + 1);
                for (size_t i = 0; i <= order; ++i) f[i] = cs[i].num() * (den / cs[i].den());
                auto nb = polynomial_degree_bound(f);
                if (nb) bound = std::max(bound, *nb);
                break;
            }
            ws.push_back(w);
            // w <- shifted w times B: row functional composition
            std::vector<RatFunc> nw(s);
            for (size_t col = 0; col < s; ++col) {
                RatFunc acc;
                for (size_t mid = 0; mid < s; ++mid) {
                    if (w[mid].is_zero()) continue;
                    const RatFunc& bm = b.at(mid, col);
                    if (bm.is_zero()) continue;
                    acc += w[mid].shifted(Rat(1)) * bm;
                }
                nw[col] = acc;
            }
            // note: functional evolves by w_{k+1}(x) = w_k(x+1) B(x)
            w = std::move(nw);
        }
    }
    if (bound < 0) return out;  // no coordinate admits a nonzero polynomial
    if (bound > cap) {
        bound = cap;
        inconclusive = true;
    }

    // direct linear solve for P with deg <= bound:
    // den(x) P(x+1) - N(x) P(x) = 0 where B = N / den entrywise-cleared
    Poly den(Rat(1));
    for (size_t i = 0; i < s; ++i)
        for (size_t j = 0; j < s; ++j) den = Poly::lcm(den, b.at(i, j).den());
    std::vector<std::vector<Poly>> n(s, std::vector<Poly>(s));
    int maxdeg = den.degree();
    for (size_t i = 0; i < s; ++i)
        for (size_t j = 0; j < s; ++j) {
            n[i][j] = b.at(i, j).num() * (den / b.at(i, j).den());
            maxdeg = std::max(maxdeg, n[i][j].degree());
        }
    size_t cols = s * (bound + 1);
    size_t rows_per_coord = maxdeg + bound + 2;
    std::vector<std::vector<Rat>> mat(s * rows_per_coord, std::vector<Rat>(cols, Rat(0)));
    for (size_t pj = 0; pj < s; ++pj) {
        for (long c = 0; c <= bound; ++c) {
            size_t col = pj * (bound + 1) + c;
            // contribution of P_pj = x^c to equation row i:
            //   i == pj: den(x) (x+1)^c
            //   all i: - n[i][pj] x^c
            Poly x1c(Rat(1));
            for (long t = 0; t < c; ++t) x1c = x1c * Poly(std::vector<Rat>{Rat(1), Rat(1)});
            for (size_t i = 0; i < s; ++i) {
                Poly contrib = -(n[i][pj] * Poly::monomial(Rat(1), c));
                if (i == pj) contrib += den * x1c;
                for (int rix = 0; rix <= contrib.degree(); ++rix)
                    mat[i * rows_per_coord + rix][col] += contrib.coeff(rix);
            }
        }
    }
    for (auto& v : detail_hyper::q_nullspace(std::move(mat), cols)) {
        std::vector<Poly> vec(s);
        for (size_t j = 0; j < s; ++j) {
            std::vector<Rat> cs(v.begin() + j * (bound + 1), v.begin() + (j + 1) * (bound + 1));
            vec[j] = Poly(std::move(cs));
        }
        out.basis.push_back(std::move(vec));
    }
    out.status = inconclusive ? SolveStatus::capped : SolveStatus::complete;
    return out;
}

// --- candidate types -------------------------------------------------------

enum class CandidateState { pending, discarded_filter, requires_extension, tested_dead,
                            tested_solution, tested_factor };

struct CandidateType {
    RatFunc lambda;  // z * A / B, a representative of det(R) up to ~
    Rat z = Rat(1);
    Poly a, b;
    std::string provenance;
    CandidateState state = CandidateState::pending;
    std::optional<long> degree_bound;
};

struct CandidateStats {
    long total = 0;
    long after_filter = 0;
    long tested = 0;
    long factors_found = 0;
    long requires_extension = 0;
    long degenerate = 0;
    bool incomplete = false;
};

inline long default_candidate_budget() {
    if (const char* env = std::getenv("ORESOLVE_CANDIDATE_BUDGET")) {
        long v = std::atol(env);
        if (v > 0) return v;
    }
    return 200000;
}

// Smallest integer beyond every nonnegative integer root of the numerators and
// denominators of the given data; sequences seeded there never hit a pole or
// leading-coefficient zero again.
inline long sequence_safe_start(const std::vector<OrePoly>& ops,
                                const std::vector<RatFunc>& extra = {}) {
    long safe = 0;
    auto scan = [&](const RatFunc& f) {
        if (f.is_zero()) return;
        for (const Poly* p : {&f.num(), &f.den()}) {
            if (p->is_constant()) continue;
            for (const Int& z : integer_roots(*p))
                if (z.sgn() >= 0 && z.fits_long()) safe = std::max(safe, z.to_long() + 1);
        }
    };
    for (const auto& l : ops)
        for (const auto& c : l.coeffs()) scan(c);
    for (const auto& f : extra) scan(f);
    return safe;
}

// Enumeration-level restriction available when the determinant class of the
// sought factor is pinned (section factoring): z of the candidate is forced
// per degree pair, so the z-roots enumeration collapses to one evaluation.
struct CandidateEnumHint {
    Rat det_z;  // constant part of the pinned determinant class
    long p;     // section step: required z = det_z * p^(deg A - deg B)
};

// Candidate types for the hypergeometric solutions of (the companion system
// of) W: pairs A | trailing(W), B | leading(W)(x - ord + 1) with constants z
// solving the leading cancellation constraint. Pairs violating the normal-form
// coprimality gcd(A(x), B(x+j)) = 1 (j >= 0) are redundant and pruned during
// enumeration; a pair-visit budget guards combinatorial blowups.
inline std::vector<CandidateType> candidate_types_of_operator(
    const OrePoly& w_in, CandidateStats* stats = nullptr,
    const std::optional<CandidateEnumHint>& hint = std::nullopt,
    std::optional<long> budget_opt = std::nullopt) {
    OrePoly w = w_in.primitive_integral();
    int n = w.order();
    std::vector<Poly> a(n + 1);
    for (int i = 0; i <= n; ++i) a[i] = w.coeff(i).num();
    Factorization ftrail = factor(a[0]);
    Factorization flead = factor(a[n].shifted(Rat(-(long)(n - 1))));
    size_t nt = ftrail.factors.size(), nl = flead.factors.size();

    // conflict[i][j]: trailing factor i equals a nonnegative shift of leading
    // factor j; valid pairs use at most one side of each such match
    std::vector<std::vector<bool>> conflict(nt, std::vector<bool>(nl, false));
    for (size_t i = 0; i < nt; ++i)
        for (size_t j = 0; j < nl; ++j) {
            const Poly& qa = ftrail.factors[i].first;
            const Poly& qb = flead.factors[j].first;
            if (qa.degree() != qb.degree()) continue;
            int d = qa.degree();
            Rat diff = qa.coeff(d - 1) - qb.coeff(d - 1);
            Rat jr = diff / Rat((long)d);
            if (!jr.is_integer() || jr.sgn() < 0 || !jr.num().fits_long()) continue;
            if (qb.shifted(Rat(jr.num().to_long())) == qa) conflict[i][j] = true;
        }

    long budget = budget_opt.value_or(default_candidate_budget());
    std::vector<CandidateType> out;
    std::vector<int> ea(nt, 0), eb(nl, 0);

    auto emit_pair = [&](int dA, int dB) {
        // leading-cancellation constraint on z
        int dmax = -1;
        for (int i = 0; i <= n; ++i) {
            if (a[i].is_zero()) continue;
            dmax = std::max(dmax, a[i].degree() + i * dA + (n - i) * dB);
        }
        Poly pz;
        for (int i = 0; i <= n; ++i) {
            if (a[i].is_zero()) continue;
            if (a[i].degree() + i * dA + (n - i) * dB == dmax)
                pz += Poly::monomial(a[i].leading(), i);
        }
        if (pz.is_zero() || pz.degree() == 0) return;
        std::vector<Rat> zs;
        if (hint) {
            Rat need = hint->det_z * Rat::pow(Rat(hint->p), dA - dB);
            if (!need.is_zero() && pz.eval(need).is_zero()) zs.push_back(need);
        } else {
            bool has_irrational = false;
            for (auto& [qf, mqq] : factor(pz).factors)
                if (qf.degree() >= 2) has_irrational = true;
            if (has_irrational && stats) ++stats->requires_extension;
            zs = rational_roots(pz);
        }
        if (zs.empty()) return;
        Poly A(Rat(1)), B(Rat(1));
        for (size_t i = 0; i < nt; ++i)
            for (int t = 0; t < ea[i]; ++t) A = A * ftrail.factors[i].first;
        for (size_t j = 0; j < nl; ++j)
            for (int t = 0; t < eb[j]; ++t) B = B * flead.factors[j].first;
        for (const Rat& z : zs) {
            if (z.is_zero()) continue;
            CandidateType c;
            c.z = z;
            c.a = A;
            c.b = B;
            c.lambda = RatFunc(A.scaled(z), B);
            c.provenance = "A=" + A.str() + " B=" + B.str() + " z=" + z.str();
            out.push_back(std::move(c));
        }
    };

    // recursive enumeration with conflict-pruned B-subtrees
    std::function<void(size_t, int)> enum_b;
    std::function<void(size_t, int)> enum_a;
    bool exhausted = false;
    enum_b = [&](size_t j, int dB) {
        if (exhausted) return;
        if (j == nl) {
            int dA = 0;
            for (size_t i = 0; i < nt; ++i) dA += ea[i] * ftrail.factors[i].first.degree();
            if (--budget < 0) {
                exhausted = true;
                return;
            }
            emit_pair(dA, dB);
            return;
        }
        bool blocked = false;
        for (size_t i = 0; i < nt && !blocked; ++i)
            if (ea[i] && conflict[i][j]) blocked = true;
        int maxe = blocked ? 0 : flead.factors[j].second;
        for (int e = 0; e <= maxe && !exhausted; ++e) {
            eb[j] = e;
            enum_b(j + 1, dB + e * flead.factors[j].first.degree());
        }
        eb[j] = 0;
    };
    enum_a = [&](size_t i, int) {
        if (exhausted) return;
        if (i == nt) {
            enum_b(0, 0);
            return;
        }
        for (int e = 0; e <= ftrail.factors[i].second && !exhausted; ++e) {
            ea[i] = e;
            enum_a(i + 1, 0);
        }
        ea[i] = 0;
    };
    enum_a(0, 0);
    if (stats) {
        stats->total = (long)out.size();
        if (exhausted) stats->incomplete = true;
    }
    return out;
}

// Candidate determinants for order-d right factors of L: for every monic
// order-d right factor R, some listed candidate is ~ det(R).
inline std::vector<CandidateType> candidate_types(const OrePoly& l, int d);

struct HypergeometricSolution {
    RatFunc ratio;      // z (A/B) C(x+1)/C(x)
    RatFunc shift_free; // z A / B
    Poly c;
};

using CandidateFilter = std::function<bool(const CandidateType&)>;
using CandidateTrace = std::function<void(const CandidateType&, const std::string&)>;

struct HyperOptions {
    CandidateFilter filter;     // keep candidate when true (or empty)
    CandidateTrace trace;       // per-candidate reporting
    std::optional<long> degree_cap;
    std::optional<CandidateEnumHint> enum_hint;  // set only alongside filter
    std::optional<long> candidate_budget;
};

// All hypergeometric solutions of W(u) = 0 grouped by candidate, with stats.
inline std::vector<HypergeometricSolution> hypergeometric_solutions(const OrePoly& w_in,
                                                                    CandidateStats& stats,
                                                                    const HyperOptions& opts = {}) {
    OrePoly w = w_in.primitive_integral();
    int n = w.order();
    std::vector<Poly> a(n + 1);
    for (int i = 0; i <= n; ++i) a[i] = w.coeff(i).num();
    std::vector<CandidateType> cands =
        candidate_types_of_operator(w, &stats, opts.enum_hint, opts.candidate_budget);
    long cap = opts.degree_cap.value_or(default_degree_cap());

    // filter, then compute degree bounds (cheap kill before linear algebra)
    std::vector<CandidateType*> live;
    for (auto& c : cands) {
        if (opts.filter && !opts.filter(c)) {
            c.state = CandidateState::discarded_filter;
            if (opts.trace) opts.trace(c, "discarded by filter");
            continue;
        }
        live.push_back(&c);
    }
    stats.after_filter = (long)live.size();

    std::vector<HypergeometricSolution> out;
    struct Ranked {
        long bound;
        CandidateType* c;
        std::vector<Poly> f;
    };
    std::vector<Ranked> ranked;
    const Poly* last_a = nullptr;
    const Poly* last_b = nullptr;
    std::vector<Poly> apre(n + 1), bsuf(n + 2);
    for (CandidateType* c : live) {
        // F_i = a_i z^i prod_{j<i} A(x+j) prod_{i<=j<n} B(x+j); the shifted
        // products depend only on (A, B) and candidates arrive grouped by pair
        if (!last_a || !(*last_a == c->a) || !(*last_b == c->b)) {
            apre[0] = Poly(Rat(1));
            for (int j = 0; j < n; ++j) apre[j + 1] = apre[j] * c->a.shifted(Rat(j));
            bsuf[n] = Poly(Rat(1));
            for (int j = n - 1; j >= 0; --j) bsuf[j] = bsuf[j + 1] * c->b.shifted(Rat(j));
            last_a = &c->a;
            last_b = &c->b;
        }
        std::vector<Poly> f(n + 1);
        Rat zp(1);
        for (int i = 0; i <= n; ++i) {
            f[i] = (a[i] * apre[i] * bsuf[i]).scaled(zp);
            zp *= c->z;
        }
        auto bound = polynomial_degree_bound(f);
        if (!bound) {
            c->state = CandidateState::tested_dead;
            ++stats.tested;
            if (opts.trace) opts.trace(*c, "no degree bound; dead");
            continue;
        }
        c->degree_bound = *bound;
        ranked.push_back({*bound, c, std::move(f)});
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const Ranked& x, const Ranked& y) { return x.bound < y.bound; });
    for (auto& [bound0, c, f] : ranked) {
        long bound = bound0;
        if (bound > cap) {
            bound = cap;
            stats.incomplete = true;
        }
        ++stats.tested;
        auto sols = polynomial_solutions_scalar(f, bound);
        if (sols.empty()) {
            c->state = CandidateState::tested_dead;
            if (opts.trace)
                opts.trace(*c, "bound " + std::to_string(bound) + "; no polynomial solution");
            continue;
        }
        c->state = CandidateState::tested_solution;
        if (opts.trace)
            opts.trace(*c, "bound " + std::to_string(bound) + "; " +
                               std::to_string(sols.size()) + " solution(s)");
        for (auto& cc : sols) {
            HypergeometricSolution h;
            h.shift_free = RatFunc(c->a.scaled(c->z), c->b);
            h.ratio = h.shift_free * RatFunc(cc.shifted(Rat(1)), cc);
            h.c = cc;
            out.push_back(std::move(h));
        }
    }
    return out;
}

struct RightFactors {
    std::vector<OrePoly> factors;  // monic order-d right factors
    CandidateStats stats;
};

// All monic order-d right factors of L found through hypergeometric solutions
// of the d-th exterior power. Every returned factor is division-verified.
inline RightFactors right_factors(const OrePoly& l, int d, const HyperOptions& opts = {}) {
    if (l.is_zero() || d < 1 || d >= std::max(l.order(), 1))
        throw std::domain_error("right_factors: need 1 <= d < ord(L)");
    if (!l.is_normalized())
        throw std::domain_error("right_factors: operator must be normalized (a_0 != 0)");
    RightFactors out;
    int n = l.order();

    auto push_factor = [&](const OrePoly& r) {
        for (const auto& f : out.factors)
            if (f == r) return;
        if (right_divide(l, r).second.is_zero()) {
            out.factors.push_back(r);
            ++out.stats.factors_found;
        } else {
            ++out.stats.degenerate;
        }
    };

    if (d == 1) {
        for (auto& h : hypergeometric_solutions(l, out.stats, opts)) {
            OrePoly r = OrePoly::tau() - OrePoly(h.ratio);
            push_factor(r);
        }
        return out;
    }

    // exterior power operator with a cyclic wedge basis vector
    DModule wmod = ext_power(companion(l), d);
    size_t wdim = wmod.dim();
    MinimalOperator mo;
    bool have = false;
    for (size_t start = 0; start < wdim && !have; ++start) {
        mo = minimal_operator(unit_vector(wdim, start), wmod);
        if (mo.cyclic) have = true;
    }
    if (!have) {
        out.stats.incomplete = true;
        return out;
    }
    // gamma: e_I = sum_k gamma[I][k] tau^k(w0)
    Mat v((size_t)mo.op.order(), wdim);
    for (size_t k = 0; k < (size_t)mo.op.order(); ++k)
        for (size_t j = 0; j < wdim; ++j) v.at(k, j) = mo.iterates[k][j];
    auto vinv = inverse(v);
    if (!vinv) {
        out.stats.incomplete = true;
        return out;
    }
    const Mat& gamma = *vinv;

    auto wedge_sets = wedge_basis_subsets(n, d);
    auto wedge_index = [&](const std::vector<size_t>& s) -> size_t {
        for (size_t i = 0; i < wedge_sets.size(); ++i)
            if (wedge_sets[i] == s) return i;
        return wedge_sets.size();
    };

    for (auto& h : hypergeometric_solutions(mo.op, out.stats, opts)) {
        // eta_I(x) = sum_k gamma[I][k] prod_{j<k} rho(x+j)
        std::vector<RatFunc> rho_prod(wdim + 1);
        rho_prod[0] = RatFunc(1);
        for (size_t k = 0; k < wdim; ++k)
            rho_prod[k + 1] = rho_prod[k] * h.ratio.shifted(Rat((long)k));
        std::vector<RatFunc> eta(wdim);
        for (size_t i = 0; i < wdim; ++i) {
            RatFunc acc;
            for (size_t k = 0; k < wdim; ++k) {
                if (gamma.at(i, k).is_zero()) continue;
                acc += gamma.at(i, k) * rho_prod[k];
            }
            eta[i] = acc;
        }
        // single Plucker quadric for n = 4, d = 2 (fixed lex wedge order)
        if (n == 4 && d == 2) {
            RatFunc q = eta[0] * eta[5] - eta[1] * eta[4] + eta[2] * eta[3];
            if (!q.is_zero()) {
                ++out.stats.degenerate;
                continue;
            }
        }
        // bordered-minor reconstruction on window {base..base+d}
        bool built = false;
        for (int base = 0; base + d < n && !built; ++base) {
            std::vector<size_t> window(d + 1);
            for (int i = 0; i <= d; ++i) window[i] = base + i;
            // leading coefficient: window minus its last element
            std::vector<size_t> lead(window.begin(), window.end() - 1);
            size_t il = wedge_index(lead);
            if (eta[il].is_zero()) continue;
            std::vector<RatFunc> cs(d + 1);
            for (int i = 0; i <= d; ++i) {
                std::vector<size_t> s;
                for (int t = 0; t <= d; ++t)
                    if (t != i) s.push_back(window[t]);
                size_t ix = wedge_index(s);
                RatFunc co = eta[ix];
                if ((d - i) % 2 == 1) co = -co;
                cs[i] = co.shifted(Rat(-base));
            }
            OrePoly r = OrePoly(std::move(cs)).monic();
            if (r.order() == d) {
                push_factor(r);
                built = true;
            }
        }
        if (!built) ++out.stats.degenerate;
    }
    return out;
}

inline std::vector<CandidateType> candidate_types(const OrePoly& l, int d) {
    // d = ord(L) is allowed: L is its own order-d factor and det(L) must be
    // covered by the candidate list.
    if (l.is_zero() || d < 1 || d > l.order())
        throw std::domain_error("candidate_types: need 1 <= d <= ord(L)");
    if (d == 1) return candidate_types_of_operator(l);
    return candidate_types_of_operator(ext_power_op(l, d).op);
}

// Filter from the determinant relation of the section construction: a
// candidate type lambda for factors of the p-section survives only when
// lambda(x/p) ~ det(L). Returns the filter plus the matching enumeration hint
// (the forced constant part).
inline CandidateFilter section_determinant_filter(const OrePoly& l, long p) {
    SimSignature target = sim_signature(det_op(l));
    return [target, p](const CandidateType& c) {
        return sim_signature(scale_substitute(c.lambda, p, ScaleDirection::forward)) == target;
    };
}

inline CandidateEnumHint section_determinant_hint(const OrePoly& l, long p) {
    return CandidateEnumHint{sim_signature(det_op(l)).z, p};
}

}  // namespace oresolve
