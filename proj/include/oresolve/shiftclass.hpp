#pragma once

// The shift-similarity relation on rational functions: r1 ~ r2 iff
// r1/r2 = P(x+1)/P(x) for some rational P. Decided exactly by grouping
// irreducible factors into integer-shift classes and comparing exponent sums
// plus the constant part. Also: certificates with arbitrary integer step,
// n-th roots up to ~, the exact norm equation y * shift(y) = X, and the
// classical one-sided Gosper-Petkovsek normal form.

#include <map>
#include <optional>

#include "oresolve/factor.hpp"
#include "oresolve/ratfunc.hpp"

namespace oresolve {

// Canonical representative of the shift class of a monic irreducible: the
// integer shift placing the subleading coefficient in [0, deg).
inline std::pair<Poly, long> shift_class_rep(const Poly& q) {
    int d = q.degree();
    assert(d >= 1);
    if (d == 0) return {q, 0};
    Rat s = q.coeff(d - 1);
    // t with s + d t in [0, d)
    Rat ratio = s / Rat((long)d);
    Int t_floor;
    mpz_fdiv_q(t_floor.raw(), ratio.num().raw(), ratio.den().raw());
    long t = -t_floor.to_long();
    Poly rep = q.shifted(Rat(t));
    // q(x) = rep(x + pos), pos = -t
    return {rep, -t};
}

struct ShiftClasses {
    Rat z = Rat(1);
    struct Cls {
        Poly rep;                   // canonical monic irreducible
        std::map<long, long> exps;  // shift position -> exponent (can be negative)
        long total() const {
            long s = 0;
            for (auto& [k, e] : exps) s += e;
            return s;
        }
    };
    std::vector<Cls> classes;

    Cls& cls_for(const Poly& rep) {
        for (auto& c : classes)
            if (c.rep == rep) return c;
        classes.push_back({rep, {}});
        return classes.back();
    }

    void add_factor(const Poly& q, long mult) {
        auto [rep, pos] = shift_class_rep(q);
        auto& c = cls_for(rep);
        c.exps[pos] += mult;
        if (c.exps[pos] == 0) c.exps.erase(pos);
    }

    void prune() {
        std::erase_if(classes, [](const Cls& c) { return c.exps.empty(); });
        std::sort(classes.begin(), classes.end(), [](const Cls& a, const Cls& b) {
            if (a.rep.degree() != b.rep.degree()) return a.rep.degree() < b.rep.degree();
            for (int i = a.rep.degree(); i >= 0; --i)
                if (a.rep.coeff(i) != b.rep.coeff(i)) return a.rep.coeff(i) < b.rep.coeff(i);
            return false;
        });
    }

    RatFunc reconstruct() const {
        RatFunc r{Rat(z)};
        for (const auto& c : classes)
            for (auto& [pos, e] : c.exps) {
                RatFunc f{c.rep.shifted(Rat(pos))};
                for (long i = 0; i < (e < 0 ? -e : e); ++i) r = e > 0 ? r * f : r / f;
            }
        return r;
    }
};

inline ShiftClasses shift_class_decomposition(const RatFunc& f) {
    if (f.is_zero()) throw std::domain_error("shift_class_decomposition: zero input");
    ShiftClasses out;
    Factorization fn = factor(f.num());
    Factorization fd = factor(f.den());
    out.z = fn.content / fd.content;
    for (auto& [q, m] : fn.factors) out.add_factor(q, m);
    for (auto& [q, m] : fd.factors) out.add_factor(q, -m);
    out.prune();
    return out;
}

// Signature deciding ~ : two rational functions are shift-similar iff their
// signatures are equal (same constant part, same per-class exponent totals).
struct SimSignature {
    Rat z;
    std::vector<std::pair<Poly, long>> totals;
    friend bool operator==(const SimSignature& a, const SimSignature& b) {
        return a.z == b.z && a.totals == b.totals;
    }
};

inline SimSignature sim_signature(const RatFunc& f) {
    ShiftClasses sc = shift_class_decomposition(f);
    SimSignature s;
    s.z = sc.z;
    for (auto& c : sc.classes) {
        long t = c.total();
        if (t != 0) s.totals.push_back({c.rep, t});
    }
    return s;
}

// Certificate for f = P(x+step)/P(x), rational P, or nullopt.
inline std::optional<RatFunc> shift_quotient_certificate_step(const RatFunc& f, long step = 1) {
    if (f.is_zero()) throw std::domain_error("shift_quotient_certificate: zero input");
    assert(step >= 1);
    ShiftClasses sc = shift_class_decomposition(f);
    if (!sc.z.is_one()) return std::nullopt;
    RatFunc p{Rat(1)};
    for (const auto& c : sc.classes) {
        // per residue chain mod step: g_j = g_{j-step} - e_j must telescope to 0
        std::map<long, std::vector<std::pair<long, long>>> byres;
        for (auto& [j, e] : c.exps) byres[((j % step) + step) % step].push_back({j, e});
        for (auto& [res, seq] : byres) {
            (void)res;
            long g = 0;
            for (size_t i = 0; i < seq.size(); ++i) {
                g -= seq[i].second;
                if (i + 1 == seq.size()) {
                    if (g != 0) return std::nullopt;
                    break;
                }
                if (g == 0) continue;
                for (long j = seq[i].first; j < seq[i + 1].first; j += step) {
                    RatFunc factor_j{c.rep.shifted(Rat(j))};
                    for (long t = 0; t < (g < 0 ? -g : g); ++t)
                        p = g > 0 ? p * factor_j : p / factor_j;
                }
            }
        }
    }
    return p;
}

inline std::optional<RatFunc> shift_quotient_certificate(const RatFunc& f) {
    return shift_quotient_certificate_step(f, 1);
}

struct SimResult {
    bool similar;
    std::optional<RatFunc> certificate;  // P with r1/r2 = P(x+1)/P(x)
};

inline SimResult sim_test(const RatFunc& r1, const RatFunc& r2) {
    if (r1.is_zero() || r2.is_zero()) throw std::domain_error("sim_test: zero input");
    auto cert = shift_quotient_certificate(r1 / r2);
    return {cert.has_value(), cert};
}

enum class RootStatus { ok, no_root, needs_extension };

struct SimRoot {
    RootStatus status;
    RatFunc value;  // r with r^n ~ f when status == ok
};

// n-th root up to ~ : class totals divisible by n plus a rational n-th root
// of the constant part. needs_extension marks a constant-part obstruction
// (solvable over an extension field, e.g. negative value under even n).
inline SimRoot nth_root_up_to_sim(const RatFunc& f, unsigned long n) {
    ShiftClasses sc = shift_class_decomposition(f);
    RatFunc r{Rat(1)};
    for (auto& c : sc.classes) {
        long t = c.total();
        if (t % (long)n != 0) return {RootStatus::no_root, RatFunc()};
        long e = t / (long)n;
        RatFunc base{c.rep};
        for (long i = 0; i < (e < 0 ? -e : e); ++i) r = e > 0 ? r * base : r / base;
    }
    Rat zroot;
    if (!Rat::perfect_root(sc.z, n, zroot)) return {RootStatus::needs_extension, RatFunc()};
    return {RootStatus::ok, r * RatFunc(zroot)};
}

// Exact solution of y * y(x+1) = X (up to overall sign), or nullopt.
inline std::optional<RatFunc> solve_norm_equation(const RatFunc& x) {
    if (x.is_zero()) return std::nullopt;
    ShiftClasses sc = shift_class_decomposition(x);
    RatFunc y{Rat(1)};
    for (auto& c : sc.classes) {
        if (c.exps.empty()) continue;
        long lo = c.exps.begin()->first;
        long hi = c.exps.rbegin()->first;
        long carry = 0;
        for (long j = lo; j <= hi; ++j) {
            long e = 0;
            auto it = c.exps.find(j);
            if (it != c.exps.end()) e = it->second;
            long fj = e - carry;  // f_j + f_{j-1} = e_j
            if (fj != 0) {
                RatFunc base{c.rep.shifted(Rat(j))};
                for (long i = 0; i < (fj < 0 ? -fj : fj); ++i) y = fj > 0 ? y * base : y / base;
            }
            carry = fj;
        }
        if (carry != 0) return std::nullopt;  // tail does not vanish
    }
    Rat zroot;
    if (!Rat::perfect_root(sc.z, 2, zroot)) return std::nullopt;
    return y * RatFunc(zroot);
}

// Classical one-sided Gosper-Petkovsek form: r = z (a/b) (c(x+1)/c(x)) with
// monic a, b, c, gcd(a(x), b(x+j)) = 1 for all j >= 0, gcd(a, c) = 1,
// gcd(b, c(x+1)) = 1.
struct GPForm {
    Rat z;
    Poly a, b, c;
    RatFunc reconstruct() const {
        return RatFunc(Poly(z)) * RatFunc(a, b) * RatFunc(c.shifted(Rat(1)), c);
    }
};

inline GPForm gp_form(const RatFunc& r) {
    if (r.is_zero()) throw std::domain_error("gp_form: zero input");
    GPForm out;
    Poly a = r.num(), b = r.den();
    Rat lc = a.leading();
    a = a.monic();
    out.z = lc;  // b already monic by RatFunc normalization
    out.c = Poly(Rat(1));
    // collect candidate extraction shifts
    std::vector<long> shifts;
    {
        Factorization fa = factor(a), fb = factor(b);
        std::map<long, bool> seen;
        for (auto& [qa, ma] : fa.factors)
            for (auto& [qb, mb] : fb.factors) {
                if (qa.degree() != qb.degree()) continue;
                int d = qa.degree();
                Rat diff = qa.coeff(d - 1) - qb.coeff(d - 1);
                Rat jr = diff / Rat((long)d);
                if (!jr.is_integer() || jr.sgn() < 0 || !jr.num().fits_long()) continue;
                long j = jr.num().to_long();
                if (qb.shifted(Rat(j)) == qa && !seen[j]) {
                    seen[j] = true;
                    shifts.push_back(j);
                }
            }
    }
    std::sort(shifts.begin(), shifts.end());
    for (long j : shifts) {
        if (j == 0) continue;  // coprime after normalization
        for (;;) {
            Poly g = Poly::gcd(a, b.shifted(Rat(j)));
            if (g.degree() == 0) break;
            a = a / g;
            b = b / g.shifted(Rat(-j));
            for (long i = 1; i <= j; ++i) out.c = out.c * g.shifted(Rat(-i));
        }
    }
    out.a = a;
    out.b = b;
    return out;
}

}  // namespace oresolve
