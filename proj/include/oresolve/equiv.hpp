#pragma once

// Gauge and projective equivalence: rational solutions of first-order linear
// systems (universal denominator + polynomial solutions), Hom spaces between
// operator quotients by ansatz on stacked coefficient equations, and the
// +-r twist search for projective equivalence.

#include <optional>

#include "oresolve/hyper.hpp"
#include "oresolve/modsolve.hpp"

namespace oresolve {

struct RationalSolutions {
    std::vector<std::vector<RatFunc>> basis;
    SolveStatus status = SolveStatus::complete;
};

// Abramov-style universal denominator for pole chains that end at a root of
// d2 and start one past a root of d1: tight multiplicities via iterated gcd
// extraction from the largest chain length down.
inline Poly universal_denominator(const Poly& d1, const Poly& d2) {
    Poly u(Rat(1));
    if (d1.degree() <= 0 && d2.degree() <= 0) return u;
    Poly a = d2;                     // chain end candidates
    Poly b = d1.shifted(Rat(-1));    // chain start candidates
    auto h = dispersion(b, a);       // largest i with gcd(b(x), a(x+i)) != 1
    if (!h) return u;
    for (long i = *h; i >= 0; --i) {
        for (;;) {
            Poly g = Poly::gcd(b, a.shifted(Rat(i)));  // roots: chain starts s with s+i an end
            if (g.degree() <= 0) break;
            b = b / g;
            a = a / g.shifted(Rat(-i));
            for (long j = 0; j <= i; ++j) u = u * g.shifted(Rat(-j));
        }
    }
    return u;
}

// Basis of rational vector solutions of shift(Y,1) = A Y. Poles of solutions
// are confined to a universal denominator built from the denominators of A
// and A^{-1} across their dispersion range.
inline RationalSolutions rational_solutions_system(const Mat& a,
                                                   std::optional<long> degree_cap = std::nullopt) {
    if (!a.is_square()) throw std::domain_error("rational_solutions_system: square input");
    auto ainv = inverse(a);
    if (!ainv) throw std::domain_error("rational_solutions_system: singular system matrix");
    size_t s = a.rows();
    Poly d1(Rat(1)), d2(Rat(1));
    for (size_t i = 0; i < s; ++i)
        for (size_t j = 0; j < s; ++j) {
            d1 = Poly::lcm(d1, a.at(i, j).den());
            d2 = Poly::lcm(d2, ainv->at(i, j).den());
        }
    Poly u = universal_denominator(d1, d2);
    // Y = Z / u: Z(x+1) = (u(x+1)/u(x)) A Z(x)
    Mat at = a.scaled(RatFunc(u.shifted(Rat(1)), u));
    PolySolutions ps = polynomial_solutions(at, RatFunc(1), degree_cap);
    RationalSolutions out;
    out.status = ps.status;
    RatFunc uinv = RatFunc(u).inv();
    for (auto& z : ps.basis) {
        std::vector<RatFunc> y(s);
        for (size_t j = 0; j < s; ++j) y[j] = RatFunc(z[j]) * uinv;
        out.basis.push_back(std::move(y));
    }
    return out;
}

struct GaugeMap {
    OrePoly g;       // ord(g) < ord(target-side operator it reduces against)
    OrePoly source;  // G maps V(source) onto V(target)
    OrePoly target;
};

struct HomBasis {
    std::vector<OrePoly> basis;  // all G, ord(G) < ord(L2), with L1 G in D L2
    SolveStatus status = SolveStatus::complete;
};

// Hom space computation: operators G of order < ord(L2) with L1 o G = 0 mod
// right division by L2 (each such G maps V(L2) into V(L1)). Formulated on the
// coordinates y of G in D/DL2: left multiplication by L1 must kill y, giving
// sum_j a_j(x) P_j(x) y(x+j) = 0 with P_j the left-shift coordinate products.
//
// The degree bound for the polynomial part of y comes from scalarizing the
// stacked first-order system when it is small; larger systems use the
// explicit `ansatz_degree` (ramped by callers), solved modularly, with every
// candidate verified by exact division.
inline HomBasis gauge_hom(const OrePoly& l1, const OrePoly& l2,
                          std::optional<long> degree_cap = std::nullopt,
                          std::optional<long> ansatz_degree = std::nullopt) {
    if (l1.is_zero() || l2.is_zero()) throw std::domain_error("gauge_hom: zero operator");
    if (!l2.is_normalized()) throw std::domain_error("gauge_hom: L2 must be normalized");
    int n1 = l1.order(), k = l2.order();
    if (n1 < 1 || k < 1) throw std::domain_error("gauge_hom: positive orders required");

    // left-multiplication-by-tau on D/DL2 coordinates: T(y)(x) = P y(x+1),
    // where column i of P holds the coordinates of tau * tau^i reduced mod L2
    Mat pmat(k, k);
    {
        std::vector<RatFunc> rho = unit_vector(k, k - 1);
        rho = detail_ore::tau_multiply_mod(l2, unit_vector(k, k - 1));
        for (int i = 0; i + 1 < k; ++i) pmat.at(i + 1, i) = RatFunc(1);
        for (int r = 0; r < k; ++r) pmat.at(r, k - 1) = rho[r];
    }
    // P_j = P shift(P,1) ... shift(P,j-1)
    std::vector<Mat> pj(n1 + 1);
    pj[0] = Mat::identity(k);
    for (int j = 1; j <= n1; ++j) pj[j] = pj[j - 1] * pmat.shifted(Rat(j - 1));

    HomBasis out;

    // first-order system for the stacked vector (y(x), ..., y(x+n1-1)):
    // a_n1 P_n1 y(x+n1) = -sum_{j<n1} a_j P_j y(x+j)
    auto lead_inv = inverse(pj[n1].scaled(l1.leading()));
    if (!lead_inv) throw std::domain_error("gauge_hom: degenerate leading reduction");
    size_t dim = (size_t)k * n1;
    Mat m(dim, dim);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n1; ++j) {
            size_t row = (size_t)j * k + i;  // block j holds y(x+j)
            if (j + 1 < n1) {
                m.at(row, (size_t)(j + 1) * k + i) = RatFunc(1);
                continue;
            }
        }
    {
        // top block rows: y(x+n1) = -lead_inv sum_{j<n1} a_j P_j y(x+j)
        for (int j = 0; j < n1; ++j) {
            if (l1.coeff(j).is_zero()) continue;
            Mat contrib = (*lead_inv * pj[j]).scaled(-l1.coeff(j));
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) {
                    if (contrib.at(r, c).is_zero()) continue;
                    m.at((size_t)(n1 - 1) * k + r, (size_t)j * k + c) += contrib.at(r, c);
                }
        }
    }

    std::vector<std::vector<RatFunc>> raw_solutions;
    SolveStatus status = SolveStatus::complete;
    if (!ansatz_degree && dim <= 16) {
        RationalSolutions rs = rational_solutions_system(m, degree_cap);
        status = rs.status;
        for (auto& v : rs.basis) raw_solutions.push_back({v.begin(), v.begin() + k});
    } else {
        // universal denominator from the block maps of the stacked system:
        // forward propagation uses lead_inv a_j P_j, backward a_0^{-1} a_j P_j
        if (l1.trailing().is_zero())
            throw std::domain_error("gauge_hom: L1 must have nonzero trailing coefficient");
        Poly d1(Rat(1)), d2(Rat(1));
        for (int j = 0; j <= n1; ++j) {
            if (l1.coeff(j).is_zero()) continue;
            Mat fwd = (*lead_inv * pj[j]).scaled(l1.coeff(j));
            Mat bwd = pj[j].scaled(l1.coeff(j) / l1.trailing());
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) {
                    d1 = Poly::lcm(d1, fwd.at(r, c).den());
                    d2 = Poly::lcm(d2, bwd.at(r, c).den());
                }
        }
        Poly u = universal_denominator(d1, d2);
        long nb = *ansatz_degree + u.degree();
        // equations sum_j a_j P_j Y(x+j)/u(x+j) = 0, cleared by prod_j u(x+j):
        // column polys for unknown coefficient (c, e): sum over j of
        // a_j P_j[., c] * uhat_j * (x+j)^e, uhat_j = prod_{j' != j} u(x+j')
        std::vector<Poly> ushift(n1 + 1);
        for (int j = 0; j <= n1; ++j) ushift[j] = u.shifted(Rat(j));
        std::vector<Poly> uhat(n1 + 1, Poly(Rat(1)));
        for (int j = 0; j <= n1; ++j)
            for (int j2 = 0; j2 <= n1; ++j2)
                if (j2 != j) uhat[j] = uhat[j] * ushift[j2];
        // clear rational denominators of a_j P_j entrywise
        // build polynomial column contributions
        struct Cell {
            int row;          // equation index (0..k-1)
            int col_block;    // unknown coordinate c
            Poly value;       // polynomial multiplier for (x+j)^e expansion
            int shift;        // j
        };
        std::vector<Cell> cells;
        Poly den_all(Rat(1));
        for (int j = 0; j <= n1; ++j) {
            if (l1.coeff(j).is_zero()) continue;
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) {
                    RatFunc v = l1.coeff(j) * pj[j].at(r, c);
                    if (v.is_zero()) continue;
                    den_all = Poly::lcm(den_all, v.den());
                }
        }
        for (int j = 0; j <= n1; ++j) {
            if (l1.coeff(j).is_zero()) continue;
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) {
                    RatFunc v = l1.coeff(j) * pj[j].at(r, c);
                    if (v.is_zero()) continue;
                    Poly pv = v.num() * (den_all / v.den()) * uhat[j];
                    cells.push_back({r, c, pv, j});
                }
        }
        // rows: coefficients of x^t per equation; columns: (c, e). Row expansion
        // happens mod p inside the feeder; exactness is restored by the verify
        // gate on reconstructed solutions.
        size_t cols = (size_t)k * (nb + 1);
        long maxdeg = 0;
        for (auto& cel : cells) maxdeg = std::max<long>(maxdeg, cel.value.degree());
        size_t stride = (size_t)(maxdeg + nb + 2);
        auto feed = [&](modsolve::ModEchelon& ech) {
            std::uint64_t p = ech.prime();
            zpoly::Fp F{p};
            std::vector<std::vector<std::uint64_t>> dense((size_t)k * stride,
                                                          std::vector<std::uint64_t>(cols, 0));
            for (auto& cel : cells) {
                // reduce the cell polynomial mod p (rational coefficients)
                std::vector<std::uint64_t> total(cel.value.degree() + 1);
                for (int t = 0; t <= cel.value.degree(); ++t) {
                    const Rat& cval = cel.value.coeff(t);
                    std::uint64_t den = Int::abs(cval.den()).mod_ui(p);
                    if (den == 0) return false;
                    std::uint64_t num = Int::abs(cval.num()).mod_ui(p);
                    if (cval.num().sgn() < 0 && num) num = p - num;
                    total[t] = F.mul(num, F.inv(den));
                }
                std::uint64_t sh = cel.shift >= 0 ? (std::uint64_t)cel.shift % p
                                                  : p - ((std::uint64_t)(-cel.shift) % p);
                for (long e = 0; e <= nb; ++e) {
                    std::uint32_t col = (std::uint32_t)(cel.col_block * (nb + 1) + e);
                    for (size_t t = 0; t < total.size(); ++t)
                        if (total[t])
                            dense[(size_t)cel.row * stride + t][col] =
                                F.add(dense[(size_t)cel.row * stride + t][col], total[t]);
                    if (e < nb) {
                        // total *= (x + shift)
                        total.push_back(0);
                        for (size_t t = total.size(); t-- > 1;)
                            total[t] = F.add(total[t - 1], F.mul(total[t], sh));
                        total[0] = F.mul(total[0], sh);
                    }
                }
            }
            for (auto& row : dense) ech.add_row(std::move(row));
            return true;
        };
        auto verify = [&](const std::vector<std::vector<Rat>>& basis) {
            for (const auto& vec : basis) {
                std::vector<Poly> ypoly(k);
                for (int c = 0; c < k; ++c)
                    ypoly[c] = Poly(std::vector<Rat>(vec.begin() + (size_t)c * (nb + 1),
                                                     vec.begin() + (size_t)(c + 1) * (nb + 1)));
                std::vector<Poly> eq(k);
                for (auto& cel : cells) {
                    if (ypoly[cel.col_block].is_zero()) continue;
                    eq[cel.row] += cel.value * ypoly[cel.col_block].shifted(Rat(cel.shift));
                }
                for (auto& e : eq)
                    if (!e.is_zero()) return false;
            }
            return true;
        };
        auto ns = modsolve::nullspace_modular_gen(feed, cols, verify);
        if (!ns) {
            out.status = SolveStatus::capped;
            return out;
        }
        status = SolveStatus::capped;  // bounded ansatz: completeness not claimed
        RatFunc uinv = RatFunc(u).inv();
        for (auto& vec : *ns) {
            std::vector<RatFunc> y(k);
            for (int c = 0; c < k; ++c) {
                std::vector<Rat> cs(vec.begin() + (size_t)c * (nb + 1),
                                    vec.begin() + (size_t)(c + 1) * (nb + 1));
                y[c] = RatFunc(Poly(std::move(cs))) * uinv;
            }
            raw_solutions.push_back(std::move(y));
        }
    }

    out.status = status;
    for (auto& y : raw_solutions) {
        OrePoly gop{std::vector<RatFunc>(y.begin(), y.end())};
        if (gop.is_zero()) continue;
        if (right_divide(l1 * gop, l2).second.is_zero()) out.basis.push_back(std::move(gop));
    }
    return out;
}

// Gauge equivalence witness: G in the hom space with GCRD(G, L2) = 1.
inline std::optional<GaugeMap> is_gauge_equivalent(const OrePoly& l1, const OrePoly& l2,
                                                   std::optional<long> degree_cap = std::nullopt) {
    if (l1.order() != l2.order()) return std::nullopt;
    HomBasis hom = gauge_hom(l1, l2, degree_cap);
    auto try_g = [&](const OrePoly& g) -> std::optional<GaugeMap> {
        if (g.is_zero()) return std::nullopt;
        if (gcrd(g, l2).is_one()) return GaugeMap{g, l2, l1};
        return std::nullopt;
    };
    for (const auto& g : hom.basis)
        if (auto r = try_g(g)) return r;
    // small combinations: sums of pairs with a couple of scalings
    for (size_t i = 0; i < hom.basis.size(); ++i)
        for (size_t j = i + 1; j < hom.basis.size(); ++j)
            for (long c : {1L, -1L, 2L}) {
                if (auto r = try_g(hom.basis[i] + hom.basis[j].scaled(RatFunc(Rat(c))))) return r;
            }
    return std::nullopt;
}

struct ProjectiveMap {
    RatFunc r;       // order-1 twist: gauge maps V((tau - r) (*) source) onto V(target)
    GaugeMap gauge;
};

enum class ProjectiveStatus { found, none, requires_extension };

struct ProjectiveResult {
    ProjectiveStatus status;
    std::optional<ProjectiveMap> map;
};

// Projective equivalence: find r and G with G(V((tau - r) (*) L)) = V(Ltarget).
// r is pinned up to ~ and sign by det((tau-r) (*) L) ~ det(Ltarget); over Q the
// two candidates +-r are tried.
inline ProjectiveResult projective_hom(const OrePoly& l, const OrePoly& ltarget,
                                       std::optional<long> degree_cap = std::nullopt) {
    if (l.order() != ltarget.order())
        throw std::domain_error("projective_hom: equal orders required");
    unsigned long n = (unsigned long)l.order();
    RatFunc q = det_op(ltarget) / det_op(l);
    SimRoot root = nth_root_up_to_sim(q, n);
    if (root.status == RootStatus::needs_extension)
        return {ProjectiveStatus::requires_extension, std::nullopt};
    if (root.status == RootStatus::no_root) return {ProjectiveStatus::none, std::nullopt};
    std::vector<RatFunc> candidates{root.value};
    if (n % 2 == 0) candidates.push_back(-root.value);
    for (const RatFunc& r : candidates) {
        OrePoly twisted = order1_symmetric_product(r, l);
        auto g = is_gauge_equivalent(ltarget, twisted, degree_cap);
        if (g) return {ProjectiveStatus::found, ProjectiveMap{r, *g}};
    }
    return {ProjectiveStatus::none, std::nullopt};
}

// Solutions of L extended from random nonzero values at a pole-free start.
inline SequenceOracle random_solution_oracle(const OrePoly& l, Rng& rng, long start) {
    int k = l.order();
    auto vals = std::make_shared<std::map<long, std::optional<Rat>>>();
    for (int i = 0; i < k; ++i) (*vals)[start + i] = rng.nonzero_rat(-4, 4);
    OrePoly op = l;
    return SequenceOracle([vals, op, k, start](long n) -> std::optional<Rat> {
        if (n < start) return std::nullopt;
        long known = vals->rbegin()->first;
        while (known < n) {
            long m = known - k + 1;
            std::optional<Rat> next = Rat(0);
            auto lead = op.leading().eval(Rat(m));
            if (!lead || lead->is_zero()) {
                next = std::nullopt;
            } else {
                Rat acc(0);
                for (int i = 0; i < k; ++i) {
                    auto ci = op.coeff(i).eval(Rat(m));
                    auto ui = (*vals)[m + i];
                    if (!ci || !ui) {
                        next = std::nullopt;
                        break;
                    }
                    acc += *ci * *ui;
                }
                if (next) next = -acc / *lead;
            }
            (*vals)[known + 1] = next;
            ++known;
        }
        return (*vals)[n];
    });
}

// Numeric spot-check of a gauge map: sequences G(u) for solutions u of source
// are annihilated by target over `count` valid points.
inline bool gauge_numeric_check(const GaugeMap& gm, int count = 50, std::uint64_t seed = 12345) {
    Rng rng(seed);
    long start = sequence_safe_start({gm.source, gm.target, gm.g});
    SequenceOracle u = random_solution_oracle(gm.source, rng, start);
    OrePoly g = gm.g;
    SequenceOracle gu([g, u](long nn) -> std::optional<Rat> {
        Rat acc(0);
        for (int i = 0; i <= g.order(); ++i) {
            if (g.coeff(i).is_zero()) continue;
            auto c = g.coeff(i).eval(Rat(nn));
            auto v = u(nn + i);
            if (!c || !v) return std::nullopt;
            acc += *c * *v;
        }
        return acc;
    });
    return annihilates(gm.target, gu, count, start);
}

}  // namespace oresolve
