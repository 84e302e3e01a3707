#pragma once

// Difference modules presented by the matrix of the shift action on a basis:
// row convention tau(b_i) = sum_j action[i][j] b_j, so coordinates of column
// vectors transform by c -> transpose(action) * shift(c, 1). Companion
// modules, change of basis, minimal operators of vectors, tensor/symmetric/
// exterior constructions, and the exterior-square block decomposition of a
// tensor product of two 2-dimensional modules.

#include <string>
#include <vector>

#include "oresolve/ore.hpp"

namespace oresolve {

struct DModule {
    Mat action;
    std::vector<std::string> basis_labels;

    size_t dim() const { return action.rows(); }
};

// Companion module of a normalized operator on the basis 1, tau, ..., tau^(n-1).
inline DModule companion(const OrePoly& l) {
    if (!l.is_normalized())
        throw std::domain_error("companion: operator must have nonzero trailing coefficient");
    int n = l.order();
    if (n == 0) throw std::domain_error("companion: order must be positive");
    DModule m;
    m.action = Mat(n, n);
    for (int i = 0; i + 1 < n; ++i) m.action.at(i, i + 1) = RatFunc(1);
    for (int j = 0; j < n; ++j) m.action.at(n - 1, j) = -(l.coeff(j) / l.leading());
    for (int i = 0; i < n; ++i) m.basis_labels.push_back(i == 0 ? "1" : "tau^" + std::to_string(i));
    return m;
}

// Basis change by invertible P (rows of P express the new basis in the old):
// action becomes shift(P, 1) * A * P^{-1}.
inline DModule change_basis(const DModule& m, const Mat& p) {
    auto pinv = inverse(p);
    if (!pinv) throw std::domain_error("change_basis: singular basis matrix");
    DModule out;
    out.action = p.shifted(Rat(1)) * m.action * *pinv;
    out.basis_labels.assign(m.dim(), "");
    return out;
}

// Coordinate action of tau on column coordinates.
inline std::vector<RatFunc> tau_apply(const DModule& m, const std::vector<RatFunc>& coords) {
    std::vector<RatFunc> shifted(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) shifted[i] = coords[i].shifted(Rat(1));
    return m.action.transpose().apply(shifted);
}

struct MinimalOperator {
    OrePoly op;
    bool cyclic = false;                          // order == dim
    std::vector<std::vector<RatFunc>> iterates;   // coords of tau^k(v), k = 0..order-1
};

// Monic minimal operator of a vector: successive tau-iterates with incremental
// elimination, returning at the first linear dependency.
inline MinimalOperator minimal_operator(const std::vector<RatFunc>& v, const DModule& m) {
    bool nonzero = false;
    for (const auto& c : v) nonzero = nonzero || !c.is_zero();
    if (!nonzero) throw std::domain_error("minimal_operator: zero vector");
    size_t n = m.dim();
    IncrementalSpan span(n);
    MinimalOperator out;
    std::vector<RatFunc> cur = v;
    for (size_t k = 0;; ++k) {
        auto dep = span.add(cur);
        if (dep) {
            std::vector<RatFunc> c(k + 1);
            for (size_t i = 0; i < k; ++i) c[i] = -(*dep)[i];
            c[k] = RatFunc(1);
            out.op = OrePoly(std::move(c));
            out.cyclic = (k == n);
            return out;
        }
        out.iterates.push_back(cur);
        cur = tau_apply(m, cur);
    }
}

inline std::vector<RatFunc> unit_vector(size_t n, size_t i) {
    std::vector<RatFunc> e(n);
    e[i] = RatFunc(1);
    return e;
}

inline DModule tensor(const DModule& a, const DModule& b) {
    DModule out;
    out.action = kronecker(a.action, b.action);
    out.basis_labels.assign(out.action.rows(), "");
    return out;
}

inline DModule sym_power(const DModule& a, int d) {
    DModule out;
    out.action = sym_power_matrix(a.action, d);
    out.basis_labels.assign(out.action.rows(), "");
    return out;
}

inline DModule ext_power(const DModule& a, int d) {
    DModule out;
    out.action = ext_power_matrix(a.action, d);
    out.basis_labels.assign(out.action.rows(), "");
    return out;
}

inline DModule direct_sum(const DModule& a, const DModule& b) {
    size_t n = a.dim(), m = b.dim();
    DModule out;
    out.action = Mat(n + m, n + m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out.action.at(i, j) = a.action.at(i, j);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) out.action.at(n + i, n + j) = b.action.at(i, j);
    out.basis_labels.assign(n + m, "");
    return out;
}

// Minimal operator of 1 (x) 1; its solutions include products of solutions.
inline OrePoly sym_product_op(const OrePoly& l1, const OrePoly& l2) {
    DModule t = tensor(companion(l1), companion(l2));
    return minimal_operator(unit_vector(t.dim(), 0), t).op;
}

struct PowerOp {
    OrePoly op;
    bool expected_order;  // order equals the dimension of the construction
    MinimalOperator trace;
};

// Minimal operator of b_1^d in Sym^d of the companion module.
inline PowerOp sym_power_op(const OrePoly& l, int d) {
    DModule s = sym_power(companion(l), d);
    MinimalOperator mo = minimal_operator(unit_vector(s.dim(), 0), s);
    PowerOp out{mo.op, mo.cyclic, std::move(mo)};
    return out;
}

// Minimal operator of b_1 /\ ... /\ b_d in the d-th exterior power.
inline PowerOp ext_power_op(const OrePoly& l, int d) {
    DModule w = ext_power(companion(l), d);
    MinimalOperator mo = minimal_operator(unit_vector(w.dim(), 0), w);
    PowerOp out{mo.op, mo.cyclic, std::move(mo)};
    return out;
}

struct ExtSquareSplit {
    Mat basis_change;  // constant 6x6 P
    Mat lhs;           // shift(P,1) * wedge^2(A (x) B) * P^{-1}
    Mat rhs;           // blockdiag(det(B) Sym^2(A), det(A) Sym^2(B))
    bool exact;        // lhs == rhs
};

// Exterior square of a tensor product of two 2-dimensional modules splits into
// twisted symmetric squares; the basis change is the constant matrix sending
// {e1, (e3-e4)/2, e6, e2, (e3+e4)/2, e5} to the product basis.
inline ExtSquareSplit appendix_split(const Mat& a, const Mat& b) {
    if (a.rows() != 2 || !a.is_square() || b.rows() != 2 || !b.is_square())
        throw std::domain_error("appendix_split: 2x2 inputs required");
    RatFunc da = det(a), db = det(b);
    if (da.is_zero() || db.is_zero()) throw std::domain_error("appendix_split: singular input");
    Mat w = ext_power_matrix(kronecker(a, b), 2);

    ExtSquareSplit out;
    out.basis_change = Mat(6, 6);
    Rat half(1, 2);
    auto& p = out.basis_change;
    p.at(0, 0) = RatFunc(1);                               // e1
    p.at(1, 2) = RatFunc(half);                            // (e3 - e4)/2
    p.at(1, 3) = RatFunc(-half);
    p.at(2, 5) = RatFunc(1);                               // e6
    p.at(3, 1) = RatFunc(1);                               // e2
    p.at(4, 2) = RatFunc(half);                            // (e3 + e4)/2
    p.at(4, 3) = RatFunc(half);
    p.at(5, 4) = RatFunc(1);                               // e5

    auto pinv = inverse(p);
    out.lhs = p * w * *pinv;  // constant P: shift(P,1) = P

    out.rhs = Mat(6, 6);
    Mat sa = sym_power_matrix(a, 2).scaled(db);
    Mat sb = sym_power_matrix(b, 2).scaled(da);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            out.rhs.at(i, j) = sa.at(i, j);
            out.rhs.at(3 + i, 3 + j) = sb.at(i, j);
        }
    out.exact = (out.lhs == out.rhs);
    return out;
}

}  // namespace oresolve
