#pragma once

// Dense linear algebra over Q(x), plus the tensor-construction combinators.
//
// Fixed basis orders shared by every module in the project:
//  - Kronecker: pairs (i, j) with j fastest, i.e. (1,1),(1,2),...,(2,1),...
//  - Sym^d    : degree-d monomials in graded-lex order with b1 > b2 > ... > bn
//               (exponent vectors descending lexicographically: b1^d first).
//  - Wedge^d  : d-subsets of indices in lexicographic order on sorted tuples.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "oresolve/ratfunc.hpp"

namespace oresolve {

class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = RatFunc(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    RatFunc& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const RatFunc& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        assert(a.cols_ == b.rows_);
        Mat r(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (size_t j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    r.at(i, j) += a.at(i, k) * b.at(k, j);
                }
            }
        return r;
    }
    friend Mat operator+(const Mat& a, const Mat& b) {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        Mat r = a;
        for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        Mat r = a;
        for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
        return r;
    }
    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    Mat transpose() const {
        Mat r(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    // entrywise f(x) -> f(x+k)
    Mat shifted(const Rat& k) const {
        Mat r = *this;
        for (auto& x : r.e_) x = x.shifted(k);
        return r;
    }

    Mat scaled(const RatFunc& c) const {
        Mat r = *this;
        for (auto& x : r.e_) x *= c;
        return r;
    }

    std::vector<RatFunc> apply(const std::vector<RatFunc>& v) const {
        assert(v.size() == cols_);
        std::vector<RatFunc> r(rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
        return r;
    }

    Mat submatrix(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const {
        Mat r(rows.size(), cols.size());
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) r.at(i, j) = at(rows[i], cols[j]);
        return r;
    }

private:
    size_t rows_, cols_;
    std::vector<RatFunc> e_;
};

// Gaussian elimination over the field Q(x). Returns (rref, pivot columns, det
// scale if square). Plain field elimination; entries stay normalized through
// RatFunc's gcd reduction.
struct Rref {
    Mat m;
    std::vector<size_t> pivots;
    RatFunc det;  // valid for square input
};

inline Rref rref(Mat a) {
    size_t rows = a.rows(), cols = a.cols();
    Rref out;
    RatFunc det(1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && a.at(piv, c).is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != r) {
            for (size_t j = 0; j < cols; ++j) std::swap(a.at(piv, j), a.at(r, j));
            det = -det;
        }
        RatFunc inv = a.at(r, c).inv();
        det *= a.at(r, c);
        for (size_t j = c; j < cols; ++j)
            if (!a.at(r, j).is_zero()) a.at(r, j) *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            RatFunc f = a.at(i, c);
            for (size_t j = c; j < cols; ++j)
                if (!a.at(r, j).is_zero()) a.at(i, j) -= f * a.at(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    if (r < rows || rows != cols) det = RatFunc(0);
    out.m = std::move(a);
    out.det = det;
    return out;
}

inline size_t rank(const Mat& a) { return rref(a).pivots.size(); }

inline RatFunc det(const Mat& a) {
    assert(a.is_square());
    if (a.rows() == 0) return RatFunc(1);
    if (a.rows() == 1) return a.at(0, 0);
    if (a.rows() == 2) return a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
    if (a.rows() == 3) {
        RatFunc d;
        d += a.at(0, 0) * (a.at(1, 1) * a.at(2, 2) - a.at(1, 2) * a.at(2, 1));
        d -= a.at(0, 1) * (a.at(1, 0) * a.at(2, 2) - a.at(1, 2) * a.at(2, 0));
        d += a.at(0, 2) * (a.at(1, 0) * a.at(2, 1) - a.at(1, 1) * a.at(2, 0));
        return d;
    }
    return rref(a).det;
}

// Basis of { v : A v = 0 }.
inline std::vector<std::vector<RatFunc>> nullspace(const Mat& a) {
    Rref rr = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (size_t c : rr.pivots) is_pivot[c] = true;
    std::vector<std::vector<RatFunc>> basis;
    for (size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<RatFunc> v(a.cols());
        v[free] = RatFunc(1);
        for (size_t r = 0; r < rr.pivots.size(); ++r)
            v[rr.pivots[r]] = -rr.m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solve A x = b; nullopt when inconsistent. For underdetermined systems
// returns one solution (free variables zero).
inline std::optional<std::vector<RatFunc>> solve(const Mat& a, const std::vector<RatFunc>& b) {
    assert(b.size() == a.rows());
    Mat aug(a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    Rref rr = rref(std::move(aug));
    std::vector<RatFunc> x(a.cols());
    for (size_t r = 0; r < rr.pivots.size(); ++r) {
        if (rr.pivots[r] == a.cols()) return std::nullopt;  // 0 = 1 row
        x[rr.pivots[r]] = rr.m.at(r, a.cols());
    }
    return x;
}

inline std::optional<Mat> inverse(const Mat& a) {
    assert(a.is_square());
    size_t n = a.rows();
    Mat aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = RatFunc(1);
    }
    Rref rr = rref(std::move(aug));
    if (rr.pivots.size() < n || rr.pivots[n - 1] != n - 1) return std::nullopt;
    Mat inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv.at(i, j) = rr.m.at(i, n + j);
    return inv;
}

// --- tensor-construction index bases -------------------------------------

// exponent vectors of degree-d monomials in n variables, graded-lex, b1 > ... > bn
inline std::vector<std::vector<int>> sym_basis_exponents(size_t n, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int rem) {
        if (i + 1 == n) {
            cur[i] = rem;
            out.push_back(cur);
            return;
        }
        for (int e = rem; e >= 0; --e) {
            cur[i] = e;
            rec(i + 1, rem - e);
        }
    };
    if (n == 0) return out;
    rec(0, d);
    return out;
}

// sorted d-subsets of {0..n-1} in lexicographic order
inline std::vector<std::vector<size_t>> wedge_basis_subsets(size_t n, size_t d) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> idx(d);
    std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t start) {
        if (pos == d) {
            out.push_back(idx);
            return;
        }
        for (size_t v = start; v + (d - pos - 1) < n; ++v) {
            idx[pos] = v;
            rec(pos + 1, v + 1);
        }
    };
    rec(0, 0);
    return out;
}

inline Mat kronecker(const Mat& a, const Mat& b) {
    if (!a.is_square() || !b.is_square())
        throw std::domain_error("kronecker: square inputs required");
    size_t n = a.rows(), m = b.rows();
    Mat r(n * m, n * m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (size_t k = 0; k < m; ++k)
                for (size_t l = 0; l < m; ++l) {
                    if (b.at(k, l).is_zero()) continue;
                    r.at(i * m + k, j * m + l) = a.at(i, j) * b.at(k, l);
                }
        }
    return r;
}

// Matrix of the induced map on Sym^d w.r.t. the graded-lex monomial basis:
// row for monomial e expands prod_i (sum_j A[i][j] b_j)^{e_i}.
inline Mat sym_power_matrix(const Mat& a, int d) {
    if (!a.is_square()) throw std::domain_error("sym_power_matrix: square input required");
    if (d < 1) throw std::domain_error("sym_power_matrix: d must be positive");
    size_t n = a.rows();
    auto basis = sym_basis_exponents(n, d);
    std::map<std::vector<int>, size_t> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;

    Mat r(basis.size(), basis.size());
    using MPoly = std::map<std::vector<int>, RatFunc>;  // multivariate in b's
    for (size_t bi = 0; bi < basis.size(); ++bi) {
        MPoly acc;
        acc[std::vector<int>(n, 0)] = RatFunc(1);
        for (size_t var = 0; var < n; ++var) {
            for (int rep = 0; rep < basis[bi][var]; ++rep) {
                MPoly next;
                for (const auto& [mon, coef] : acc) {
                    for (size_t j = 0; j < n; ++j) {
                        if (a.at(var, j).is_zero()) continue;
                        std::vector<int> m2 = mon;
                        ++m2[j];
                        auto it = next.find(m2);
                        RatFunc add = coef * a.at(var, j);
                        if (it == next.end())
                            next.emplace(std::move(m2), std::move(add));
                        else
                            it->second += add;
                    }
                }
                acc = std::move(next);
            }
        }
        for (const auto& [mon, coef] : acc) r.at(bi, index.at(mon)) = coef;
    }
    return r;
}

// d-th compound matrix: entry [I][J] = det A[I, J], bases in lex subset order.
inline Mat ext_power_matrix(const Mat& a, int d) {
    if (!a.is_square()) throw std::domain_error("ext_power_matrix: square input required");
    size_t n = a.rows();
    if (d < 1 || (size_t)d > n) throw std::domain_error("ext_power_matrix: d out of range");
    auto subs = wedge_basis_subsets(n, d);
    Mat r(subs.size(), subs.size());
    for (size_t i = 0; i < subs.size(); ++i)
        for (size_t j = 0; j < subs.size(); ++j) r.at(i, j) = det(a.submatrix(subs[i], subs[j]));
    return r;
}

// Incremental row span over Q(x) with dependency certificates. Generators are
// the vectors accepted by add(), in insertion order; each stored echelon row
// carries its expression as a combination of generators.
class IncrementalSpan {
public:
    explicit IncrementalSpan(size_t dim) : dim_(dim) {}

    size_t size() const { return rows_.size(); }

    // Returns coefficients c with v = sum_k c[k] * generator_k when v is
    // dependent on the accepted generators; nullopt when v extends the span
    // (v then becomes the next generator).
    std::optional<std::vector<RatFunc>> add(const std::vector<RatFunc>& v) {
        auto [red, combo] = reduce(v);
        size_t piv = pivot_of(red);
        if (piv == dim_) return combo;
        // E_new = (v - sum combo_j g_j) / red[piv]
        RatFunc inv = red[piv].inv();
        for (auto& x : red) x *= inv;
        std::vector<RatFunc> trow(count_ + 1);
        for (size_t j = 0; j < count_; ++j) trow[j] = -combo[j] * inv;
        trow[count_] = inv;
        rows_.push_back(std::move(red));
        combos_.push_back(std::move(trow));
        pivots_.push_back(piv);
        count_ += 1;
        return std::nullopt;
    }

    bool contains(const std::vector<RatFunc>& v) const {
        auto [red, combo] = reduce(v);
        return pivot_of(red) == dim_;
    }

    // coordinates of v over the generators, if v is in the span
    std::optional<std::vector<RatFunc>> coordinates(const std::vector<RatFunc>& v) const {
        auto [red, combo] = reduce(v);
        if (pivot_of(red) != dim_) return std::nullopt;
        return combo;
    }

    // residue of v modulo the span (image under reduction)
    std::vector<RatFunc> residue(const std::vector<RatFunc>& v) const { return reduce(v).first; }

private:
    size_t pivot_of(const std::vector<RatFunc>& v) const {
        for (size_t j = 0; j < dim_; ++j)
            if (!v[j].is_zero()) return j;
        return dim_;
    }

    // v = reduced + sum_j combo[j] * generator_j
    std::pair<std::vector<RatFunc>, std::vector<RatFunc>> reduce(std::vector<RatFunc> v) const {
        assert(v.size() == dim_);
        std::vector<RatFunc> combo(count_, RatFunc(0));
        for (size_t r = 0; r < rows_.size(); ++r) {
            RatFunc f = v[pivots_[r]];
            if (f.is_zero()) continue;
            for (size_t j = 0; j < dim_; ++j)
                if (!rows_[r][j].is_zero()) v[j] -= f * rows_[r][j];
            for (size_t k = 0; k < combos_[r].size(); ++k)
                if (!combos_[r][k].is_zero()) combo[k] += f * combos_[r][k];
        }
        return {std::move(v), std::move(combo)};
    }

    size_t dim_;
    size_t count_ = 0;
    std::vector<std::vector<RatFunc>> rows_;    // echelon, pivot-normalized
    std::vector<std::vector<RatFunc>> combos_;  // echelon row as combo of generators
    std::vector<size_t> pivots_;
};

}  // namespace oresolve
