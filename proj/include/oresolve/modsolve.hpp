#pragma once

// Nullspace of large exact rational matrices through modular images plus
// Chinese remaindering and rational reconstruction. The reconstructed basis
// is verified against the exact matrix, so a bad prime cannot leak through.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "oresolve/rat.hpp"

namespace oresolve {
namespace modsolve {

// rational reconstruction: r mod m -> a/b with |a|, b <= sqrt(m/2), b > 0
inline bool rational_reconstruct(const Int& r, const Int& m, Rat& out) {
    Int bound;
    mpz_sqrt(bound.raw(), m.raw());
    Int a0 = m, a1 = Int::mods(r, m);
    if (a1.sgn() < 0) a1 = a1 + m;
    Int b0(0), b1(1);
    while (Int::abs(a1) > bound) {
        Int q = a0 / a1;
        Int a2 = a0 - q * a1;
        Int b2 = b0 - q * b1;
        a0 = a1;
        a1 = a2;
        b0 = b1;
        b1 = b2;
    }
    if (b1.is_zero()) return false;
    if (Int::abs(b1) > bound) return false;
    Int g = Int::gcd(Int::abs(a1), Int::abs(b1));
    if (!g.is_one()) {
        // common factor must also divide m for the residue to be valid; reject
        return false;
    }
    out = Rat(a1, b1);
    return true;
}

struct SparseRow {
    std::vector<std::pair<std::uint32_t, Rat>> entries;  // (column, value)
};

// Dense mod-p echelon with delayed reduction, streaming rows into a kept
// echelon of at most `cols` rows.
class ModEchelon {
public:
    ModEchelon(std::uint64_t p, size_t cols) : p_(p), cols_(cols) {}

    // reduce a dense mod-p row against the echelon; if a pivot remains, keep it
    void add_row(std::vector<std::uint64_t> row) {
        for (;;) {
            size_t piv = cols_;
            for (size_t j = 0; j < cols_; ++j)
                if (row[j]) {
                    piv = j;
                    break;
                }
            if (piv == cols_) return;
            auto it = pivot_row_.find(piv);
            if (it == pivot_row_.end()) {
                // normalize and keep
                std::uint64_t inv = pow(row[piv], p_ - 2);
                for (size_t j = piv; j < cols_; ++j)
                    if (row[j]) row[j] = mul(row[j], inv);
                pivot_row_[piv] = rows_.size();
                rows_.push_back(std::move(row));
                return;
            }
            const auto& er = rows_[it->second];
            std::uint64_t f = row[piv];
            for (size_t j = piv; j < cols_; ++j)
                if (er[j]) row[j] = sub(row[j], mul(f, er[j]));
        }
    }

    // back-substitute to reduced echelon and return the canonical nullspace
    // basis (one vector per free column, unit at the free column).
    std::vector<std::vector<std::uint64_t>> nullspace() {
        // full reduction upward
        std::vector<std::pair<size_t, size_t>> pivs(pivot_row_.begin(), pivot_row_.end());
        std::sort(pivs.begin(), pivs.end());
        for (size_t a = 0; a < pivs.size(); ++a) {
            for (size_t b = a + 1; b < pivs.size(); ++b) {
                auto& ra = rows_[pivs[a].second];
                const auto& rb = rows_[pivs[b].second];
                std::uint64_t f = ra[pivs[b].first];
                if (!f) continue;
                for (size_t j = pivs[b].first; j < cols_; ++j)
                    if (rb[j]) ra[j] = sub(ra[j], mul(f, rb[j]));
            }
        }
        std::vector<bool> is_piv(cols_, false);
        for (auto& [c, r] : pivot_row_) is_piv[c] = true;
        std::vector<std::vector<std::uint64_t>> basis;
        for (size_t free = 0; free < cols_; ++free) {
            if (is_piv[free]) continue;
            std::vector<std::uint64_t> v(cols_, 0);
            v[free] = 1;
            for (auto& [c, r] : pivot_row_) {
                std::uint64_t val = rows_[r][free];
                if (val) v[c] = p_ - val;
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

    std::vector<size_t> pivot_columns() const {
        std::vector<size_t> out;
        for (auto& [c, r] : pivot_row_) out.push_back(c);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::uint64_t prime() const { return p_; }

private:
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return (std::uint64_t)((unsigned __int128)a * b % p_);
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    std::uint64_t p_;
    size_t cols_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::map<size_t, size_t> pivot_row_;
};

// Nullspace basis through modular images + CRT + rational reconstruction.
// `feed` streams the matrix rows into the echelon for a given prime and
// returns false when the prime is unusable (divides a denominator).
// `verify` is the exact acceptance gate for a reconstructed basis.
inline std::optional<std::vector<std::vector<Rat>>> nullspace_modular_gen(
    const std::function<bool(ModEchelon&)>& feed, size_t cols,
    const std::function<bool(const std::vector<std::vector<Rat>>&)>& verify,
    int max_primes = 24) {
    // prime pool near 2^59 keeps mulmod exact in __int128 and CRT roomy
    auto is_prime = [](std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    std::vector<std::uint64_t> primes;
    std::uint64_t cand = (1ull << 59) - 1;
    while ((int)primes.size() < max_primes) {
        if (is_prime(cand)) primes.push_back(cand);
        --cand;
    }

    std::vector<size_t> ref_pivots;
    std::vector<std::vector<Int>> acc;  // CRT accumulators per basis vector
    Int modulus(1);
    bool have_ref = false;

    for (std::uint64_t p : primes) {
        ModEchelon ech(p, cols);
        if (!feed(ech)) continue;
        auto piv = ech.pivot_columns();
        auto basis_p = ech.nullspace();
        if (!have_ref) {
            ref_pivots = piv;
            have_ref = true;
            acc.assign(basis_p.size(), std::vector<Int>(cols, Int(0)));
            modulus = Int(1);
        } else if (piv != ref_pivots) {
            // rank/pivot disagreement: if smaller rank, this prime is unlucky;
            // if larger, everything so far was unlucky - restart with this one
            if (piv.size() > ref_pivots.size()) {
                ref_pivots = piv;
                acc.assign(basis_p.size(), std::vector<Int>(cols, Int(0)));
                modulus = Int(1);
            } else {
                continue;
            }
        }
        // CRT fold
        Int pI((long)0);
        mpz_set_ui(pI.raw(), p);
        Int newmod = modulus * pI;
        for (size_t b = 0; b < basis_p.size(); ++b) {
            for (size_t j = 0; j < cols; ++j) {
                Int target((long)0);
                mpz_set_ui(target.raw(), basis_p[b][j]);
                if (modulus.is_one()) {
                    acc[b][j] = target;
                } else {
                    Int diff = Int::mods(target - acc[b][j], pI);
                    Int minv;
                    if (!mpz_invert(minv.raw(), modulus.raw(), pI.raw())) continue;
                    Int t = Int::mods(diff * minv, pI);
                    acc[b][j] = Int::mods(acc[b][j] + t * modulus, newmod);
                }
            }
        }
        modulus = newmod;
        // attempt reconstruction
        std::vector<std::vector<Rat>> basis(acc.size(), std::vector<Rat>(cols));
        bool ok = true;
        for (size_t b = 0; b < acc.size() && ok; ++b)
            for (size_t j = 0; j < cols && ok; ++j) {
                Rat v;
                if (!rational_reconstruct(acc[b][j], modulus, v)) ok = false;
                else basis[b][j] = v;
            }
        if (ok && verify(basis)) return basis;
    }
    return std::nullopt;
}

// Convenience wrapper for a fixed sparse rational matrix.
inline std::optional<std::vector<std::vector<Rat>>> nullspace_modular(
    const std::vector<SparseRow>& rows, size_t cols, int max_primes = 24) {
    auto feed = [&](ModEchelon& ech) {
        std::uint64_t p = ech.prime();
        for (const auto& row : rows) {
            std::vector<std::uint64_t> r(cols, 0);
            for (auto& [c, val] : row.entries) {
                std::uint64_t den = Int::abs(val.den()).mod_ui(p);
                if (den == 0) return false;
                std::uint64_t num = Int::abs(val.num()).mod_ui(p);
                if (val.num().sgn() < 0 && num) num = p - num;
                std::uint64_t a = den, e = p - 2, inv = 1;
                while (e) {
                    if (e & 1) inv = (std::uint64_t)((unsigned __int128)inv * a % p);
                    a = (std::uint64_t)((unsigned __int128)a * a % p);
                    e >>= 1;
                }
                r[c] = (std::uint64_t)((unsigned __int128)num * inv % p);
            }
            ech.add_row(std::move(r));
        }
        return true;
    };
    auto verify = [&](const std::vector<std::vector<Rat>>& basis) {
        for (const auto& v : basis)
            for (const auto& row : rows) {
                Rat s(0);
                for (auto& [c, val] : row.entries)
                    if (!v[c].is_zero()) s += val * v[c];
                if (!s.is_zero()) return false;
            }
        return true;
    };
    return nullspace_modular_gen(feed, cols, verify, max_primes);
}

}  // namespace modsolve
}  // namespace oresolve
