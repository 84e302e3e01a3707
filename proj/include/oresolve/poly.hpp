#pragma once

// Dense univariate polynomials over Q, plus the integer-polynomial kernel
// (primitive parts, Kronecker-substitution multiplication, modular gcd)
// that the rational layer and the factorizer share.

#include <algorithm>
#include <cassert>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "oresolve/rat.hpp"

namespace oresolve {

class Poly;
namespace zpoly {

// Integer polynomials are plain coefficient vectors, index = degree.
using ZP = std::vector<Int>;

inline int deg(const ZP& a) {
    for (int i = (int)a.size() - 1; i >= 0; --i)
        if (!a[i].is_zero()) return i;
    return -1;
}

inline void trim(ZP& a) { a.resize(deg(a) + 1); }

inline Int content(const ZP& a) {
    Int g(0);
    for (const Int& c : a) {
        g = Int::gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

inline ZP mul_schoolbook(const ZP& a, const ZP& b) {
    if (a.empty() || b.empty()) return {};
    ZP r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            mpz_addmul(r[i + j].raw(), a[i].raw(), b[j].raw());
        }
    }
    return r;
}

// Kronecker substitution: evaluate at 2^bits, one big multiply, unpack with
// symmetric digits. Handles signed coefficients.
inline ZP mul_kronecker(const ZP& a, const ZP& b) {
    size_t maxbits = 0;
    for (const Int& c : a) maxbits = std::max(maxbits, c.bits());
    size_t maxbits_b = 0;
    for (const Int& c : b) maxbits_b = std::max(maxbits_b, c.bits());
    size_t nmin = std::min(a.size(), b.size());
    size_t cnt_bits = 1;
    while (((size_t)1 << cnt_bits) < nmin) ++cnt_bits;
    // product coefficient magnitude < nmin * 2^(maxbits+maxbits_b); +2 slack for sign
    size_t bbits = maxbits + maxbits_b + cnt_bits + 2;

    auto pack = [&](const ZP& p) {
        Int acc(0);
        Int t;
        for (size_t i = p.size(); i-- > 0;) {
            mpz_mul_2exp(acc.raw(), acc.raw(), bbits);
            mpz_add(acc.raw(), acc.raw(), p[i].raw());
        }
        return acc;
    };
    Int pa = pack(a), pb = pack(b);
    Int prod = pa * pb;
    size_t rn = a.size() + b.size() - 1;
    ZP r(rn, Int(0));
    Int digit, half;
    mpz_setbit(half.raw(), bbits - 1);  // 2^(bbits-1)
    for (size_t i = 0; i < rn; ++i) {
        mpz_fdiv_r_2exp(digit.raw(), prod.raw(), bbits);
        if (mpz_cmp(digit.raw(), half.raw()) >= 0) {
            Int full;
            mpz_setbit(full.raw(), bbits);
            digit -= full;
        }
        r[i] = digit;
        mpz_sub(prod.raw(), prod.raw(), digit.raw());
        mpz_fdiv_q_2exp(prod.raw(), prod.raw(), bbits);
    }
    return r;
}

inline ZP mul(const ZP& a, const ZP& b) {
    if (a.empty() || b.empty()) return {};
    size_t work = a.size() * b.size();
    if (work < 1024) return mul_schoolbook(a, b);
    return mul_kronecker(a, b);
}

inline ZP shift_up(const ZP& a, size_t k) {
    if (a.empty()) return {};
    ZP r(a.size() + k, Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i + k] = a[i];
    return r;
}

// 64-bit prime field helpers for modular gcd / factoring.
struct Fp {
    std::uint64_t p;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return (std::uint64_t)((unsigned __int128)a * b % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
};

using FpPoly = std::vector<std::uint64_t>;

inline int fdeg(const FpPoly& a) {
    for (int i = (int)a.size() - 1; i >= 0; --i)
        if (a[i]) return i;
    return -1;
}

inline void ftrim(FpPoly& a) { a.resize(fdeg(a) + 1); }

inline FpPoly fmul(const Fp& F, const FpPoly& a, const FpPoly& b) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j]) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    return r;
}

inline void fmake_monic(const Fp& F, FpPoly& a) {
    ftrim(a);
    if (a.empty()) return;
    std::uint64_t c = F.inv(a.back());
    if (c == 1) return;
    for (auto& x : a) x = F.mul(x, c);
}

inline FpPoly frem(const Fp& F, FpPoly a, const FpPoly& b) {
    ftrim(a);
    int db = fdeg(b);
    assert(db >= 0);
    std::uint64_t binv = F.inv(b[db]);
    while ((int)a.size() - 1 >= db) {
        int da = (int)a.size() - 1;
        std::uint64_t c = F.mul(a[da], binv);
        if (c) {
            for (int i = 0; i <= db; ++i) a[da - db + i] = F.sub(a[da - db + i], F.mul(c, b[i]));
        }
        a.pop_back();
        ftrim(a);
        if (a.empty()) break;
    }
    return a;
}

inline FpPoly fdiv(const Fp& F, FpPoly a, const FpPoly& b, FpPoly* rem_out = nullptr) {
    ftrim(a);
    int db = fdeg(b);
    assert(db >= 0);
    std::uint64_t binv = F.inv(b[db]);
    int da = fdeg(a);
    if (da < db) {
        if (rem_out) *rem_out = a;
        return {};
    }
    FpPoly q(da - db + 1, 0);
    while ((da = fdeg(a)) >= db) {
        std::uint64_t c = F.mul(a[da], binv);
        q[da - db] = c;
        for (int i = 0; i <= db; ++i) a[da - db + i] = F.sub(a[da - db + i], F.mul(c, b[i]));
        ftrim(a);
    }
    if (rem_out) *rem_out = a;
    return q;
}

inline FpPoly fgcd(const Fp& F, FpPoly a, FpPoly b) {
    ftrim(a);
    ftrim(b);
    while (!b.empty()) {
        FpPoly r = frem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    fmake_monic(F, a);
    return a;
}

inline FpPoly fpowmod(const Fp& F, FpPoly a, Int e, const FpPoly& m) {
    FpPoly r{1};
    a = frem(F, a, m);
    while (e.sgn() > 0) {
        if (e.odd()) r = frem(F, fmul(F, r, a), m);
        a = frem(F, fmul(F, a, a), m);
        mpz_fdiv_q_2exp(e.raw(), e.raw(), 1);
    }
    return r;
}

inline FpPoly to_fp(const Fp& F, const ZP& a) {
    FpPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        std::uint64_t v = Int::abs(a[i]).mod_ui(F.p);
        r[i] = a[i].sgn() < 0 && v ? F.p - v : v;
    }
    ftrim(r);
    return r;
}

inline const std::vector<std::uint64_t>& prime_pool() {
    static std::vector<std::uint64_t> primes = [] {
        std::vector<std::uint64_t> ps;
        // odd primes just below 2^31 (fits comfortably in __int128 mulmod)
        std::uint64_t candidate = (1ull << 31) - 1;
        auto is_prime = [](std::uint64_t n) {
            if (n < 2) return false;
            for (std::uint64_t d = 2; d * d <= n; ++d)
                if (n % d == 0) return false;
            return true;
        };
        while (ps.size() < 200) {
            if (is_prime(candidate)) ps.push_back(candidate);
            --candidate;
        }
        return ps;
    }();
    return primes;
}

// gcd of primitive integer polynomials via modular images + CRT.
inline ZP gcd_primitive(const ZP& a, const ZP& b) {
    int da = deg(a), db = deg(b);
    if (da < 0) return b;
    if (db < 0) return a;
    Int lc_gcd = Int::gcd(a[da], b[db]);
    int best_deg = std::min(da, db) + 1;
    Int modulus(1);
    ZP acc;
    for (std::uint64_t p : prime_pool()) {
        Fp F{p};
        if (a[da].mod_ui(p) == 0 || b[db].mod_ui(p) == 0) continue;
        FpPoly g = fgcd(F, to_fp(F, a), to_fp(F, b));
        int dg = fdeg(g);
        if (dg == 0) return ZP{Int(1)};
        if (dg > best_deg) continue;  // unlucky prime
        std::uint64_t scale = Int::abs(lc_gcd).mod_ui(p);
        if (lc_gcd.sgn() < 0 && scale) scale = p - scale;
        for (auto& c : g) c = F.mul(c, scale);
        if (dg < best_deg) {
            best_deg = dg;
            modulus = Int(1);
            acc.assign(dg + 1, Int(0));
        }
        // CRT combine
        Int pI((long)0);
        mpz_set_ui(pI.raw(), p);
        if (modulus.is_one()) {
            for (int i = 0; i <= dg; ++i) {
                Int v;
                mpz_set_ui(v.raw(), g[i]);
                acc[i] = Int::mods(v, pI);
            }
            modulus = pI;
        } else {
            Int newmod = modulus * pI;
            for (int i = 0; i <= dg; ++i) {
                Int target;
                mpz_set_ui(target.raw(), g[i]);
                // x = acc[i] mod modulus, x = target mod p
                Int diff = Int::mods(target - acc[i], pI);
                Int minv;
                mpz_invert(minv.raw(), modulus.raw(), pI.raw());
                Int t = Int::mods(diff * minv, pI);
                acc[i] = Int::mods(acc[i] + t * modulus, newmod);
            }
            modulus = newmod;
        }
        // primitive part, then verify by exact division
        ZP cand = acc;
        Int ct = content(cand);
        if (!ct.is_zero() && !ct.is_one())
            for (auto& c : cand) c = Int::divexact(c, ct);
        if (!cand.empty() && cand.back().sgn() < 0)
            for (auto& c : cand) c = -c;
        // trial division check
        auto divides = [&](const ZP& f) {
            ZP r = f;
            int dc = deg(cand);
            if (dc < 0) return false;
            while (true) {
                int dr = deg(r);
                if (dr < 0) return true;
                if (dr < dc) return false;
                if (!r[dr].divisible_by(cand[dc])) return false;
                Int q = Int::divexact(r[dr], cand[dc]);
                for (int i = 0; i <= dc; ++i) r[dr - dc + i] -= q * cand[i];
            }
        };
        if (divides(a) && divides(b)) return cand;
    }
    // gcd over this many primes should never fail at our sizes
    assert(false && "modular gcd exhausted prime pool");
    return ZP{Int(1)};
}

}  // namespace zpoly

// Polynomial over Q. coeffs[i] is the coefficient of x^i; the leading
// coefficient of a nonzero polynomial is nonzero.
class Poly {
public:
    Poly() = default;
    Poly(const Rat& c) {
        if (!c.is_zero()) coeffs_.push_back(c);
    }
    Poly(long c) : Poly(Rat(c)) {}
    explicit Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    static Poly x() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }
    static Poly monomial(const Rat& c, size_t k) {
        std::vector<Rat> v(k + 1, Rat(0));
        v[k] = c;
        return Poly(std::move(v));
    }

    const std::vector<Rat>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    int degree() const { return (int)coeffs_.size() - 1; }
    const Rat& leading() const {
        assert(!coeffs_.empty());
        return coeffs_.back();
    }
    Rat coeff(size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }
    Rat constant_term() const { return coeff(0); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rat> r(std::max(a.coeffs_.size(), b.coeffs_.size()), Rat(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rat> r(std::max(a.coeffs_.size(), b.coeffs_.size()), Rat(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) r[i] -= b.coeffs_[i];
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<Rat> r = coeffs_;
        for (auto& c : r) c = -c;
        Poly out;
        out.coeffs_ = std::move(r);
        return out;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.coeffs_.size() == 1) return b.scaled(a.coeffs_[0]);
        if (b.coeffs_.size() == 1) return a.scaled(b.coeffs_[0]);
        // clear denominators, multiply over Z (Kronecker above threshold)
        auto [ca, za] = a.to_integer();
        auto [cb, zb] = b.to_integer();
        zpoly::ZP zr = zpoly::mul(za, zb);
        Rat c = ca * cb;
        std::vector<Rat> r(zr.size());
        for (size_t i = 0; i < zr.size(); ++i) r[i] = Rat(zr[i]) * c;
        return Poly(std::move(r));
    }
    Poly scaled(const Rat& c) const {
        if (c.is_zero()) return {};
        std::vector<Rat> r = coeffs_;
        for (auto& x : r) x *= c;
        Poly out;
        out.coeffs_ = std::move(r);
        return out;
    }
    friend Poly operator*(const Rat& c, const Poly& a) { return a.scaled(c); }

    Poly& operator+=(const Poly& b) { *this = *this + b; return *this; }
    Poly& operator-=(const Poly& b) { *this = *this - b; return *this; }
    Poly& operator*=(const Poly& b) { *this = *this * b; return *this; }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.coeffs_.size() != b.coeffs_.size()) return false;
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            if (a.coeffs_[i] != b.coeffs_[i]) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Division with remainder over the field Q.
    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero");
        std::vector<Rat> rem = a.coeffs_;
        int db = b.degree();
        Rat lb = b.leading();
        int dr = (int)rem.size() - 1;
        if (dr < db) return {Poly(), a};
        std::vector<Rat> q(dr - db + 1, Rat(0));
        for (int k = dr; k >= db; --k) {
            if (rem[k].is_zero()) continue;
            Rat c = rem[k] / lb;
            q[k - db] = c;
            for (int i = 0; i <= db; ++i) rem[k - db + i] -= c * b.coeffs_[i];
        }
        return {Poly(std::move(q)), Poly(std::move(rem))};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }

    bool divides(const Poly& a) const { return divrem(a, *this).second.is_zero(); }

    Poly monic() const {
        if (is_zero()) return {};
        return scaled(leading().inv());
    }

    // (content, primitive integer coefficients): *this = content * Z-poly,
    // Z-poly primitive with positive leading coefficient.
    std::pair<Rat, zpoly::ZP> to_integer() const {
        if (is_zero()) return {Rat(0), {}};
        Int den_lcm(1);
        for (const Rat& c : coeffs_) den_lcm = Int::lcm(den_lcm, c.den());
        zpoly::ZP z(coeffs_.size());
        for (size_t i = 0; i < coeffs_.size(); ++i)
            z[i] = coeffs_[i].num() * Int::divexact(den_lcm, coeffs_[i].den());
        Int ct = zpoly::content(z);
        if (z.back().sgn() < 0) ct = -ct;
        for (auto& c : z) c = Int::divexact(c, ct);
        return {Rat(ct, den_lcm), z};
    }
    static Poly from_integer(const zpoly::ZP& z, const Rat& content = Rat(1)) {
        std::vector<Rat> r(z.size());
        for (size_t i = 0; i < z.size(); ++i) r[i] = Rat(z[i]) * content;
        return Poly(std::move(r));
    }

    static Poly gcd(const Poly& a, const Poly& b) {
        if (a.is_zero()) return b.monic();
        if (b.is_zero()) return a.monic();
        if (a.is_constant() || b.is_constant()) return Poly(Rat(1));
        zpoly::ZP g = zpoly::gcd_primitive(a.to_integer().second, b.to_integer().second);
        return from_integer(g).monic();
    }
    static Poly lcm(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        return (a * b) / gcd(a, b);
    }

    Rat eval(const Rat& v) const {
        Rat r(0);
        for (size_t i = coeffs_.size(); i-- > 0;) r = r * v + coeffs_[i];
        return r;
    }

    // p(x + k), exact for rational k.
    Poly shifted(const Rat& k) const {
        if (is_zero() || k.is_zero()) return *this;
        // Horner: p(x+k) computed by iterated multiply-by-(x+k)-and-add
        Poly r;
        Poly xk(std::vector<Rat>{k, Rat(1)});
        for (size_t i = coeffs_.size(); i-- > 0;) r = r * xk + Poly(coeffs_[i]);
        return r;
    }

    // p(c*x) for rational c != 0.
    Poly dilated(const Rat& c) const {
        std::vector<Rat> r = coeffs_;
        Rat pw(1);
        for (size_t i = 1; i < r.size(); ++i) {
            pw *= c;
            r[i] *= pw;
        }
        return Poly(std::move(r));
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Rat> r(coeffs_.size() - 1);
        for (size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = Rat((long)i) * coeffs_[i];
        return Poly(std::move(r));
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (size_t i = coeffs_.size(); i-- > 0;) {
            const Rat& c = coeffs_[i];
            if (c.is_zero()) continue;
            Rat ac = Rat::abs(c);
            if (out.empty()) {
                if (c.sgn() < 0) out += "-";
            } else {
                out += c.sgn() < 0 ? " - " : " + ";
            }
            bool unit = ac.is_one();
            if (i == 0) {
                out += ac.str();
            } else {
                if (!unit) {
                    if (!ac.is_integer())
                        out += ac.num().str() + "*" + var + (i > 1 ? "^" + std::to_string(i) : "") +
                               "/" + ac.den().str();
                    else
                        out += ac.str() + "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
                } else {
                    out += var + (i > 1 ? "^" + std::to_string(i) : "");
                }
                continue;
            }
        }
        return out;
    }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
    std::vector<Rat> coeffs_;
};

// Resultant via subresultant-free rational PRS (test-oracle scale only).
inline Rat resultant(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Rat(0);
    Poly f = a, g = b;
    Rat res(1);
    while (g.degree() > 0) {
        Poly r = f % g;
        int df = f.degree(), dg = g.degree(), dr = r.degree();
        // res(f,g) = (-1)^(df*dg) lc(g)^(df-dr) res(g,r)
        Rat lc_pow = Rat::pow(g.leading(), df - (r.is_zero() ? 0 : dr));
        if ((df % 2) && (dg % 2)) res = -res;
        res = res * lc_pow;
        if (r.is_zero()) return Rat(0);
        f = g;
        g = r;
    }
    // g constant
    return res * Rat::pow(g.coeff(0), f.degree());
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

}  // namespace oresolve
