#pragma once

// Exact arbitrary-precision integers and rationals on top of GMP.
// Int wraps mpz_t, Rat wraps mpq_t; Rat is always canonical
// (gcd(|num|, den) = 1, den > 0), which mpq_canonicalize guarantees.

#include <gmp.h>

#include <cstdint>
#include <cstdlib>
#include <iosfwd>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace oresolve {

class Int {
public:
    Int() { mpz_init(z_); }
    Int(long v) { mpz_init_set_si(z_, v); }
    explicit Int(const std::string& s) {
        if (mpz_init_set_str(z_, s.c_str(), 10) != 0) {
            mpz_clear(z_);
            throw std::invalid_argument("Int: bad integer literal: " + s);
        }
    }
    Int(const Int& o) { mpz_init_set(z_, o.z_); }
    Int(Int&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    Int& operator=(const Int& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    Int& operator=(Int&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~Int() { mpz_clear(z_); }

    mpz_ptr raw() { return z_; }
    mpz_srcptr raw() const { return z_; }

    bool is_zero() const { return mpz_sgn(z_) == 0; }
    bool is_one() const { return mpz_cmp_ui(z_, 1) == 0; }
    int sgn() const { return mpz_sgn(z_); }
    bool odd() const { return mpz_odd_p(z_) != 0; }

    bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
    long to_long() const {
        if (!fits_long()) throw std::overflow_error("Int: does not fit long");
        return mpz_get_si(z_);
    }
    double to_double() const { return mpz_get_d(z_); }
    size_t bits() const { return mpz_sizeinbase(z_, 2); }

    friend Int operator+(const Int& a, const Int& b) { Int r; mpz_add(r.z_, a.z_, b.z_); return r; }
    friend Int operator-(const Int& a, const Int& b) { Int r; mpz_sub(r.z_, a.z_, b.z_); return r; }
    friend Int operator*(const Int& a, const Int& b) { Int r; mpz_mul(r.z_, a.z_, b.z_); return r; }
    Int operator-() const { Int r; mpz_neg(r.z_, z_); return r; }
    Int& operator+=(const Int& b) { mpz_add(z_, z_, b.z_); return *this; }
    Int& operator-=(const Int& b) { mpz_sub(z_, z_, b.z_); return *this; }
    Int& operator*=(const Int& b) { mpz_mul(z_, z_, b.z_); return *this; }

    // Truncated division; exact division has a fast path.
    friend Int operator/(const Int& a, const Int& b) { Int r; mpz_tdiv_q(r.z_, a.z_, b.raw()); return r; }
    friend Int operator%(const Int& a, const Int& b) { Int r; mpz_tdiv_r(r.z_, a.z_, b.raw()); return r; }
    static Int divexact(const Int& a, const Int& b) { Int r; mpz_divexact(r.z_, a.z_, b.z_); return r; }
    bool divisible_by(const Int& b) const { return mpz_divisible_p(z_, b.z_) != 0; }

    friend bool operator==(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) == 0; }
    friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
    friend bool operator<(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) < 0; }
    friend bool operator<=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
    friend bool operator>(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) > 0; }
    friend bool operator>=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) >= 0; }

    static Int gcd(const Int& a, const Int& b) { Int r; mpz_gcd(r.z_, a.z_, b.z_); return r; }
    static Int lcm(const Int& a, const Int& b) { Int r; mpz_lcm(r.z_, a.z_, b.z_); return r; }
    static Int abs(const Int& a) { Int r; mpz_abs(r.z_, a.z_); return r; }
    static Int pow(const Int& a, unsigned long e) { Int r; mpz_pow_ui(r.z_, a.z_, e); return r; }
    // Exact n-th root test: returns true and sets root iff a is a perfect n-th power.
    static bool perfect_root(const Int& a, unsigned long n, Int& root) {
        if (mpz_sgn(a.raw()) < 0 && n % 2 == 0) return false;
        Int r;
        int exact = mpz_root(r.z_, a.z_, n);
        if (!exact) return false;
        root = r;
        return true;
    }
    static Int binomial(unsigned long n, unsigned long k) { Int r; mpz_bin_uiui(r.z_, n, k); return r; }
    // Symmetric remainder in (-m/2, m/2].
    static Int mods(const Int& a, const Int& m) {
        Int r;
        mpz_mod(r.z_, a.z_, m.z_);
        Int half;
        mpz_tdiv_q_2exp(half.z_, m.z_, 1);
        if (r > half) mpz_sub(r.z_, r.z_, m.z_);
        return r;
    }
    unsigned long mod_ui(unsigned long m) const { return mpz_fdiv_ui(z_, m); }

    std::string str() const {
        char* s = mpz_get_str(nullptr, 10, z_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }
    friend std::ostream& operator<<(std::ostream& os, const Int& a) { return os << a.str(); }

private:
    mpz_t z_;
};

class Rat {
public:
    Rat() { mpq_init(q_); }
    Rat(long v) {
        mpq_init(q_);
        mpq_set_si(q_, v, 1);
    }
    Rat(long num, long den) {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        mpq_init(q_);
        if (den < 0) {
            num = -num;
            den = -den;
        }
        mpq_set_si(q_, num, (unsigned long)den);
        mpq_canonicalize(q_);
    }
    Rat(const Int& num, const Int& den) {
        if (den.is_zero()) throw std::domain_error("Rat: zero denominator");
        mpq_init(q_);
        mpz_set(mpq_numref(q_), num.raw());
        mpz_set(mpq_denref(q_), den.raw());
        mpq_canonicalize(q_);
    }
    explicit Rat(const Int& n) {
        mpq_init(q_);
        mpz_set(mpq_numref(q_), n.raw());
    }
    Rat(const Rat& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rat(Rat&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rat& operator=(const Rat& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rat& operator=(Rat&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rat() { mpq_clear(q_); }

    mpq_ptr raw() { return q_; }
    mpq_srcptr raw() const { return q_; }

    Int num() const { Int r; mpz_set(r.raw(), mpq_numref(q_)); return r; }
    Int den() const { Int r; mpz_set(r.raw(), mpq_denref(q_)); return r; }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_one() const { return mpq_cmp_ui(q_, 1, 1) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    int sgn() const { return mpq_sgn(q_); }
    double to_double() const { return mpq_get_d(q_); }

    friend Rat operator+(const Rat& a, const Rat& b) { Rat r; mpq_add(r.q_, a.q_, b.q_); return r; }
    friend Rat operator-(const Rat& a, const Rat& b) { Rat r; mpq_sub(r.q_, a.q_, b.q_); return r; }
    friend Rat operator*(const Rat& a, const Rat& b) { Rat r; mpq_mul(r.q_, a.q_, b.q_); return r; }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat: division by zero");
        Rat r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }
    Rat operator-() const { Rat r; mpq_neg(r.q_, q_); return r; }
    Rat& operator+=(const Rat& b) { mpq_add(q_, q_, b.q_); return *this; }
    Rat& operator-=(const Rat& b) { mpq_sub(q_, q_, b.q_); return *this; }
    Rat& operator*=(const Rat& b) { mpq_mul(q_, q_, b.q_); return *this; }
    Rat& operator/=(const Rat& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) > 0; }

    Rat inv() const {
        if (is_zero()) throw std::domain_error("Rat: inverse of zero");
        Rat r;
        mpq_inv(r.q_, q_);
        return r;
    }
    static Rat abs(const Rat& a) { Rat r; mpq_abs(r.q_, a.q_); return r; }
    static Rat pow(const Rat& a, long e) {
        if (e == 0) return Rat(1);
        Rat base = e < 0 ? a.inv() : a;
        unsigned long k = e < 0 ? -(unsigned long)e : (unsigned long)e;
        Rat r;
        mpz_pow_ui(mpq_numref(r.q_), mpq_numref(base.q_), k);
        mpz_pow_ui(mpq_denref(r.q_), mpq_denref(base.q_), k);
        return r;
    }
    // Rational n-th root if one exists.
    static bool perfect_root(const Rat& a, unsigned long n, Rat& root) {
        Int rn, rd;
        if (!Int::perfect_root(a.num(), n, rn)) return false;
        if (!Int::perfect_root(a.den(), n, rd)) return false;
        root = Rat(rn, rd);
        return true;
    }

    std::string str() const {
        char* s = mpq_get_str(nullptr, 10, q_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }
    friend std::ostream& operator<<(std::ostream& os, const Rat& a) { return os << a.str(); }

private:
    mpq_t q_;
};

// Deterministic splitmix64-based source for reproducible randomized tests.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [lo, hi]
    long range(long lo, long hi) { return lo + (long)(next() % (std::uint64_t)(hi - lo + 1)); }
    Rat rat(long lo, long hi) { return Rat(range(lo, hi)); }
    Rat nonzero_rat(long lo, long hi) {
        for (;;) {
            Rat r = rat(lo, hi);
            if (!r.is_zero()) return r;
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace oresolve
