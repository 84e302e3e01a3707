#pragma once

// Rational functions over Q: normalized num/den with monic denominator and
// coprime parts. Shift by rational amounts and the x -> x/p substitutions
// used by the section-operator machinery.

#include <optional>
#include <ostream>

#include "oresolve/poly.hpp"

namespace oresolve {

class RatFunc {
public:
    RatFunc() : num_(), den_(Rat(1)) {}
    RatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}
    RatFunc(long c) : num_(Rat(c)), den_(Rat(1)) {}
    RatFunc(const Poly& p) : num_(p), den_(Rat(1)) {}
    RatFunc(const Poly& num, const Poly& den) { assign(num, den); }

    static RatFunc x() { return RatFunc(Poly::x()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    Rat constant_value() const {
        assert(is_constant());
        return num_.coeff(0);
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        // cross-cancel before multiplying to keep gcds small
        Poly g1 = Poly::gcd(a.num_, b.den_);
        Poly g2 = Poly::gcd(b.num_, a.den_);
        RatFunc r;
        r.num_ = (a.num_ / g1) * (b.num_ / g2);
        r.den_ = (a.den_ / g2) * (b.den_ / g1);
        r.fix_leading();
        return r;
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return a * b.inv();
    }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RatFunc& operator+=(const RatFunc& b) { *this = *this + b; return *this; }
    RatFunc& operator-=(const RatFunc& b) { *this = *this - b; return *this; }
    RatFunc& operator*=(const RatFunc& b) { *this = *this * b; return *this; }
    RatFunc& operator/=(const RatFunc& b) { *this = *this / b; return *this; }

    RatFunc inv() const {
        if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
        RatFunc r;
        r.num_ = den_;
        r.den_ = num_;
        r.fix_leading();
        return r;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    // f(x + k), exact for rational k.
    RatFunc shifted(const Rat& k) const {
        if (k.is_zero() || is_zero()) return *this;
        RatFunc r;
        r.num_ = num_.shifted(k);
        r.den_ = den_.shifted(k);
        r.fix_leading();
        return r;
    }

    // f(c x), c nonzero rational.
    RatFunc dilated(const Rat& c) const {
        RatFunc r;
        r.num_ = num_.dilated(c);
        r.den_ = den_.dilated(c);
        r.fix_leading();
        return r;
    }

    std::optional<Rat> eval(const Rat& v) const {
        Rat d = den_.eval(v);
        if (d.is_zero()) return std::nullopt;  // pole
        return num_.eval(v) / d;
    }

    std::string str() const {
        if (den_.is_one()) {
            if (num_.is_constant() || num_.coeffs().size() == 1) return num_.str();
            return num_.str();
        }
        std::string n = num_.is_constant() ? num_.str() : "(" + num_.str() + ")";
        std::string d = den_.is_constant() ? den_.str() : "(" + den_.str() + ")";
        return n + "/" + d;
    }

private:
    void assign(const Poly& num, const Poly& den) {
        if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        if (num.is_zero()) {
            num_ = Poly();
            den_ = Poly(Rat(1));
            return;
        }
        Poly g = Poly::gcd(num, den);
        num_ = num / g;
        den_ = den / g;
        fix_leading();
    }
    void fix_leading() {
        if (num_.is_zero()) {
            den_ = Poly(Rat(1));
            return;
        }
        Rat lc = den_.leading();
        if (!lc.is_one()) {
            Rat inv = lc.inv();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }
    Poly num_, den_;
};

// f(x + k) on externally-held values; spec names this operation "shift".
inline RatFunc shift(const RatFunc& f, const Rat& k) { return f.shifted(k); }
inline Poly shift(const Poly& f, const Rat& k) { return f.shifted(k); }

enum class ScaleDirection { forward, inverse };

// forward: f(x/p); inverse: f(p*x). inverse(forward(f, p), p) = f.
inline RatFunc scale_substitute(const RatFunc& f, long p, ScaleDirection dir) {
    if (p < 1) throw std::domain_error("scale_substitute: p must be >= 1");
    Rat c = dir == ScaleDirection::forward ? Rat(1, p) : Rat(p);
    return f.dilated(c);
}

inline std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.str(); }

}  // namespace oresolve
