#pragma once

// The noncommutative operator ring Q(x)[tau] with tau f(x) = f(x+1) tau.
// Operators act on sequences by L(u)(n) = sum_i a_i(n) u(n+i).

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "oresolve/linalg.hpp"

namespace oresolve {

class OrePoly {
public:
    OrePoly() = default;
    explicit OrePoly(std::vector<RatFunc> coeffs) : c_(std::move(coeffs)) { normalize(); }
    OrePoly(const RatFunc& c) {
        if (!c.is_zero()) c_.push_back(c);
    }
    OrePoly(long c) : OrePoly(RatFunc(c)) {}

    static OrePoly tau() { return OrePoly(std::vector<RatFunc>{RatFunc(0), RatFunc(1)}); }
    static OrePoly tau_power(size_t k) {
        std::vector<RatFunc> v(k + 1);
        v[k] = RatFunc(1);
        return OrePoly(std::move(v));
    }
    // c * tau^k
    static OrePoly term(const RatFunc& c, size_t k) {
        if (c.is_zero()) return {};
        std::vector<RatFunc> v(k + 1);
        v[k] = c;
        return OrePoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    int order() const { return (int)c_.size() - 1; }
    RatFunc coeff(size_t i) const { return i < c_.size() ? c_[i] : RatFunc(0); }
    const std::vector<RatFunc>& coeffs() const { return c_; }
    const RatFunc& leading() const {
        assert(!c_.empty());
        return c_.back();
    }
    RatFunc trailing() const { return coeff(0); }

    friend OrePoly operator+(const OrePoly& a, const OrePoly& b) {
        std::vector<RatFunc> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return OrePoly(std::move(r));
    }
    friend OrePoly operator-(const OrePoly& a, const OrePoly& b) {
        std::vector<RatFunc> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return OrePoly(std::move(r));
    }
    OrePoly operator-() const {
        std::vector<RatFunc> r = c_;
        for (auto& x : r) x = -x;
        return OrePoly(std::move(r));
    }

    // Ring product a o b under tau^i f = f(x+i) tau^i.
    friend OrePoly operator*(const OrePoly& a, const OrePoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<RatFunc> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                r[i + j] += a.c_[i] * b.c_[j].shifted(Rat((long)i));
            }
        }
        return OrePoly(std::move(r));
    }
    OrePoly scaled(const RatFunc& c) const {
        std::vector<RatFunc> r = c_;
        for (auto& x : r) x *= c;
        return OrePoly(std::move(r));
    }
    friend OrePoly operator*(const RatFunc& c, const OrePoly& a) { return a.scaled(c); }

    OrePoly& operator+=(const OrePoly& b) { *this = *this + b; return *this; }
    OrePoly& operator-=(const OrePoly& b) { *this = *this - b; return *this; }
    OrePoly& operator*=(const OrePoly& b) { *this = *this * b; return *this; }

    friend bool operator==(const OrePoly& a, const OrePoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const OrePoly& a, const OrePoly& b) { return !(a == b); }

    OrePoly monic() const {
        if (is_zero()) return {};
        return scaled(leading().inv());
    }

    // substitution x -> x + k in every coefficient
    OrePoly shifted(const Rat& k) const {
        std::vector<RatFunc> r = c_;
        for (auto& x : r) x = x.shifted(k);
        return OrePoly(std::move(r));
    }

    // tau-power content: L = core o tau^k with nonzero trailing coefficient
    std::pair<OrePoly, size_t> split_tau_content() const {
        if (is_zero()) return {OrePoly(), 0};
        size_t k = 0;
        while (k < c_.size() && c_[k].is_zero()) ++k;
        std::vector<RatFunc> r(c_.begin() + k, c_.end());
        return {OrePoly(std::move(r)), k};
    }
    bool is_normalized() const { return !is_zero() && !c_[0].is_zero(); }

    // Primitive integral form: denominators cleared, integer content 1,
    // leading coefficient's leading term positive.
    OrePoly primitive_integral() const {
        if (is_zero()) return {};
        Poly den_lcm(Rat(1));
        for (const auto& c : c_) den_lcm = Poly::lcm(den_lcm, c.den());
        std::vector<Poly> nums(c_.size());
        Int num_gcd(0), den_lcm_i(1);
        for (size_t i = 0; i < c_.size(); ++i) {
            nums[i] = c_[i].num() * (den_lcm / c_[i].den());
            if (nums[i].is_zero()) continue;
            Rat ct = nums[i].to_integer().first;
            num_gcd = Int::gcd(num_gcd, ct.num());
            den_lcm_i = Int::lcm(den_lcm_i, ct.den());
        }
        Rat scale(den_lcm_i, num_gcd);
        if (nums.back().leading().sgn() < 0) scale = -scale;
        std::vector<RatFunc> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = RatFunc(nums[i].scaled(scale));
        return OrePoly(std::move(r));
    }

    std::string str(const std::string& op = "t") const;

private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<RatFunc> c_;
};

// Right division: A = Q o B + R with ord(R) < ord(B).
inline std::pair<OrePoly, OrePoly> right_divide(const OrePoly& a, const OrePoly& b) {
    if (b.is_zero()) throw std::domain_error("right_divide: division by zero operator");
    OrePoly q, r = a;
    int db = b.order();
    while (!r.is_zero() && r.order() >= db) {
        int k = r.order() - db;
        RatFunc c = r.leading() / b.leading().shifted(Rat((long)k));
        OrePoly t = OrePoly::term(c, k);
        q += t;
        r -= t * b;
    }
    return {q, r};
}

// Monic greatest common right divisor.
inline OrePoly gcrd(const OrePoly& a, const OrePoly& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcrd: both operators zero");
    OrePoly f = a, g = b;
    if (f.order() < g.order()) std::swap(f, g);
    while (!g.is_zero()) {
        OrePoly r = right_divide(f, g).second;
        f = std::move(g);
        g = std::move(r);
    }
    return f.monic();
}

namespace detail_ore {
// coordinates of tau * (sum coords_i tau^i) reduced mod monic-normalizable L
inline std::vector<RatFunc> tau_multiply_mod(const OrePoly& l, const std::vector<RatFunc>& coords) {
    int n = l.order();
    std::vector<RatFunc> next(n);
    // shift and raise degree
    std::vector<RatFunc> raised(n + 1);
    for (int i = 0; i < n; ++i) raised[i + 1] = coords[i].shifted(Rat(1));
    // reduce tau^n = -(1/a_n) sum_{i<n} a_i tau^i
    RatFunc top = raised[n];
    for (int i = 0; i < n; ++i) {
        next[i] = raised[i];
        if (!top.is_zero() && !l.coeff(i).is_zero()) next[i] -= top * l.coeff(i) / l.leading();
    }
    return next;
}
}  // namespace detail_ore

// Monic lowest common left multiple, via the first dependency among the
// iterates of (1, 1) in the coordinate sum of both quotient spaces.
inline OrePoly lclm(const OrePoly& a, const OrePoly& b) {
    if (a.is_zero() || b.is_zero()) throw std::domain_error("lclm: zero operator");
    int na = a.order(), nb = b.order();
    if (na == 0 || nb == 0) return OrePoly(1);
    IncrementalSpan span(na + nb);
    std::vector<RatFunc> ca(na), cb(nb);
    ca[0] = RatFunc(1);
    cb[0] = RatFunc(1);
    std::vector<std::vector<RatFunc>> history;
    for (int k = 0;; ++k) {
        std::vector<RatFunc> v(na + nb);
        for (int i = 0; i < na; ++i) v[i] = ca[i];
        for (int i = 0; i < nb; ++i) v[na + i] = cb[i];
        auto dep = span.add(v);
        if (dep) {
            std::vector<RatFunc> coeffs(k + 1);
            for (int i = 0; i < k; ++i) coeffs[i] = -(*dep)[i];
            coeffs[k] = RatFunc(1);
            return OrePoly(std::move(coeffs));
        }
        ca = detail_ore::tau_multiply_mod(a, ca);
        cb = detail_ore::tau_multiply_mod(b, cb);
    }
}

// det(L) = (-1)^n a_0 / a_n (companion determinant). Requires a_0, a_n nonzero.
inline RatFunc det_op(const OrePoly& l) {
    if (l.is_zero() || l.trailing().is_zero())
        throw std::domain_error("det_op: operator must have nonzero trailing coefficient");
    RatFunc d = l.trailing() / l.leading();
    return l.order() % 2 == 0 ? d : -d;
}

// (tau - r) (*) L : the order-n operator whose solutions are h*u with
// h(x+1) = r(x) h(x) and L(u) = 0. Coefficients a_i / prod_{j<i} r(x+j).
inline OrePoly order1_symmetric_product(const RatFunc& r, const OrePoly& l) {
    if (r.is_zero()) throw std::domain_error("order1_symmetric_product: zero ratio");
    int n = l.order();
    std::vector<RatFunc> c(n + 1);
    RatFunc rho(1);
    for (int i = 0; i <= n; ++i) {
        c[i] = l.coeff(i) / rho;
        rho *= r.shifted(Rat((long)i));
    }
    return OrePoly(std::move(c)).monic();
}

// Exact sequences with pole-skipping semantics (values may be undefined at
// finitely many points).
class SequenceOracle {
public:
    using Fn = std::function<std::optional<Rat>(long)>;
    SequenceOracle() = default;
    explicit SequenceOracle(Fn fn) : fn_(std::make_shared<Fn>(std::move(fn))) {}

    std::optional<Rat> operator()(long n) const {
        if (!fn_) return std::nullopt;
        auto it = memo_->find(n);
        if (it != memo_->end()) return it->second;
        auto v = (*fn_)(n);
        memo_->emplace(n, v);
        return v;
    }

    // Extend initial values by the recurrence L(u) = 0; points where the
    // leading coefficient vanishes or a coefficient has a pole are undefined,
    // and so is everything that depends on them.
    static SequenceOracle from_recurrence(const OrePoly& l, std::vector<Rat> initial) {
        auto state = std::make_shared<std::vector<std::optional<Rat>>>();
        for (const Rat& v : initial) state->push_back(v);
        OrePoly op = l;
        int n = op.order();
        return SequenceOracle([state, op, n](long k) -> std::optional<Rat> {
            if (k < 0) return std::nullopt;
            while ((long)state->size() <= k) {
                long m = (long)state->size() - n;  // u(m+n) from u(m..m+n-1)
                if (m < 0) return std::nullopt;
                std::optional<Rat> next = Rat(0);
                auto lead = op.leading().eval(Rat(m));
                if (!lead || lead->is_zero()) {
                    next = std::nullopt;
                } else {
                    Rat acc(0);
                    for (int i = 0; i < n; ++i) {
                        auto ci = op.coeff(i).eval(Rat(m));
                        auto ui = (*state)[m + i];
                        if (!ci || !ui) {
                            next = std::nullopt;
                            break;
                        }
                        acc += *ci * *ui;
                    }
                    if (next) next = -acc / *lead;
                }
                state->push_back(next);
            }
            return (*state)[k];
        });
    }

private:
    std::shared_ptr<Fn> fn_;
    std::shared_ptr<std::map<long, std::optional<Rat>>> memo_ =
        std::make_shared<std::map<long, std::optional<Rat>>>();
};

// L(u)(n) = sum_i a_i(n) u(n+i); nullopt marks a skippable point (pole of a
// coefficient or undefined sequence value), not a failure.
inline std::optional<Rat> apply(const OrePoly& l, const SequenceOracle& u, long n) {
    Rat acc(0);
    for (int i = 0; i <= l.order(); ++i) {
        if (l.coeff(i).is_zero()) continue;
        auto c = l.coeff(i).eval(Rat(n));
        auto v = u(n + i);
        if (!c || !v) return std::nullopt;
        acc += *c * *v;
    }
    return acc;
}

// Check that L annihilates u on `count` valid points starting at `from`;
// skippable points do not count toward the total. Fails if the window of
// attempted points exceeds 8 * count without finding enough valid ones.
inline bool annihilates(const OrePoly& l, const SequenceOracle& u, int count, long from = 0) {
    int seen = 0;
    for (long n = from; n < from + 8 * count; ++n) {
        auto v = apply(l, u, n);
        if (!v) continue;
        if (!v->is_zero()) return false;
        if (++seen >= count) return true;
    }
    return seen >= count;
}

}  // namespace oresolve
