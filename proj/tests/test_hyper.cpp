#include "doctest.h"

#include "oresolve/hyper.hpp"
#include "oresolve/io.hpp"

using namespace oresolve;

static OrePoly OP(const std::string& s) { return parse_operator(s); }
static RatFunc RF(const std::string& s) { return parse_ratfunc(s); }

static Mat scalar(const std::string& s) {
    Mat m(1, 1);
    m.at(0, 0) = RF(s);
    return m;
}

TEST_CASE("polynomial_solutions: scalar examples") {
    // u(x+1) = (x+1)/x u(x): basis {x}
    auto s1 = polynomial_solutions(scalar("(x+1)/x"), RF("1"));
    REQUIRE(s1.basis.size() == 1);
    CHECK(s1.basis[0][0].monic() == parse_poly("x"));
    CHECK(s1.status == SolveStatus::complete);

    // constants
    auto s2 = polynomial_solutions(scalar("1"), RF("1"));
    REQUIRE(s2.basis.size() == 1);
    CHECK(s2.basis[0][0].degree() == 0);

    // no polynomial solutions: leading comparison 2 != 1
    auto s3 = polynomial_solutions(scalar("2"), RF("1"));
    CHECK(s3.basis.empty());

    CHECK_THROWS(polynomial_solutions(scalar("1"), RF("0")));
}

TEST_CASE("polynomial_solutions: 2x2 system") {
    // P(x+1) = A P(x) with A = [[1, 1], [0, (x+1)/x]]: P = (c, 0) and one with x
    Mat a(2, 2);
    a.at(0, 0) = RF("1");
    a.at(0, 1) = RF("1");
    a.at(1, 1) = RF("(x+1)/x");
    auto s = polynomial_solutions(a, RF("1"));
    CHECK(s.basis.size() >= 1);
    for (auto& v : s.basis) {
        // verify shift(P,1) = A P
        for (size_t i = 0; i < 2; ++i) {
            RatFunc lhs{v[i].shifted(Rat(1))};
            RatFunc rhs;
            for (size_t j = 0; j < 2; ++j) rhs += a.at(i, j) * RatFunc(v[j]);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("candidate_types examples") {
    // includes a candidate ~ 1 for the factor tau - 1
    auto c1 = candidate_types(OP("t^2 - (x+1)*t + x"), 1);
    bool has_one = false;
    for (auto& c : c1)
        if (sim_test(c.lambda, RF("1")).similar) has_one = true;
    CHECK(has_one);

    // L = tau - r contains a candidate ~ r
    auto c2 = candidate_types(OP("t - (x+2)/x").primitive_integral(), 1);
    bool has_r = false;
    for (auto& c : c2)
        if (sim_test(c.lambda, RF("(x+2)/x")).similar) has_r = true;
    CHECK(has_r);
}

TEST_CASE("right_factors order 1 examples") {
    auto r1 = right_factors(OP("t^2 - (x+1)*t + x"), 1);
    REQUIRE(r1.factors.size() == 1);
    CHECK(r1.factors[0] == OP("t - 1"));
    CHECK(r1.stats.factors_found == 1);

    auto r2 = right_factors(OP("t^2 - x"), 1);
    CHECK(r2.factors.empty());

    // both hypergeometric solutions of a split operator
    auto r3 = right_factors(OP("(t - 1)*(t - 2)"), 1);
    CHECK(r3.factors.size() == 2);
}

TEST_CASE("right_factors soundness: random products, d in {1,2}") {
    Rng rng(91);
    auto random_op = [&](int order, int maxdeg) {
        std::vector<RatFunc> c(order + 1);
        for (auto& x : c) {
            std::vector<Rat> p((size_t)rng.range(0, maxdeg) + 1);
            for (auto& y : p) y = rng.rat(-3, 3);
            x = RatFunc(Poly(std::move(p)));
        }
        if (c.back().is_zero()) c.back() = RatFunc(1);
        if (c.front().is_zero()) c.front() = RatFunc(1);
        return OrePoly(std::move(c));
    };
    int found = 0, trials = 0;
    for (int it = 0; it < 12; ++it) {
        OrePoly b = random_op((int)rng.range(1, 2), 1);
        OrePoly qa = random_op((int)rng.range(1, 2), 1);
        OrePoly l = (qa * b);
        if (l.trailing().is_zero()) continue;
        ++trials;
        auto rf = right_factors(l, b.order());
        for (const auto& f : rf.factors)
            CHECK(right_divide(l, f).second.is_zero());
        // the constructed factor is hypergeometric-compatible for d = 1;
        // for d = 2 the wedge route must recover some factor
        bool got = false;
        for (const auto& f : rf.factors)
            if (f == b.monic()) got = true;
        if (got) ++found;
    }
    CHECK(trials > 0);
    CHECK(found >= trials / 2);  // families may return a different representative
}

TEST_CASE("right_factors d=2 on a built order-3 product") {
    // B = (t - 1)(t - x): order 2 right factor of L = (t - 2) B
    OrePoly b = OP("(t - 1)*(t - x)");
    OrePoly l = OP("(t - 2)") * b;
    auto rf = right_factors(l, 2);
    bool got = false;
    for (const auto& f : rf.factors) {
        CHECK(right_divide(l, f).second.is_zero());
        if (f == b.monic()) got = true;
    }
    CHECK(got);
}

TEST_CASE("filter soundness: factor sets identical with and without filter") {
    // artificial filter keeping everything whose lambda is ~ some det of an
    // actual factor must not change the factor set; here use the section
    // determinant filter on a constructed instance in the solve tests instead,
    // and a trivial always-true filter here.
    OrePoly l = OP("(t - x)*(t - 1)*(t + 2)");
    auto plain = right_factors(l, 1);
    HyperOptions opts;
    opts.filter = [](const CandidateType&) { return true; };
    auto filtered = right_factors(l, 1, opts);
    CHECK(plain.factors.size() == filtered.factors.size());
    CHECK(plain.stats.after_filter == filtered.stats.after_filter);
}

TEST_CASE("trace and stats counters") {
    OrePoly l = OP("t^2 - (x+1)*t + x");
    HyperOptions opts;
    int lines = 0;
    opts.trace = [&](const CandidateType&, const std::string&) { ++lines; };
    auto rf = right_factors(l, 1, opts);
    CHECK(lines > 0);
    CHECK(rf.stats.total >= rf.stats.after_filter);
    CHECK(rf.stats.after_filter >= rf.stats.tested - 0);
    CHECK(rf.stats.factors_found == 1);
}
