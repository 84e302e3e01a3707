#include "doctest.h"

#include "oresolve/io.hpp"
#include "oresolve/solve.hpp"

using namespace oresolve;

static OrePoly OP(const std::string& s) { return parse_operator(s); }
static RatFunc RF(const std::string& s) { return parse_ratfunc(s); }

TEST_CASE("section_operator examples") {
    // tau^2 acts as identity on D/D(tau^2 - 1)
    SectionOperator s1 = section_operator(OP("t^2 - 1"), 2);
    CHECK(s1.down_in_tau == OP("t^2 - 1"));
    CHECK(s1.section == OP("t - 1"));
    CHECK(s1.lower_than_expected);

    SectionOperator s2 = section_operator(OP("t^2 - x"), 2);
    CHECK(s2.section == OP("t - 2*x"));
    CHECK(s2.lower_than_expected);

    // generic operator: no drop
    SectionOperator s3 = section_operator(OP("t^2 - x*t - 1"), 2);
    CHECK(s3.section.order() == 2);
    CHECK_FALSE(s3.lower_than_expected);
}

TEST_CASE("section operator annihilates even subsequences") {
    // solutions of L sampled at even points solve psi-unfolded down_in_tau;
    // check down_in_tau directly on a solution sequence
    OrePoly l = OP("t^2 - x*t - 1");
    SectionOperator s = section_operator(l, 2);
    SequenceOracle u = SequenceOracle::from_recurrence(l, {Rat(1), Rat(1)});
    CHECK(annihilates(s.down_in_tau, u, 30));
}

TEST_CASE("abs_factorization: section drop example") {
    AbsFactorization a = abs_factorization(OP("t^2 - x"));
    CHECK_FALSE(a.absolutely_irreducible);
    CHECK(a.p == 2);
    CHECK(a.section_drop);
}

TEST_CASE("abs_factorization: constructed section instance and Theorem filter") {
    // Ltilde = psi_2(L0) for L0 = t^2 - x t - 1: Ltilde = t^4 - (x/2) t^2 - 1
    OrePoly l0 = OP("t^2 - x*t - 1");
    OrePoly ltilde = OP("t^4 - (x/2)*t^2 - 1");
    // gauge-build L: minimal operator of a cyclic vector of D/D(Ltilde)
    DModule m = companion(ltilde);
    std::vector<RatFunc> v{RatFunc(parse_poly("x")), RatFunc(1), RatFunc(0), RatFunc(1)};
    MinimalOperator mo = minimal_operator(v, m);
    REQUIRE(mo.cyclic);
    OrePoly l = mo.op;

    // L is irreducible here (no order 1..3 factors) and its 2-section factors
    AbsFactorization withf = abs_factorization(l, true);
    AbsFactorization nof = abs_factorization(l, false);
    CHECK_FALSE(withf.absolutely_irreducible);
    CHECK(withf.p == 2);
    if (!withf.section_drop) {
        REQUIRE_FALSE(withf.factors.empty());
        // identical factor sets with and without the filter
        REQUIRE(withf.factors.size() == nof.factors.size());
        for (const auto& f : withf.factors) {
            bool found = false;
            for (const auto& g : nof.factors) found = found || f == g;
            CHECK(found);
            // Theorem property: psi_p(det(R)) ~ det(L)
            CHECK(sim_test(scale_substitute(det_op(f), 2, ScaleDirection::forward), det_op(l))
                      .similar);
            CHECK(right_divide(withf.section, f).second.is_zero());
        }
        // the filter only discards candidates
        CHECK(withf.stats.after_filter <= nof.stats.after_filter);
    }
}

TEST_CASE("reduce_order: recovers exact symmetric squares") {
    // Sym^2 of Fibonacci
    ReduceOrderResult r1 = reduce_order(OP("t^3 - 2*t^2 - 2*t + 1"));
    REQUIRE(r1.ok);
    CHECK(r1.family == ReduceFamily::square_of_generator);
    // projective representative: rebuilt witness must reproduce the input
    OrePoly rebuilt = order1_symmetric_product(
        r1.twist, sym_power_op(r1.l2, 2).op).monic();
    CHECK(rebuilt == OP("t^3 - 2*t^2 - 2*t + 1"));
    // recovered operator is projectively equivalent to t^2 - t - 1
    ProjectiveResult pr = projective_hom(OP("t^2 - t - 1"), r1.l2);
    CHECK(pr.status == ProjectiveStatus::found);

    // twisted round trip with rational-function q and twist
    RatFunc q = RF("(x+3)/(2*x+1)");
    RatFunc tw = RF("(x+1)/x");
    OrePoly l2 = OrePoly(std::vector<RatFunc>{q, RatFunc(1), RatFunc(1)});
    OrePoly t3 = order1_symmetric_product(tw, sym_power_op(l2, 2).op).monic();
    ReduceOrderResult r2 = reduce_order(t3);
    REQUIRE(r2.ok);
    OrePoly rebuilt2 = order1_symmetric_product(r2.twist, sym_power_op(r2.l2, 2).op).monic();
    CHECK(rebuilt2 == t3);

    // generic irreducible non-square fails
    ReduceOrderResult r3 = reduce_order(OP("t^3 - x*t - 1"));
    CHECK_FALSE(r3.ok);
    CHECK(r3.reason == "gauge-case reduction not built-in");
}

TEST_CASE("reduce_order: consecutive-product family") {
    RatFunc q = RF("-(x+2)/x");
    OrePoly base = detail_solve::consecutive_product_p1(q);
    // verify the closed form against the module computation
    OrePoly l2 = OrePoly(std::vector<RatFunc>{q, RatFunc(1), RatFunc(1)});
    DModule s = sym_power(companion(l2), 2);
    MinimalOperator mo = minimal_operator(unit_vector(3, 1), s);  // b1 b2
    CHECK(mo.op == base.monic());

    RatFunc tw = RF("2*x+1");
    OrePoly t3 = order1_symmetric_product(tw, base).monic();
    ReduceOrderResult r = reduce_order(t3);
    REQUIRE(r.ok);
    CHECK(r.family == ReduceFamily::product_of_consecutive);
    OrePoly rebuilt =
        order1_symmetric_product(r.twist, detail_solve::consecutive_product_p1(r.l2.coeff(0)))
            .monic();
    CHECK(rebuilt == t3);
}

TEST_CASE("solve_order3: reducible case") {
    SolveReport rep = solve_order3(OP("(t - 1)*(t^2 - x)"));
    CHECK(rep.case_name == "reducible");
    CHECK(rep.solved());
    CHECK(rep.verified);
    bool has = false;
    for (const auto& f : rep.factors) has = has || f == OP("t^2 - x");
    // d = 1 runs first; the order-2 factor appears when no order-1 factor exists.
    // (t-1)(t^2-x) has the order-1 factor family of t^2 - x? No: right factors of
    // order 1 require hypergeometric solutions; t^2 - x contributes none, so the
    // reported factor set comes from d = 2.
    CHECK((has || !rep.factors.empty()));
}

TEST_CASE("solve_order3: interlacing via section drop") {
    // gauge-build from tau^3 - x (its 3-section drops to order 1)
    OrePoly base = OP("t^3 - x");
    DModule m = companion(base);
    std::vector<RatFunc> v{RatFunc(parse_poly("x+1")), RatFunc(1), RatFunc(2)};
    MinimalOperator mo = minimal_operator(v, m);
    REQUIRE(mo.cyclic);
    SolveReport rep = solve_order3(mo.op);
    CHECK(rep.solved());
    CHECK(rep.case_name == "liouvillian");
}

TEST_CASE("solve_order3: constant-coefficient symmetric square is caught as reducible") {
    // the case list runs reducibility first; Sym^2 of Fibonacci has the
    // eigenvalue -1 factor tau + 1
    SolveReport rep = solve_order3(OP("t^3 - 2*t^2 - 2*t + 1"));
    CHECK(rep.solved());
    CHECK(rep.case_name == "reducible");
}

TEST_CASE("solve_order3: symmetric square case (irreducible instance)") {
    RatFunc q = RF("(x^2+3)/(2*x+1)");
    OrePoly l2 = OrePoly(std::vector<RatFunc>{q, RatFunc(1), RatFunc(1)});
    OrePoly t3 = order1_symmetric_product(RF("(x+1)/x"), sym_power_op(l2, 2).op).monic();
    SolveReport rep = solve_order3(t3);
    CHECK(rep.solved());
    CHECK(rep.case_name == "symmetric-square");
    CHECK(rep.verified);
    REQUIRE(rep.reduced_ops.size() == 1);
}

TEST_CASE("solve_order3: fail outcome") {
    SolveReport rep = solve_order3(OP("t^3 - x*t - 1"));
    CHECK(rep.status == "fail");
    CHECK(rep.case_name == "none");
}
