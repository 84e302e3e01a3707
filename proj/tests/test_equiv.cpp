#include "doctest.h"

#include "oresolve/equiv.hpp"
#include "oresolve/io.hpp"

using namespace oresolve;

static OrePoly OP(const std::string& s) { return parse_operator(s); }
static RatFunc RF(const std::string& s) { return parse_ratfunc(s); }

static Mat scalar(const std::string& s) {
    Mat m(1, 1);
    m.at(0, 0) = RF(s);
    return m;
}

TEST_CASE("rational_solutions_system: scalar examples") {
    auto s1 = rational_solutions_system(scalar("(x+1)/x"));
    REQUIRE(s1.basis.size() == 1);
    RatFunc v = s1.basis[0][0];
    CHECK(v.shifted(Rat(1)) / v == RF("(x+1)/x"));

    auto s2 = rational_solutions_system(scalar("x/(x+1)"));
    REQUIRE(s2.basis.size() == 1);
    RatFunc w = s2.basis[0][0];
    CHECK(w.shifted(Rat(1)) / w == RF("x/(x+1)"));
    CHECK(!w.is_polynomial());  // 1/x up to scale

    auto s3 = rational_solutions_system(Mat::identity(2));
    CHECK(s3.basis.size() == 2);

    CHECK_THROWS(rational_solutions_system(Mat(2, 2)));
}

TEST_CASE("rational_solutions_system: mixed system") {
    // diag((x+1)/x, x/(x+2)) plus coupling zero: solutions x and the rational one
    Mat a(2, 2);
    a.at(0, 0) = RF("(x+1)/x");
    a.at(1, 1) = RF("x*(x+1)/((x+2)*(x+3))");
    auto s = rational_solutions_system(a);
    // first coordinate: u = x; second: v(x+1)/v = x(x+1)/((x+2)(x+3)): v = 1/((x+1)(x+2)^2-ish)
    for (auto& v : s.basis) {
        for (size_t i = 0; i < 2; ++i) {
            RatFunc lhs = v[i].shifted(Rat(1));
            RatFunc rhs;
            for (size_t j = 0; j < 2; ++j)
                if (!a.at(i, j).is_zero() && !v[j].is_zero()) rhs += a.at(i, j) * v[j];
            CHECK(lhs == rhs);
        }
    }
    CHECK(s.basis.size() == 2);
}

TEST_CASE("gauge_hom: multiplication map example") {
    // G = x maps V(tau - 1) onto V(tau - (x+1)/x)
    HomBasis hom = gauge_hom(OP("t - (x+1)/x"), OP("t - 1"));
    REQUIRE(hom.basis.size() == 1);
    CHECK(hom.basis[0].order() == 0);
    RatFunc g = hom.basis[0].coeff(0);
    CHECK(g / g.shifted(Rat(0)) == RF("1"));
    CHECK(sim_test(RF("(x+1)/x") * g / g.shifted(Rat(0)), RF("(x+1)/x")).similar);
    // exact membership: L1 G in D L2
    CHECK(right_divide(OP("t - (x+1)/x") * hom.basis[0], OP("t - 1")).second.is_zero());
}

TEST_CASE("is_gauge_equivalent basics") {
    OrePoly l = OP("t^2 - (x+1)*t + 2*x");
    auto self = is_gauge_equivalent(l, l);
    REQUIRE(self.has_value());
    CHECK(gcrd(self->g, l).is_one());

    CHECK_FALSE(is_gauge_equivalent(OP("t - 1"), OP("t - 2")).has_value());
}

TEST_CASE("gauge equivalence: constructed instances, symmetry, numeric check") {
    Rng rng(101);
    for (int it = 0; it < 4; ++it) {
        OrePoly l2 = OP("t^2 - (x+" + std::to_string(rng.range(0, 3)) + ")*t - " +
                        std::to_string(rng.range(1, 4)));
        // gauge-build l1 = minimal operator of a random cyclic vector
        DModule m = companion(l2);
        std::vector<RatFunc> v{RatFunc(Poly(std::vector<Rat>{rng.rat(-2, 2), Rat(1)})),
                               RatFunc(rng.nonzero_rat(1, 3))};
        MinimalOperator mo = minimal_operator(v, m);
        if (!mo.cyclic) continue;
        OrePoly l1 = mo.op;
        auto g12 = is_gauge_equivalent(l1, l2);
        REQUIRE(g12.has_value());
        CHECK(gauge_numeric_check(*g12, 50));
        // symmetric direction
        auto g21 = is_gauge_equivalent(l2, l1);
        CHECK(g21.has_value());
    }
}

TEST_CASE("projective_hom: forward twist") {
    OrePoly l = OP("t^2 - (x+1)*t + 2*x");
    OrePoly lt = order1_symmetric_product(RF("2"), l);
    ProjectiveResult pr = projective_hom(lt, l);
    // det pinning: (tau - r) (*) lt with r = 1/2 recovers l
    REQUIRE(pr.status == ProjectiveStatus::found);
    CHECK(gauge_numeric_check(pr.map->gauge, 50));
    // r^2 det(lt) ~ det(l)
    RatFunc r = pr.map->r;
    CHECK(sim_test(r * r * det_op(lt), det_op(l)).similar);
}

TEST_CASE("projective_hom: requires extension") {
    // det ratio 2 * shift-quotient with no rational square root
    OrePoly l = OP("t^2 - t - 1");
    OrePoly lt = order1_symmetric_product(RF("2"), l);  // det scales by 4... use odd twist
    // build target with det ratio 2: twist one coefficient structure directly
    OrePoly l2 = OP("t^2 - t - 2");  // det = -2 vs det(l) = -1: ratio 2
    ProjectiveResult pr = projective_hom(l, l2);
    CHECK(pr.status == ProjectiveStatus::requires_extension);
    (void)lt;
}

TEST_CASE("projective_hom rejects unequal orders") {
    CHECK_THROWS(projective_hom(OP("t - 1"), OP("t^2 - 1")));
}
