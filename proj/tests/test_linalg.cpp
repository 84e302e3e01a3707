#include "doctest.h"

#include "oresolve/io.hpp"
#include "oresolve/linalg.hpp"

using namespace oresolve;

static RatFunc RF(const std::string& s) { return parse_ratfunc(s); }

static Mat random_mat(Rng& rng, size_t n, int maxdeg = 1) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            int d = (int)rng.range(0, maxdeg);
            std::vector<Rat> c(d + 1);
            for (auto& x : c) x = rng.rat(-3, 3);
            m.at(i, j) = RatFunc(Poly(std::move(c)));
        }
    return m;
}

static Mat random_invertible(Rng& rng, size_t n, int maxdeg = 1) {
    for (;;) {
        Mat m = random_mat(rng, n, maxdeg);
        if (!det(m).is_zero()) return m;
    }
}

TEST_CASE("nullspace examples") {
    CHECK(nullspace(Mat::identity(3)).empty());
    Mat z(2, 2);
    CHECK(nullspace(z).size() == 2);

    // random rank-r matrix as a product of r rank-1 terms
    Rng rng(3);
    for (int it = 0; it < 10; ++it) {
        size_t n = 4;
        size_t r = (size_t)rng.range(1, 3);
        Mat m(n, n);
        for (size_t t = 0; t < r; ++t) {
            std::vector<RatFunc> u(n), v(n);
            for (auto& x : u) x = RatFunc(Poly(std::vector<Rat>{rng.rat(-3, 3), rng.rat(-2, 2)}));
            for (auto& x : v) x = RatFunc(Poly(std::vector<Rat>{rng.rat(-3, 3), rng.rat(-2, 2)}));
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) m.at(i, j) += u[i] * v[j];
        }
        size_t rk = rank(m);
        CHECK(rk <= r);
        CHECK(nullspace(m).size() == n - rk);
        // kernel vectors actually annihilate
        for (const auto& v : nullspace(m)) {
            auto mv = m.apply(v);
            for (const auto& e : mv) CHECK(e.is_zero());
        }
    }
}

TEST_CASE("solve then substitute reproduces rhs") {
    Rng rng(11);
    for (int it = 0; it < 10; ++it) {
        Mat a = random_invertible(rng, 3);
        std::vector<RatFunc> b(3);
        for (auto& x : b) x = RatFunc(Poly(std::vector<Rat>{rng.rat(-3, 3), rng.rat(-2, 2)}));
        auto x = solve(a, b);
        REQUIRE(x.has_value());
        auto ax = a.apply(*x);
        for (size_t i = 0; i < 3; ++i) CHECK(ax[i] == b[i]);
    }
}

TEST_CASE("kronecker examples and Zehfuss determinant") {
    CHECK(kronecker(Mat::identity(2), Mat::identity(2)) == Mat::identity(4));

    Mat d1(2, 2), d2(2, 2);
    d1.at(0, 0) = RF("2");
    d1.at(1, 1) = RF("3");
    d2.at(0, 0) = RF("5");
    d2.at(1, 1) = RF("7");
    Mat k = kronecker(d1, d2);
    CHECK(k.at(0, 0) == RF("10"));
    CHECK(k.at(1, 1) == RF("14"));
    CHECK(k.at(2, 2) == RF("15"));
    CHECK(k.at(3, 3) == RF("21"));

    Mat bad(2, 3);
    CHECK_THROWS(kronecker(bad, d2));

    Rng rng(13);
    for (int it = 0; it < 10; ++it) {
        Mat a = random_mat(rng, 2), b = random_mat(rng, 2);
        CHECK(det(kronecker(a, b)) == Rat(1) * det(a) * det(a) * det(b) * det(b));
    }
    // mixed sizes: n = 2, m = 3
    Mat a = random_mat(rng, 2), b = random_mat(rng, 3);
    RatFunc da = det(a), db = det(b);
    CHECK(det(kronecker(a, b)) == da * da * da * db * db);
}

TEST_CASE("sym_power_matrix examples and determinant identity") {
    CHECK(sym_power_matrix(Mat::identity(2), 2) == Mat::identity(3));

    Mat d(2, 2);
    d.at(0, 0) = RF("2");
    d.at(1, 1) = RF("3");
    Mat s = sym_power_matrix(d, 2);
    CHECK(s.at(0, 0) == RF("4"));
    CHECK(s.at(1, 1) == RF("6"));
    CHECK(s.at(2, 2) == RF("9"));

    Rng rng(17);
    for (int it = 0; it < 8; ++it) {
        Mat a = random_mat(rng, 2);
        RatFunc da = det(a);
        CHECK(det(sym_power_matrix(a, 2)) == da * da * da);  // m = C(3,2) = 3
    }
    // n = 3, d = 2: m = C(4,3) = 4
    Mat a3 = random_mat(rng, 3);
    RatFunc d3 = det(a3);
    CHECK(det(sym_power_matrix(a3, 2)) == d3 * d3 * d3 * d3);
}

TEST_CASE("ext_power_matrix examples and determinant identity") {
    CHECK(ext_power_matrix(Mat::identity(4), 2) == Mat::identity(6));

    Mat d(4, 4);
    const char* vals[4] = {"2", "3", "5", "7"};
    for (int i = 0; i < 4; ++i) d.at(i, i) = RF(vals[i]);
    Mat w = ext_power_matrix(d, 2);
    // lex pairs: 01,02,03,12,13,23
    CHECK(w.at(0, 0) == RF("6"));
    CHECK(w.at(1, 1) == RF("10"));
    CHECK(w.at(2, 2) == RF("14"));
    CHECK(w.at(3, 3) == RF("15"));
    CHECK(w.at(4, 4) == RF("21"));
    CHECK(w.at(5, 5) == RF("35"));

    CHECK_THROWS(ext_power_matrix(d, 5));

    Rng rng(19);
    for (int it = 0; it < 4; ++it) {
        Mat a = random_mat(rng, 4);
        RatFunc da = det(a);
        CHECK(det(ext_power_matrix(a, 2)) == da * da * da);  // k = C(3,1) = 3
    }
}

TEST_CASE("sym and ext power matrices are multiplicative") {
    Rng rng(23);
    for (int it = 0; it < 4; ++it) {
        Mat a = random_mat(rng, 2), b = random_mat(rng, 2);
        CHECK(sym_power_matrix(a * b, 2) == sym_power_matrix(a, 2) * sym_power_matrix(b, 2));
        Mat a3 = random_mat(rng, 3), b3 = random_mat(rng, 3);
        CHECK(sym_power_matrix(a3 * b3, 2) == sym_power_matrix(a3, 2) * sym_power_matrix(b3, 2));
        CHECK(ext_power_matrix(a3 * b3, 2) == ext_power_matrix(a3, 2) * ext_power_matrix(b3, 2));
    }
}

TEST_CASE("IncrementalSpan dependency certificates") {
    Rng rng(29);
    IncrementalSpan span(3);
    std::vector<std::vector<RatFunc>> gens;
    auto vec = [&](const char* a, const char* b, const char* c) {
        return std::vector<RatFunc>{RF(a), RF(b), RF(c)};
    };
    CHECK_FALSE(span.add(vec("1", "x", "0")).has_value());
    CHECK_FALSE(span.add(vec("0", "1", "x")).has_value());
    auto dep = span.add(vec("2", "2*x + 3", "3*x"));
    REQUIRE(dep.has_value());
    CHECK((*dep)[0] == RF("2"));
    CHECK((*dep)[1] == RF("3"));
    CHECK(span.contains(vec("1", "x", "0")));
    CHECK_FALSE(span.contains(vec("0", "0", "1")));
    auto co = span.coordinates(vec("0", "x", "-1"));
    CHECK_FALSE(co.has_value());
    co = span.coordinates(vec("1", "x + 1", "x"));
    REQUIRE(co.has_value());
    CHECK((*co)[0] == RF("1"));
    CHECK((*co)[1] == RF("1"));
}
