#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "treecat/errors.hpp"
#include "treecat/matrix.hpp"
#include "treecat/numeric.hpp"
#include "treecat/poly.hpp"

using namespace treecat;
using namespace testutil;

namespace {

IntMatrix rand_matrix(std::mt19937& rng, int r, int c, int lo = -9, int hi = 9) {
    IntMatrix m(r, c);
    std::uniform_int_distribution<int> d(lo, hi);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = d(rng);
    return m;
}

SparseIntMatrix sparse_of(const IntMatrix& m) {
    SparseIntMatrix s(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0) s.add(i, j, m.at(i, j));
    s.finalize();
    return s;
}

}  // namespace

TEST_CASE("numeric helpers") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(4, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(-1, 0) == 0);
    CHECK(factorial(6) == 720);
    CHECK(ipow(Int(2), 10) == 1024);
    CHECK(monomial_count(3, 2) == 6);
    CHECK(monomial_count(0, 0) == 1);
    CHECK(monomial_count(0, 2) == 0);
}

TEST_CASE("smith normal form examples") {
    IntMatrix m(2, 2);
    m.at(0, 0) = 2;
    m.at(0, 1) = 4;
    m.at(1, 0) = 6;
    m.at(1, 1) = 8;
    SmithResult s = smith_normal_form(m);
    CHECK(s.rank == 2);
    REQUIRE(s.diagonal.size() == 2);
    CHECK(s.diagonal[0] == 2);
    CHECK(s.diagonal[1] == 4);

    IntMatrix z(3, 2);
    SmithResult sz = smith_normal_form(z);
    CHECK(sz.rank == 0);
    CHECK(sz.diagonal.empty());
}

TEST_CASE("smith transforms are unimodular and diagonalize") {
    std::mt19937 rng(123);
    for (int rep = 0; rep < 60; ++rep) {
        int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
        IntMatrix m = rand_matrix(rng, r, c);
        SmithResult s = smith_normal_form(m, true);
        REQUIRE(s.with_transforms);
        Int du = int_det(s.u), dv = int_det(s.v);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        IntMatrix prod = s.u.mul(m).mul(s.v);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                Int want = (i == j && i < static_cast<int>(s.diagonal.size()))
                               ? s.diagonal[i]
                               : Int(0);
                CHECK(prod.at(i, j) == want);
            }
        for (size_t k = 0; k + 1 < s.diagonal.size(); ++k) {
            CHECK(s.diagonal[k] > 0);
            CHECK(s.diagonal[k + 1] % s.diagonal[k] == 0);
        }
        CHECK(s.rank == rat_rank(RatMatrix::from_int(m)));
    }
}

TEST_CASE("homology from boundaries") {
    // circle as one vertex and one loop edge: d1 = 0 (1x1), d0 = 0
    SparseIntMatrix d_out(0, 1), d_in(1, 0);
    HomologyGroup h = homology_from_boundaries(d_out, d_in);
    CHECK(h.free_rank == 1);
    CHECK(h.torsion.empty());

    // Z/2: C_k = Z, incoming boundary multiplies by 2
    SparseIntMatrix in2(1, 1);
    in2.add(0, 0, 2);
    in2.finalize();
    HomologyGroup h2 = homology_from_boundaries(SparseIntMatrix(0, 1), in2);
    CHECK(h2.free_rank == 0);
    REQUIRE(h2.torsion.size() == 1);
    CHECK(h2.torsion[0] == 2);

    // kernel smaller than ambient: d_out = (1 1), d_in = 0
    SparseIntMatrix out11(1, 2);
    out11.add(0, 0, 1);
    out11.add(0, 1, 1);
    out11.finalize();
    HomologyGroup h3 = homology_from_boundaries(out11, SparseIntMatrix(2, 0));
    CHECK(h3.free_rank == 1);
    CHECK(h3.torsion.empty());
}

TEST_CASE("rational kernel, solve and pivots") {
    std::mt19937 rng(321);
    for (int rep = 0; rep < 40; ++rep) {
        int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 5);
        IntMatrix m = rand_matrix(rng, r, c, -4, 4);
        RatMatrix q = RatMatrix::from_int(m);
        RatMatrix k = rat_kernel(q);
        CHECK(k.cols == c - rat_rank(q));
        if (k.cols > 0) {
            RatMatrix prod = q.mul(k);
            for (const Rat& x : prod.a) CHECK(x == 0);
        }
        std::vector<int> piv = rat_independent_columns(q);
        CHECK(static_cast<int>(piv.size()) == rat_rank(q));
        RatMatrix sub(r, static_cast<int>(piv.size()));
        for (int i = 0; i < r; ++i)
            for (size_t j = 0; j < piv.size(); ++j) sub.at(i, static_cast<int>(j)) = q.at(i, piv[j]);
        CHECK(rat_rank(sub) == static_cast<int>(piv.size()));

        // solvable system: rhs = m * x for random x
        IntMatrix x = rand_matrix(rng, c, 2, -3, 3);
        RatMatrix rhs = q.mul(RatMatrix::from_int(x));
        RatMatrix sol;
        REQUIRE(rat_solve(q, rhs, sol));
        RatMatrix check = q.mul(sol);
        CHECK(check == rhs);
    }
    // inconsistent system
    RatMatrix zero(2, 1);
    RatMatrix rhs(2, 1);
    rhs.at(0, 0) = 1;
    RatMatrix sol;
    CHECK_FALSE(rat_solve(zero, rhs, sol));
}

TEST_CASE("integer polynomial arithmetic") {
    IntPolynomial p = IntPolynomial::monomial(1, 2) - IntPolynomial::monomial(3, 1) +
                      IntPolynomial(Int(2));  // t^2 - 3t + 2
    CHECK(p.degree() == 2);
    CHECK(p.eval(1) == 0);
    CHECK(p.eval(2) == 0);
    CHECK(p.eval(-1) == 6);
    CHECK(p.coefficient(1) == -3);
    CHECK(p.coefficient(7) == 0);
    IntPolynomial q = p * p;
    CHECK(q.degree() == 4);
    CHECK(q.eval(3) == p.eval(3) * p.eval(3));
    CHECK((p - p).is_zero());
    IntPolynomial r = p.reversed(2);  // 2t^2 - 3t + 1
    CHECK(r.coefficient(0) == 1);
    CHECK(r.coefficient(2) == 2);
    CHECK(p.shifted(2).coefficient(4) == 1);
    CHECK(p.to_string() == "2 - 3*t + t^2");
}

TEST_CASE("series coefficients") {
    IntPolynomial one(Int(1));
    IntPolynomial den;  // 1 - t
    den = one - IntPolynomial::monomial(1, 1);
    for (int n = 0; n < 6; ++n) CHECK(series_coefficient(one, den, n) == 1);
    // 1/(1-t)^2 -> n+1
    IntPolynomial den2 = den * den;
    for (int n = 0; n < 6; ++n) CHECK(series_coefficient(one, den2, n) == n + 1);
    // numerator shifts
    CHECK(series_coefficient(IntPolynomial::monomial(1, 3), den, 5) == 1);
    CHECK(series_coefficient(IntPolynomial::monomial(1, 3), den, 2) == 0);
    IntPolynomial bad;  // zero constant term
    bad = IntPolynomial::monomial(1, 1);
    CHECK_THROWS_AS(series_coefficient(one, bad, 1), ValidationError);
}

TEST_CASE("grid samples indexing") {
    GridSamples s;
    s.lo = {0, 1};
    s.hi = {2, 3};
    s.values.assign(9, Int(0));
    CHECK(s.total_points() == 9);
    CHECK(s.index({0, 1}) == 0);
    CHECK(s.index({0, 2}) == 1);  // last axis fastest
    CHECK(s.index({1, 1}) == 3);
    CHECK_THROWS_AS(s.index({3, 1}), ValidationError);
    s.validate();
    s.values.pop_back();
    CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("polynomial fitting recovers exact polynomials") {
    std::mt19937 rng(555);
    for (int rep = 0; rep < 20; ++rep) {
        int arity = 1 + static_cast<int>(rng() % 2);
        int deg = static_cast<int>(rng() % 3);
        MultiPoly truth;
        truth.nvars = arity;
        std::uniform_int_distribution<int> coef(-5, 5);
        for (int d = 0; d <= deg; ++d) {
            std::vector<int> exps(arity, 0);
            exps[0] = d;
            if (arity == 2) {
                exps[0] = static_cast<int>(rng() % (d + 1));
                exps[1] = d - exps[0];
            }
            truth.add_term(exps, coef(rng));
        }
        GridSamples s;
        s.lo.assign(arity, 0);
        s.hi.assign(arity, deg + 3);
        size_t total = 1;
        for (int a = 0; a < arity; ++a) total *= static_cast<size_t>(deg + 4);
        s.values.resize(total);
        for (size_t flat = 0; flat < total; ++flat) {
            size_t rem = flat;
            std::vector<Int> pt(arity);
            for (int a = arity; a-- > 0;) {
                pt[a] = Int(rem % static_cast<size_t>(deg + 4));
                rem /= static_cast<size_t>(deg + 4);
            }
            Rat v = truth.eval(pt);
            REQUIRE(denominator(v) == 1);
            s.values[flat] = numerator(v);
        }
        FitResult fit = fit_polynomial(s, deg, 2);
        CHECK(fit.stable);
        CHECK(fit.poly == truth);
        CHECK(fit.total_degree == truth.total_degree());
    }
}

TEST_CASE("polynomial fitting detects non-polynomial data") {
    GridSamples s;
    s.lo = {0};
    s.hi = {6};
    // 2^m is not a polynomial of degree 2
    for (int m = 0; m <= 6; ++m) s.values.push_back(ipow(Int(2), m));
    FitResult fit = fit_polynomial(s, 2, 2);
    CHECK_FALSE(fit.stable);
    // window too small for the requested degree
    GridSamples tiny;
    tiny.lo = {0};
    tiny.hi = {3};
    tiny.values.assign(4, Int(1));
    CHECK_THROWS_AS(fit_polynomial(tiny, 2, 2), ValidationError);
}

TEST_CASE("fit ignores low corner garbage but checks the margin window") {
    // degree-1 truth except at m=0; window 0..5, margin window = top 4 points
    GridSamples s;
    s.lo = {0};
    s.hi = {5};
    s.values = {Int(99), Int(3), Int(5), Int(7), Int(9), Int(11)};
    FitResult fit = fit_polynomial(s, 1, 2);
    CHECK(fit.stable);
    CHECK(fit.total_degree == 1);
    // shrink the window so the garbage sits inside the stability window
    GridSamples s2;
    s2.lo = {1};
    s2.hi = {4};
    s2.values = {Int(99), Int(5), Int(7), Int(9)};
    FitResult fit2 = fit_polynomial(s2, 1, 2);
    CHECK_FALSE(fit2.stable);
}
