#include <doctest.h>

#include "ectl/ensemble.hpp"
#include "ectl/errors.hpp"

using namespace ectl;

namespace {

// Example-style diagonal system builder: lambda polys on the diagonal.
EnsembleSystem make_sys(std::vector<Poly> lambdas, std::vector<std::vector<Poly>> brows,
                        const Rational& lo, const Rational& hi) {
    EnsembleSystem s;
    s.n = static_cast<int>(lambdas.size());
    s.m = static_cast<int>(brows.at(0).size());
    s.beta_lo = lo;
    s.beta_hi = hi;
    s.A = PolyMatrix(s.n, s.n);
    for (int i = 0; i < s.n; ++i) s.A.at(i, i) = lambdas[i];
    s.B = PolyMatrix(s.n, s.m);
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.m; ++j) s.B.at(i, j) = brows[i][j];
    return validate(s);
}

const Poly beta{0, 1};
const Poly beta_sq{0, 0, 1};

}  // namespace

TEST_CASE("validate") {
    const auto ex2 = make_sys({beta, Poly{0, 2}}, {{Poly{1}}, {Poly{1}}}, 1, 2);
    REQUIRE(ex2.eigenfunctions.size() == 2);
    CHECK(ex2.eigenfunctions[0] == beta);
    CHECK(ex2.eigenfunctions[1] == Poly{0, 2});

    EnsembleSystem bad;
    bad.n = 2;
    bad.m = 1;
    bad.beta_lo = 0;
    bad.beta_hi = 1;
    bad.A = PolyMatrix(2, 2);
    bad.A.at(1, 0) = Poly{1};  // below-diagonal entry
    bad.B = PolyMatrix(2, 1);
    CHECK_THROWS_AS(validate(bad), NonTriangular);

    EnsembleSystem empty = bad;
    empty.A = PolyMatrix(2, 2);
    empty.beta_hi = 0;
    CHECK_THROWS_AS(validate(empty), EmptyInterval);

    EnsembleSystem shape = bad;
    shape.A = PolyMatrix(1, 2);
    CHECK_THROWS_AS(validate(shape), MalformedShape);
}

TEST_CASE("compute_branches") {
    const auto two = compute_branches(beta_sq, -1, 1);
    REQUIRE(two.size() == 2);
    CHECK(two[0].direction == Direction::Decreasing);
    CHECK(two[1].direction == Direction::Increasing);
    CHECK(two[0].lo.exact() == -1);
    CHECK(two[0].hi.exact() == 0);
    CHECK(two[1].hi.exact() == 1);

    const auto one = compute_branches(Poly{0, 2}, 1, 2);
    REQUIRE(one.size() == 1);
    CHECK(one[0].direction == Direction::Increasing);

    // beta^3 - beta splits at +-1/sqrt(3)
    const auto three = compute_branches(Poly{0, -1, 0, 1}, -1, 1);
    REQUIRE(three.size() == 3);
    CHECK(three[0].direction == Direction::Increasing);
    CHECK(three[1].direction == Direction::Decreasing);
    CHECK(three[2].direction == Direction::Increasing);
    CHECK(!three[0].hi.is_exact());  // critical point is irrational

    // beta^3: the inflection splits branches but both increase
    const auto cubic = compute_branches(Poly{0, 0, 0, 1}, -1, 1);
    REQUIRE(cubic.size() == 2);
    CHECK(cubic[0].direction == Direction::Increasing);
    CHECK(cubic[1].direction == Direction::Increasing);

    CHECK_THROWS_AS(compute_branches(Poly{7}, 0, 1), ConstantEigenfunction);
}

TEST_CASE("spectral_range and shared_spectrum") {
    const auto r1 = spectral_range(beta, 1, 2);
    CHECK(r1.lo.exact() == 1);
    CHECK(r1.hi.exact() == 2);
    const auto r2 = spectral_range(Poly{0, 2}, 1, 2);
    CHECK(r2.lo.exact() == 2);
    CHECK(r2.hi.exact() == 4);
    const auto r3 = spectral_range(beta_sq, -1, 1);
    CHECK(r3.lo.exact() == 0);
    CHECK(r3.hi.exact() == 1);

    const auto point = shared_spectrum(beta, Poly{0, 2}, 1, 2);
    REQUIRE(point.has_value());
    CHECK(point->lo.exact() == 2);
    CHECK(point->hi.exact() == 2);

    CHECK(!shared_spectrum(beta, Poly{10, 1}, 1, 2).has_value());

    const auto full = shared_spectrum(beta, Poly{3, -1}, 1, 2);
    REQUIRE(full.has_value());
    CHECK(full->lo.exact() == 1);
    CHECK(full->hi.exact() == 2);
}

TEST_CASE("preimages") {
    const auto quarter = preimages(beta_sq, RealValue(Rational(1, 4)), -1, 1);
    REQUIRE(quarter.points.size() == 2);
    CHECK(quarter.points[0].exact() == Rational(-1, 2));
    CHECK(quarter.points[1].exact() == Rational(1, 2));
    CHECK(!quarter.junction[0]);
    CHECK(!quarter.junction[1]);

    const auto lin = preimages(Poly{0, 2}, RealValue(Rational(2)), 1, 2);
    REQUIRE(lin.points.size() == 1);
    CHECK(lin.points[0].exact() == 1);

    // the double root at the branch junction counts once and is flagged
    const auto zero = preimages(beta_sq, RealValue(Rational(0)), -1, 1);
    REQUIRE(zero.points.size() == 1);
    CHECK(zero.points[0].exact() == 0);
    CHECK(zero.junction[0]);

    CHECK_THROWS_AS(preimages(beta_sq, RealValue(Rational(2)), -1, 1), OutOfRange);

    // irrational preimages come back as disjoint brackets
    const auto irr = preimages(beta_sq, RealValue(Rational(1, 2)), -1, 1);
    REQUIRE(irr.points.size() == 2);
    CHECK(!irr.points[0].is_exact());
    CHECK(compare(irr.points[0], irr.points[1]) < 0);
}

TEST_CASE("spectral_point and eccm") {
    const auto ex3 = make_sys({beta_sq}, {{Poly{1}, beta}}, -1, 1);

    const auto pt = spectral_point(ex3, {RealValue(Rational(1, 4))});
    CHECK(pt.kappas == std::vector<int>{2});
    CHECK(pt.N == 2);
    CHECK(pt.all_rational());
    CHECK(!pt.at_junction());

    const auto d = eccm(ex3, 0, RealValue(Rational(1, 4)), Rational(1, 1024));
    REQUIRE(d.D.size() == 2);
    CHECK(d.D[0][0].exact() == 1);
    CHECK(d.D[0][1].exact() == Rational(-1, 2));
    CHECK(d.D[1][0].exact() == 1);
    CHECK(d.D[1][1].exact() == Rational(1, 2));

    const auto at0 = spectral_point(ex3, {RealValue(Rational(0))});
    CHECK(at0.kappas == std::vector<int>{1});
    CHECK(at0.at_junction());
    const auto d0 = eccm(ex3, 0, RealValue(Rational(0)), Rational(1, 1024));
    REQUIRE(d0.D.size() == 1);
    CHECK(d0.D[0][0].exact() == 1);
    CHECK(d0.D[0][1].exact() == 0);
}

TEST_CASE("reparameterized_system") {
    const auto ex2 = make_sys({beta, Poly{0, 2}}, {{Poly{1}}, {Poly{1}}}, 1, 2);
    const auto pt = spectral_point(ex2, {RealValue(Rational(2)), RealValue(Rational(2))});
    const auto rs = reparameterized_system(ex2, pt, Rational(1, 1024));
    CHECK(rs.N == 2);
    CHECK(rs.m == 1);
    CHECK(rs.adiag[0].exact() == 2);
    CHECK(rs.adiag[1].exact() == 2);
    CHECK(rs.D[0][0].exact() == 1);
    CHECK(rs.D[1][0].exact() == 1);

    const auto ex4 = make_sys({beta, Poly{0, 2}},
                              {{Poly{1}, Poly()}, {Poly{1}, Poly{1}}}, 1, 2);
    const auto pt13 = spectral_point(ex4, {RealValue(Rational(1)), RealValue(Rational(3))});
    const auto rs13 = reparameterized_system(ex4, pt13, Rational(1, 1024));
    CHECK(rs13.N == 2);
    CHECK(rs13.adiag[0].exact() == 1);
    CHECK(rs13.adiag[1].exact() == 3);
    CHECK(rs13.D[0][0].exact() == 1);
    CHECK(rs13.D[0][1].exact() == 0);
    CHECK(rs13.D[1][0].exact() == 1);
    CHECK(rs13.D[1][1].exact() == 1);
}

TEST_CASE("certify_full_row_rank") {
    IntervalMatrix ok(2, 2);
    ok.at(0, 0) = RatInterval(Rational(99, 100), Rational(101, 100));
    ok.at(0, 1) = RatInterval(Rational(-1, 100), Rational(1, 100));
    ok.at(1, 0) = RatInterval(Rational(99, 100), Rational(101, 100));
    ok.at(1, 1) = RatInterval(Rational(49, 100), Rational(51, 100));
    CHECK(certify_full_row_rank(ok));

    // too coarse: the second row cannot be distinguished from the first
    IntervalMatrix coarse(2, 2);
    coarse.at(0, 0) = RatInterval(Rational(0), Rational(2));
    coarse.at(0, 1) = RatInterval(Rational(0), Rational(2));
    coarse.at(1, 0) = RatInterval(Rational(0), Rational(2));
    coarse.at(1, 1) = RatInterval(Rational(0), Rational(2));
    CHECK(!certify_full_row_rank(coarse));

    // wide rows but certifiably independent
    IntervalMatrix tall(1, 3);
    tall.at(0, 0) = RatInterval(Rational(-1), Rational(1));
    tall.at(0, 1) = RatInterval(Rational(3), Rational(4));
    tall.at(0, 2) = RatInterval(Rational(-5), Rational(5));
    CHECK(certify_full_row_rank(tall));
}
