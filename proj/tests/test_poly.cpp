#include <doctest.h>

#include "ectl/errors.hpp"
#include "ectl/poly.hpp"

using namespace ectl;

TEST_CASE("poly basics") {
    const Poly zero;
    CHECK(zero.is_zero());
    CHECK(zero.degree() == -1);

    const Poly p{2, -3, 1};  // x^2 - 3x + 2
    CHECK(p.degree() == 2);
    CHECK(p.is_monic());
    CHECK(p.coeff(0) == 2);
    CHECK(p.coeff(5) == 0);
    CHECK(p.eval(Rational(1)) == 0);
    CHECK(p.eval(Rational(3)) == 2);
    CHECK(p.str() == "x^2 - 3*x + 2");

    // trailing zeros trim away
    CHECK(Poly::from_coeffs({Rational(1), Rational(0), Rational(0)}).degree() == 0);
}

TEST_CASE("poly arithmetic") {
    const Poly a{1, 1};   // x + 1
    const Poly b{-1, 1};  // x - 1
    CHECK(a * b == Poly{-1, 0, 1});
    CHECK(a + b == Poly{0, 2});
    CHECK(a - a == Poly());
    CHECK((Rational(3) * a) == Poly{3, 3});
    CHECK((-a) == Poly{-1, -1});
    CHECK(a.shift_up(2) == Poly{0, 0, 1, 1});

    const Poly sq = a.compose(Poly{0, 0, 1});  // (x^2) + 1
    CHECK(sq == Poly{1, 0, 1});
    CHECK(Poly{2, -3, 1}.derivative() == Poly{-3, 2});
}

TEST_CASE("poly_divmod") {
    const auto [q1, r1] = poly_divmod(Poly{2, -3, 1}, Poly{-1, 1});
    CHECK(q1 == Poly{-2, 1});
    CHECK(r1.is_zero());

    const auto [q2, r2] = poly_divmod(Poly{0, 1}, Poly{0, 0, 1});
    CHECK(q2.is_zero());
    CHECK(r2 == Poly{0, 1});

    const auto [q3, r3] = poly_divmod(Poly{0, 0, 0, 1}, Poly{0, 1});
    CHECK(q3 == Poly{0, 0, 1});
    CHECK(r3.is_zero());

    CHECK_THROWS_AS(poly_divmod(Poly{1}, Poly()), DivisionByZeroPolynomial);
}

TEST_CASE("poly_gcd") {
    CHECK(poly_gcd(Poly{-1, 0, 1}, Poly{-1, 1}) == Poly{-1, 1});
    CHECK(poly_gcd(Poly{2, -3, 1}, Poly{3, -4, 1}) == Poly{-1, 1});
    CHECK(poly_gcd(Poly{4, 0, 2}, Poly()) == Poly{2, 0, 1});  // monic(p)
    CHECK(poly_gcd(Poly(), Poly()).is_zero());

    // gcd divides both inputs exactly
    const Poly p{2, -3, 1}, q{-2, 1, 1};
    const Poly g = poly_gcd(p, q);
    CHECK(divides(g, p));
    CHECK(divides(g, q));
}

TEST_CASE("squarefree_part") {
    const Poly dbl = Poly{-1, 1} * Poly{-1, 1} * Poly{-2, 1};  // (x-1)^2 (x-2)
    CHECK(squarefree_part(dbl) == Poly{2, -3, 1});
    CHECK(squarefree_part(Poly{5}) == Poly{1});
}
