#pragma once

#include <vector>

#include "ectl/poly.hpp"

namespace ectl {

// Bracket around a single real root of a polynomial.
//
// Point form (lo == hi): the root is exactly rational.  Otherwise the root is
// irrational, `poly` has exactly one real root in [lo, hi], and
// sign(poly(lo)) * sign(poly(hi)) < 0, so the bracket can be bisected to any
// width with exact sign tests.
struct IsolatingInterval {
    Poly poly;
    Rational lo, hi;

    bool is_point() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    RatInterval enclosure() const { return RatInterval(lo, hi); }
};

// Sturm machinery.  The sequence is built from the square-free part, so root
// counts are counts of distinct roots.
std::vector<Poly> sturm_sequence(const Poly& squarefree);
int sign_variations(const std::vector<Poly>& seq, const Rational& x);
// Distinct real roots of p in the half-open interval (lo, hi].
int count_roots_halfopen(const std::vector<Poly>& seq, const Rational& lo, const Rational& hi);
// Distinct real roots of p in the closed interval [lo, hi].
int count_distinct_roots(const Poly& p, const Rational& lo, const Rational& hi);

// All rational roots of p, ascending, found exactly via the rational root
// theorem on the denominator-cleared polynomial.  Complete whenever the
// leading/trailing integer coefficients factor within the trial-division
// bound (always true for the data sizes this library targets).
std::vector<Rational> rational_roots(const Poly& p);

// One IsolatingInterval per distinct real root of p in [lo, hi], sorted by
// ascending root.  Rational roots come back as point intervals.
std::vector<IsolatingInterval> isolate_real_roots(const Poly& p, const Rational& lo,
                                                  const Rational& hi);

// Bisect until hi - lo <= width; keeps bracketing the same root.  Point
// intervals are returned unchanged.
IsolatingInterval refine(IsolatingInterval iv, const Rational& width);

}  // namespace ectl
