#include "ectl/algebraic.hpp"

#include <cstdio>

#include "ectl/errors.hpp"

namespace ectl {

namespace {

// compare(q, root isolated by iv).  Terminates: if p(q) != 0 then q is not
// the bracketed root, so refinement eventually expels q from the bracket.
int cmp_rational_interval(const Rational& q, IsolatingInterval iv) {
    for (;;) {
        if (q < iv.lo) return -1;
        if (q > iv.hi) return 1;
        if (iv.poly.eval(q) == 0) return 0;
        iv = refine(iv, iv.width() / 2);
        if (iv.is_point()) {
            const Rational& r = iv.lo;
            return q < r ? -1 : (q > r ? 1 : 0);
        }
    }
}

int cmp_interval_interval(IsolatingInterval a, IsolatingInterval b) {
    // Equality test: a common root inside the bracket overlap is necessarily
    // both isolated roots at once (each bracket holds a single root).
    const Rational olo = std::max(a.lo, b.lo);
    const Rational ohi = std::min(a.hi, b.hi);
    if (olo <= ohi) {
        Poly g = poly_gcd(a.poly, b.poly);
        if (g.degree() >= 1 && count_distinct_roots(g, olo, ohi) >= 1) return 0;
    }
    // Roots differ; bracket endpoints are never roots, so even touching
    // brackets order strictly.
    for (;;) {
        if (a.hi <= b.lo) return -1;
        if (b.hi <= a.lo) return 1;
        a = refine(a, a.width() / 2);
        b = refine(b, b.width() / 2);
        if (a.is_point() || b.is_point()) return compare(RealValue(a), RealValue(b));
    }
}

QMatrix companion_of(const Poly& monic) {
    const int n = monic.degree();
    QMatrix c(n, n);
    for (int i = 0; i + 1 < n; ++i) c.at(i + 1, i) = 1;
    for (int i = 0; i < n; ++i) c.at(i, n - 1) = -monic.coeff(i);
    return c;
}

}  // namespace

int compare(const RealValue& a, const RealValue& b) {
    if (a.is_exact() && b.is_exact()) {
        const Rational &x = a.exact(), &y = b.exact();
        return x < y ? -1 : (x > y ? 1 : 0);
    }
    if (a.is_exact()) return cmp_rational_interval(a.exact(), b.bracket());
    if (b.is_exact()) return -cmp_rational_interval(b.exact(), a.bracket());
    return cmp_interval_interval(a.bracket(), b.bracket());
}

RealValue poly_value_at(const Poly& f, const RealValue& x) {
    if (x.is_exact()) return RealValue(f.eval(x.exact()));
    if (f.degree() <= 0) return RealValue(f.coeff(0));

    // v = f(x) is an eigenvalue of f applied to the multiplication-by-x map
    // on Q[t]/<g>, so charpoly(f(C_g)) is a defining polynomial for v.
    IsolatingInterval iv = x.bracket();
    const Poly g = iv.poly.monic();
    const Poly h = charpoly(eval_poly_at_matrix(f, companion_of(g)));

    // Shrink x's bracket until the interval image f(bracket) isolates a
    // single root of h; that root is v.
    for (;;) {
        const RatInterval j = f.eval(RatInterval(iv.lo, iv.hi));
        if (count_distinct_roots(h, j.lo(), j.hi()) == 1) {
            auto brackets = isolate_real_roots(h, j.lo(), j.hi());
            if (brackets.size() != 1)
                throw InternalError("poly_value_at: isolation disagrees with root count");
            return RealValue(brackets.front());
        }
        iv = refine(iv, iv.width() / 2);
        if (iv.is_point()) return RealValue(f.eval(iv.lo));
    }
}

Rational rational_between(const RealValue& a, const RealValue& b) {
    if (compare(a, b) >= 0) throw InternalError("rational_between: endpoints out of order");
    RealValue lo = a, hi = b;
    for (;;) {
        const RatInterval ea = lo.enclosure(), eb = hi.enclosure();
        if (ea.hi() < eb.lo()) return (ea.hi() + eb.lo()) / 2;
        lo.refine_below(ea.width() / 2);
        hi.refine_below(eb.width() / 2);
    }
}

Rational inner_rational_low(const RealValue& a) {
    return a.is_exact() ? a.exact() : a.bracket().hi;
}

Rational inner_rational_high(const RealValue& b) {
    return b.is_exact() ? b.exact() : b.bracket().lo;
}

std::string to_string(const RealValue& v) {
    if (v.is_exact()) return to_string(v.exact());
    RealValue c = v;
    c.refine_below(Rational(1, 1000000));
    if (c.is_exact()) return to_string(c.exact());
    char buf[64];
    std::snprintf(buf, sizeof(buf), "~%.9g", c.approx());
    return buf;
}

}  // namespace ectl
