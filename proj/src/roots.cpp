#include "ectl/roots.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace ectl {

std::vector<Poly> sturm_sequence(const Poly& squarefree) {
    std::vector<Poly> seq;
    if (squarefree.is_zero()) return seq;
    seq.push_back(squarefree);
    if (squarefree.degree() == 0) return seq;
    seq.push_back(squarefree.derivative());
    while (!seq.back().is_zero() && seq.back().degree() > 0) {
        Poly r = -poly_divmod(seq[seq.size() - 2], seq.back()).rem;
        if (r.is_zero()) break;
        // Positive scaling preserves sign variations and keeps numbers small.
        seq.push_back((Rational(1) / ectl::abs(r.leading())) * r);
    }
    return seq;
}

int sign_variations(const std::vector<Poly>& seq, const Rational& x) {
    int variations = 0, prev = 0;
    for (const Poly& p : seq) {
        const int s = sign(p.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++variations;
        prev = s;
    }
    return variations;
}

int count_roots_halfopen(const std::vector<Poly>& seq, const Rational& lo, const Rational& hi) {
    if (lo >= hi) return 0;
    return sign_variations(seq, lo) - sign_variations(seq, hi);
}

int count_distinct_roots(const Poly& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw InternalError("count_distinct_roots: zero polynomial");
    if (lo > hi) return 0;
    const Poly q = squarefree_part(p);
    int at_lo = sign(q.eval(lo)) == 0 ? 1 : 0;
    if (lo == hi) return at_lo;
    return at_lo + count_roots_halfopen(sturm_sequence(q), lo, hi);
}

namespace {

// Trial-division factorization.  Returns prime -> exponent; a leftover
// cofactor beyond the bound is treated as prime (divisors then may be
// incomplete for adversarially huge inputs; see rational_roots docs).
std::map<Integer, int> factor(Integer n) {
    std::map<Integer, int> f;
    if (n < 0) n = -n;
    if (n <= 1) return f;
    const Integer bound = 1000000;
    for (Integer d = 2; d <= bound && d * d <= n; ++d) {
        while (n % d == 0) {
            ++f[d];
            n /= d;
        }
    }
    if (n > 1) ++f[n];
    return f;
}

std::vector<Integer> divisors(const Integer& n) {
    std::vector<Integer> divs{1};
    for (const auto& [p, e] : factor(n)) {
        const std::size_t base = divs.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * pk);
                if (divs.size() > 100000) return divs;  // defensive cap
            }
        }
    }
    return divs;
}

}  // namespace

std::vector<Rational> rational_roots(const Poly& p) {
    std::vector<Rational> roots;
    if (p.is_zero() || p.degree() == 0) return roots;

    // Strip x^k so the constant term is nonzero; x = 0 is then a root iff k > 0.
    Poly q = p;
    bool zero_root = false;
    while (sign(q.coeff(0)) == 0) {
        zero_root = true;
        std::vector<Rational> v(q.coeffs().begin() + 1, q.coeffs().end());
        q = Poly::from_coeffs(std::move(v));
    }
    if (zero_root) roots.emplace_back(0);
    if (q.degree() >= 1) {
        // Clear denominators to an integer polynomial.
        Integer den_lcm = 1;
        for (const Rational& c : q.coeffs())
            den_lcm = boost::multiprecision::lcm(den_lcm, Integer(denominator(c)));
        std::vector<Integer> ic;
        ic.reserve(q.coeffs().size());
        for (const Rational& c : q.coeffs())
            ic.push_back(Integer(numerator(c)) * (den_lcm / Integer(denominator(c))));
        // Candidates num/den with num | constant term, den | leading term.
        for (const Integer& num : divisors(ic.front()))
            for (const Integer& den : divisors(ic.back()))
                for (int s : {1, -1}) {
                    Rational cand(s * num, den);
                    if (sign(q.eval(cand)) == 0 &&
                        std::find(roots.begin(), roots.end(), cand) == roots.end())
                        roots.push_back(cand);
                }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<IsolatingInterval> isolate_real_roots(const Poly& p, const Rational& lo,
                                                  const Rational& hi) {
    if (p.is_zero()) throw InternalError("isolate_real_roots: zero polynomial");
    if (lo > hi) throw InternalError("isolate_real_roots: empty query interval");
    std::vector<IsolatingInterval> out;
    if (p.degree() == 0) return out;

    Poly q = squarefree_part(p);

    // Exact rational roots first: point intervals, and deflated out of q so
    // the Sturm stage only ever brackets irrational roots.
    std::vector<Rational> in_range;
    for (const Rational& r : rational_roots(q)) {
        Poly lin{-r, Rational(1)};
        if (divides(lin, q)) q = poly_divmod(q, lin).quot;
        if (lo <= r && r <= hi) in_range.push_back(r);
    }
    for (const Rational& r : in_range) out.push_back(IsolatingInterval{p, r, r});

restart_sturm:
    if (q.degree() >= 1) {
        const auto seq = sturm_sequence(q);
        // q has no rational roots, so q(lo) != 0 and (lo, hi] counts cover [lo, hi].
        std::deque<std::tuple<Rational, Rational, int>> work;
        const int total = count_roots_halfopen(seq, lo, hi);
        if (total > 0) work.emplace_back(lo, hi, total);
        std::vector<IsolatingInterval> brackets;
        while (!work.empty()) {
            auto [a, b, cnt] = work.front();
            work.pop_front();
            if (cnt == 1) {
                // Separate this bracket from every exact rational root.
                bool clean = true;
                for (const Rational& r : in_range)
                    if (a <= r && r <= b) {
                        clean = false;
                        break;
                    }
                if (clean) {
                    brackets.push_back(IsolatingInterval{q, a, b});
                    continue;
                }
            }
            const Rational m = (a + b) / 2;
            if (sign(q.eval(m)) == 0) {
                // A rational root slipped past divisor enumeration; recover by
                // deflating and starting the Sturm stage over.
                out.push_back(IsolatingInterval{p, m, m});
                in_range.push_back(m);
                q = poly_divmod(q, Poly{-m, Rational(1)}).quot;
                goto restart_sturm;
            }
            const int left = count_roots_halfopen(seq, a, m);
            if (left > 0) work.emplace_back(a, m, left);
            if (cnt - left > 0) work.emplace_back(m, b, cnt - left);
        }
        out.insert(out.end(), brackets.begin(), brackets.end());
    }

    // Order by root position.  Distinct roots admit a strict order once the
    // brackets are narrow enough; refine any ambiguous pair.
    auto before = [](const IsolatingInterval& x, const IsolatingInterval& y) {
        return x.hi < y.lo;
    };
    bool sorted = false;
    while (!sorted) {
        sorted = true;
        std::sort(out.begin(), out.end(),
                  [](const IsolatingInterval& x, const IsolatingInterval& y) {
                      return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
                  });
        for (std::size_t i = 0; i + 1 < out.size(); ++i)
            if (!before(out[i], out[i + 1]) && !before(out[i + 1], out[i])) {
                out[i] = refine(out[i], out[i].width() / 4);
                out[i + 1] = refine(out[i + 1], out[i + 1].width() / 4);
                sorted = false;
            }
    }
    return out;
}

IsolatingInterval refine(IsolatingInterval iv, const Rational& width) {
    if (iv.is_point()) return iv;
    while (iv.width() > width) {
        const Rational m = iv.mid();
        const int sm = sign(iv.poly.eval(m));
        if (sm == 0) {
            // Robustness: the bracketed root turned out to be the rational
            // midpoint; collapse to a point interval.
            iv.lo = iv.hi = m;
            return iv;
        }
        if (sm == sign(iv.poly.eval(iv.lo)))
            iv.lo = m;
        else
            iv.hi = m;
    }
    // Snap to the width-grid: if a multiple of width lies strictly inside the
    // bracket, cut there so the result sits within a single grid cell (e.g.
    // the 1/100-grid puts sqrt(2) inside [141/100, 142/100]).  This only ever
    // shrinks the bracket, so isolation is preserved.
    if (sign(width) > 0) {
        const Rational q = iv.lo / width;
        Integer k = numerator(q) / denominator(q);
        if (sign(q) < 0 && k * denominator(q) != numerator(q)) --k;
        const Rational g = Rational(k + 1) * width;
        if (g > iv.lo && g < iv.hi) {
            const int sg = sign(iv.poly.eval(g));
            if (sg == 0)
                iv.lo = iv.hi = g;
            else if (sg == sign(iv.poly.eval(iv.lo)))
                iv.lo = g;
            else
                iv.hi = g;
        }
    }
    return iv;
}

}  // namespace ectl
