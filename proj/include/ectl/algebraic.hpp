#pragma once

#include <variant>
#include <vector>

#include "ectl/polymatrix.hpp"
#include "ectl/roots.hpp"

namespace ectl {

// A real algebraic number: either an exact rational or an isolated irrational
// root of a rational polynomial.  Construction routines guarantee that the
// interval form is only used for genuinely irrational values whenever the
// rational-root extraction succeeds; comparisons below stay correct even if
// a rational value hides in interval form (exactness is tested first).
class RealValue {
  public:
    RealValue() : v_(Rational(0)) {}
    RealValue(Rational r) : v_(std::move(r)) {}
    RealValue(const IsolatingInterval& iv) {
        if (iv.is_point())
            v_ = iv.lo;
        else
            v_ = iv;
    }

    bool is_exact() const { return std::holds_alternative<Rational>(v_); }
    const Rational& exact() const { return std::get<Rational>(v_); }
    const IsolatingInterval& bracket() const { return std::get<IsolatingInterval>(v_); }

    RatInterval enclosure() const {
        if (is_exact()) return RatInterval(exact());
        return std::get<IsolatingInterval>(v_).enclosure();
    }
    // Shrink the enclosure to at most the given width (no-op for exact).
    void refine_below(const Rational& width) {
        if (is_exact()) return;
        auto& iv = std::get<IsolatingInterval>(v_);
        iv = refine(iv, width);
        if (iv.is_point()) v_ = iv.lo;
    }
    double approx() const { return to_double(enclosure().mid()); }

  private:
    std::variant<Rational, IsolatingInterval> v_;
};

// Total order on algebraic reals; terminating decision procedure.
// Equality of two interval values is decided by a gcd root count on the
// bracket overlap; order by refinement until the brackets separate.
int compare(const RealValue& a, const RealValue& b);

inline bool value_eq(const RealValue& a, const RealValue& b) { return compare(a, b) == 0; }
inline bool value_lt(const RealValue& a, const RealValue& b) { return compare(a, b) < 0; }

// f(x) for algebraic x, as a RealValue.  For interval x the result is pinned
// down as a root of charpoly(f(C_g)) where C_g is the companion matrix of x's
// defining polynomial (the multiplication-by-f map on Q[t]/<g>); rational
// values are recognized exactly.
RealValue poly_value_at(const Poly& f, const RealValue& x);

// Some rational strictly between a < b (throws if compare(a,b) >= 0).
Rational rational_between(const RealValue& a, const RealValue& b);

// A rational point of [a, b] guaranteed inside the closed interval: a itself
// when exact, else a slightly-inside rational (used for grid bounds).
Rational inner_rational_low(const RealValue& a);
Rational inner_rational_high(const RealValue& b);

std::string to_string(const RealValue& v);

}  // namespace ectl
