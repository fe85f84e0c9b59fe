#include "ectl/poly.hpp"

#include <sstream>

namespace ectl {

Poly::Poly(const Rational& constant) {
    if (sign(constant) != 0) c_.push_back(constant);
}

Poly::Poly(std::initializer_list<Rational> ascending) : c_(ascending) { trim(); }

Poly Poly::from_coeffs(std::vector<Rational> ascending) {
    Poly p;
    p.c_ = std::move(ascending);
    p.trim();
    return p;
}

Poly Poly::variable() { return Poly{Rational(0), Rational(1)}; }

Poly Poly::monomial(int degree, const Rational& c) {
    if (degree < 0) throw InternalError("monomial: negative degree");
    if (sign(c) == 0) return Poly();
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
    v.back() = c;
    return from_coeffs(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && sign(c_.back()) == 0) c_.pop_back();
}

const Rational& Poly::coeff(int i) const {
    static const Rational zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<std::size_t>(i)];
}

const Rational& Poly::leading() const {
    if (is_zero()) throw InternalError("leading coefficient of zero polynomial");
    return c_.back();
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Poly::from_coeffs(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Poly::from_coeffs(std::move(v));
}

Poly operator*(const Rational& s, const Poly& p) {
    if (sign(s) == 0) return Poly();
    Poly r = p;
    for (auto& c : r.c_) c *= s;
    return r;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Rational> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = Rational(i) * c_[i];
    return from_coeffs(std::move(v));
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RatInterval Poly::eval(const RatInterval& x) const {
    RatInterval acc{Rational(0)};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + RatInterval(*it);
    return acc;
}

double Poly::eval_double(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

Poly Poly::compose(const Poly& inner) const {
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + Poly(*it);
    return acc;
}

Poly Poly::monic() const {
    if (is_zero()) throw InternalError("monic() of zero polynomial");
    return (Rational(1) / leading()) * *this;
}

Poly Poly::shift_up(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<Rational> v(static_cast<std::size_t>(k), Rational(0));
    v.insert(v.end(), c_.begin(), c_.end());
    return from_coeffs(std::move(v));
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = coeff(i);
        if (sign(c) == 0) continue;
        Rational mag = ectl::abs(c);
        if (first) {
            if (sign(c) < 0) out << "-";
            first = false;
        } else {
            out << (sign(c) < 0 ? " - " : " + ");
        }
        const bool unit = (mag == 1);
        if (i == 0) {
            out << to_string(mag);
        } else {
            if (!unit) out << to_string(mag) << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

PolyDivMod poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZeroPolynomial("polynomial division by zero");
    Poly rem = a;
    if (a.degree() < b.degree()) return {Poly(), rem};
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rational(0));
    const Rational& lead = b.leading();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        const int shift = rem.degree() - b.degree();
        Rational factor = rem.leading() / lead;
        q[static_cast<std::size_t>(shift)] = factor;
        rem = rem - (factor * b).shift_up(shift);
    }
    return {Poly::from_coeffs(std::move(q)), rem};
}

bool divides(const Poly& b, const Poly& a) {
    if (b.is_zero()) return a.is_zero();
    return poly_divmod(a, b).rem.is_zero();
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = poly_divmod(x, y).rem;
        x = y;
        // Normalizing each remainder monic keeps coefficient growth in check.
        y = r.is_zero() ? r : r.monic();
    }
    return x.is_zero() ? x : x.monic();
}

Poly squarefree_part(const Poly& p) {
    if (p.is_zero()) throw InternalError("squarefree_part of zero polynomial");
    if (p.degree() == 0) return Poly(Rational(1));
    Poly g = poly_gcd(p, p.derivative());
    return poly_divmod(p, g).quot.monic();
}

}  // namespace ectl
