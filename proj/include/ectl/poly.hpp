#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "ectl/rational.hpp"

namespace ectl {

// Univariate polynomial over Q, coefficients stored ascending by degree.
// Invariant: empty vector for the zero polynomial, otherwise the highest
// coefficient is nonzero.
class Poly {
  public:
    Poly() = default;
    explicit Poly(const Rational& constant);
    Poly(std::initializer_list<Rational> ascending);
    static Poly from_coeffs(std::vector<Rational> ascending);
    static Poly variable();                               // x
    static Poly monomial(int degree, const Rational& c);  // c * x^degree

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rational>& coeffs() const { return c_; }
    // Coefficient of x^i; zero beyond the degree.
    const Rational& coeff(int i) const;
    const Rational& leading() const;  // requires nonzero
    bool is_monic() const { return !is_zero() && leading() == 1; }

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& s, const Poly& p);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative() const;
    Rational eval(const Rational& x) const;
    RatInterval eval(const RatInterval& x) const;
    double eval_double(double x) const;
    Poly compose(const Poly& inner) const;  // this(inner(x))
    Poly monic() const;                     // requires nonzero
    Poly shift_up(int k) const;             // multiply by x^k

    // Display form, descending degree, e.g. "x^2 - 3*x + 2".
    std::string str(const std::string& var = "x") const;

  private:
    void trim();
    std::vector<Rational> c_;
};

struct PolyDivMod {
    Poly quot, rem;
};

// Exact Euclidean division: a = b*quot + rem with deg(rem) < deg(b).
PolyDivMod poly_divmod(const Poly& a, const Poly& b);  // throws DivisionByZeroPolynomial

// True iff b divides a exactly (b nonzero).
bool divides(const Poly& b, const Poly& a);

// Monic gcd; gcd(0,0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

/// p / gcd(p, p'): same distinct roots, all simple.
Poly squarefree_part(const Poly& p);  // requires p nonzero

}  // namespace ectl
