#pragma once

#include <string>
#include <vector>

#include "ectl/polymatrix.hpp"

namespace ectl {

// Element of the rational-function field Q(x), kept fully reduced: gcd of
// numerator and denominator is 1 and the denominator is monic (1 for zero and
// for polynomial values), so equality is plain member comparison.
class RationalFunction {
  public:
    RationalFunction() : num_(), den_(Poly::from_coeffs({1})) {}
    RationalFunction(const Rational& c) : RationalFunction(Poly::from_coeffs({c})) {}
    RationalFunction(Poly p) : num_(std::move(p)), den_(Poly::from_coeffs({1})) {}
    // Throws DivisionByZeroPolynomial when den is the zero polynomial.
    RationalFunction(Poly num, Poly den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    // Exact value at a rational point; throws InternalError when the
    // denominator vanishes there.
    Rational eval(const Rational& x) const;

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    // Throws DivisionByZeroPolynomial when b is zero.
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
        return !(a == b);
    }

    std::string str(const std::string& var) const;

  private:
    void reduce();
    Poly num_, den_;
};

// Dense matrix over Q(x); just enough linear algebra for similarity
// transforms of parameterized systems.
class RatFunMatrix {
  public:
    RatFunMatrix() : rows_(0), cols_(0) {}
    RatFunMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    static RatFunMatrix identity(int n);
    static RatFunMatrix from_poly_matrix(const PolyMatrix& m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    RationalFunction& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const RationalFunction& at(int i, int j) const {
        return a_[static_cast<size_t>(i) * cols_ + j];
    }
    bool is_zero() const;

    friend RatFunMatrix operator*(const RatFunMatrix& a, const RatFunMatrix& b);
    friend RatFunMatrix operator-(const RatFunMatrix& a, const RatFunMatrix& b);
    friend bool operator==(const RatFunMatrix& a, const RatFunMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

  private:
    int rows_, cols_;
    std::vector<RationalFunction> a_;
};

// Solves A X = B over Q(x) by Gaussian elimination; throws SingularMatrix
// when A is singular as a matrix over the function field.
RatFunMatrix ratfun_solve(const RatFunMatrix& a, const RatFunMatrix& b);

}  // namespace ectl
