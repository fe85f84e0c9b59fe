#include "ectl/ratfun.hpp"

#include "ectl/errors.hpp"

namespace ectl {

RationalFunction::RationalFunction(Poly num, Poly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZeroPolynomial("rational function with zero denominator");
    reduce();
}

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        den_ = Poly::from_coeffs({1});
        return;
    }
    const Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = poly_divmod(num_, g).quot;
        den_ = poly_divmod(den_, g).quot;
    }
    const Rational lead = den_.leading();
    if (lead != 1) {
        num_ = (Rational(1) / lead) * num_;
        den_ = (Rational(1) / lead) * den_;
    }
}

Rational RationalFunction::eval(const Rational& x) const {
    const Rational d = den_.eval(x);
    if (d == 0) throw InternalError("RationalFunction::eval: pole at evaluation point");
    return num_.eval(x) / d;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a + (-b);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DivisionByZeroPolynomial("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::str(const std::string& var) const {
    if (is_polynomial()) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

RatFunMatrix RatFunMatrix::identity(int n) {
    RatFunMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = RationalFunction(Rational(1));
    return m;
}

RatFunMatrix RatFunMatrix::from_poly_matrix(const PolyMatrix& m) {
    RatFunMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = RationalFunction(m.at(i, j));
    return r;
}

bool RatFunMatrix::is_zero() const {
    for (const auto& e : a_)
        if (!e.is_zero()) return false;
    return true;
}

RatFunMatrix operator*(const RatFunMatrix& a, const RatFunMatrix& b) {
    if (a.cols_ != b.rows_) throw InternalError("RatFunMatrix product shape mismatch");
    RatFunMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const RationalFunction& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
        }
    return r;
}

RatFunMatrix operator-(const RatFunMatrix& a, const RatFunMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw InternalError("RatFunMatrix difference shape mismatch");
    RatFunMatrix r(a.rows_, a.cols_);
    for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
    return r;
}

RatFunMatrix ratfun_solve(const RatFunMatrix& a, const RatFunMatrix& b) {
    if (a.rows() != a.cols() || a.rows() != b.rows())
        throw InternalError("ratfun_solve shape mismatch");
    const int n = a.rows(), m = b.cols();
    RatFunMatrix w = a, x = b;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (!w.at(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) throw SingularMatrix("ratfun_solve: matrix singular over Q(x)");
        if (piv != c)
            for (int j = 0; j < n; ++j) std::swap(w.at(piv, j), w.at(c, j));
        if (piv != c)
            for (int j = 0; j < m; ++j) std::swap(x.at(piv, j), x.at(c, j));
        const RationalFunction inv =
            RationalFunction(Rational(1)) / w.at(c, c);
        for (int j = c; j < n; ++j) w.at(c, j) = w.at(c, j) * inv;
        for (int j = 0; j < m; ++j) x.at(c, j) = x.at(c, j) * inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || w.at(i, c).is_zero()) continue;
            const RationalFunction f = w.at(i, c);
            for (int j = c; j < n; ++j) w.at(i, j) = w.at(i, j) - f * w.at(c, j);
            for (int j = 0; j < m; ++j) x.at(i, j) = x.at(i, j) - f * x.at(c, j);
        }
    }
    return x;
}

}  // namespace ectl
