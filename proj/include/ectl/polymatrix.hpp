#pragma once

#include <vector>

#include "ectl/matrix.hpp"
#include "ectl/poly.hpp"

namespace ectl {

// Dense matrix over Q[x].
class PolyMatrix {
  public:
    PolyMatrix() : rows_(0), cols_(0) {}
    PolyMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw InternalError("PolyMatrix: negative dimension");
    }
    static PolyMatrix identity(int n);
    static PolyMatrix from_constant(const QMatrix& m);
    // x*I - A, the pencil whose Smith form carries the invariant factors.
    static PolyMatrix characteristic_pencil(const QMatrix& a);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Poly& at(int i, int j) { return a_[idx(i, j)]; }
    const Poly& at(int i, int j) const { return a_[idx(i, j)]; }

    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);
    friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

    QMatrix eval(const Rational& x) const;
    bool is_zero() const;
    PolyMatrix transpose() const;

  private:
    std::size_t idx(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw InternalError("PolyMatrix: index out of range");
        return static_cast<std::size_t>(i) * cols_ + j;
    }
    int rows_, cols_;
    std::vector<Poly> a_;
};

// Fraction-free (Bareiss) determinant over Q[x]; all divisions exact.
Poly det(const PolyMatrix& m);  // NotSquare

// det(x*I - A) via the Bareiss determinant of the characteristic pencil.
Poly charpoly(const QMatrix& a);  // NotSquare

// Characteristic polynomial (in a fresh variable) of a matrix over Q[beta],
// via Faddeev-LeVerrier so no bivariate arithmetic is needed: returns the
// coefficient list c_0(beta),...,c_n(beta) of det(x*I - M) ascending in x.
std::vector<Poly> charpoly_coeffs(const PolyMatrix& m);  // NotSquare

// p(A) for a rational square matrix A.
QMatrix eval_poly_at_matrix(const Poly& p, const QMatrix& a);  // NotSquare

// Smith normal form over Q[x] with transform tracking:
//   S = U * M * V, S diagonal with monic entries d_1 | d_2 | ... ,
//   U, V unimodular, and Uinv = U^{-1} maintained alongside.
// Pivot rule: lowest-degree nonzero entry, ties by smallest (row, col).
// The factorization S = U*M*V and U*Uinv = I are re-verified exactly before
// returning; unimodularity is checked via degree-zero Bareiss determinants.
struct SmithResult {
    PolyMatrix S, U, V, Uinv;
};
SmithResult smith_normal_form(const PolyMatrix& m);  // NotSquare

}  // namespace ectl
