#pragma once

#include <optional>
#include <vector>

#include "ectl/rational.hpp"

namespace ectl {

using QVector = std::vector<Rational>;

// Dense matrix over Q with exact arithmetic throughout.
class QMatrix {
  public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Rational(0)) {
        if (rows < 0 || cols < 0) throw InternalError("QMatrix: negative dimension");
    }
    static QMatrix identity(int n);
    // Row-major nested initializer helper, mainly for tests/fixtures.
    static QMatrix from_rows(const std::vector<QVector>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int i, int j) { return a_[idx(i, j)]; }
    const Rational& at(int i, int j) const { return a_[idx(i, j)]; }

    QVector col(int j) const;
    QVector row(int i) const;
    void set_col(int j, const QVector& v);
    QMatrix transpose() const;

    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator*(const Rational& s, const QMatrix& m);
    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const QMatrix& a, const QMatrix& b) { return !(a == b); }

    QVector apply(const QVector& v) const;  // matrix * vector
    bool is_zero() const;

    // [this | other] side by side.
    QMatrix hcat(const QMatrix& other) const;
    // [this; other] stacked.
    QMatrix vcat(const QMatrix& other) const;

  private:
    std::size_t idx(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw InternalError("QMatrix: index out of range");
        return static_cast<std::size_t>(i) * cols_ + j;
    }
    int rows_, cols_;
    std::vector<Rational> a_;
};

// Exact Gaussian elimination with partial pivoting on the largest-magnitude
// rational pivot (deterministic; no tolerances anywhere).
int rank(const QMatrix& m);
Rational det(const QMatrix& m);                 // NotSquare
QMatrix inverse(const QMatrix& m);              // NotSquare, SingularMatrix
// Unique solution of A x = b for A with full column rank; nullopt when the
// system is inconsistent.  Throws if the solution is not unique.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

// Independent rank routine used to re-verify uncontrollability witnesses:
// clears denominators and runs fraction-free Bareiss elimination over the
// integers — a different algorithm and code path from rank().
int rank_bareiss(const QMatrix& m);

}  // namespace ectl
