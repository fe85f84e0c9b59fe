#include "ectl/matrix.hpp"

#include <algorithm>

namespace ectl {

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    QMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c)
            throw InternalError("QMatrix::from_rows: ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
}

QVector QMatrix::col(int j) const {
    QVector v(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) v[static_cast<std::size_t>(i)] = at(i, j);
    return v;
}

QVector QMatrix::row(int i) const {
    QVector v(static_cast<std::size_t>(cols_));
    for (int j = 0; j < cols_; ++j) v[static_cast<std::size_t>(j)] = at(i, j);
    return v;
}

void QMatrix::set_col(int j, const QVector& v) {
    if (static_cast<int>(v.size()) != rows_) throw InternalError("set_col: size mismatch");
    for (int i = 0; i < rows_; ++i) at(i, j) = v[static_cast<std::size_t>(i)];
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix addition shape");
    QMatrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
    return r;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix subtraction shape");
    QMatrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
    return r;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape");
    QMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const Rational& aik = a.at(i, k);
            if (sign(aik) == 0) continue;
            for (int j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

QMatrix operator*(const Rational& s, const QMatrix& m) {
    QMatrix r = m;
    for (auto& x : r.a_) x *= s;
    return r;
}

QVector QMatrix::apply(const QVector& v) const {
    if (static_cast<int>(v.size()) != cols_) throw DimensionMismatch("matrix-vector shape");
    QVector r(static_cast<std::size_t>(rows_), Rational(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[static_cast<std::size_t>(i)] += at(i, j) * v[static_cast<std::size_t>(j)];
    return r;
}

bool QMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return sign(x) == 0; });
}

QMatrix QMatrix::hcat(const QMatrix& other) const {
    if (rows_ != other.rows_) throw DimensionMismatch("hcat row count");
    QMatrix r(rows_, cols_ + other.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < other.cols_; ++j) r.at(i, cols_ + j) = other.at(i, j);
    }
    return r;
}

QMatrix QMatrix::vcat(const QMatrix& other) const {
    if (cols_ != other.cols_) throw DimensionMismatch("vcat column count");
    QMatrix r(rows_ + other.rows_, cols_);
    for (int j = 0; j < cols_; ++j) {
        for (int i = 0; i < rows_; ++i) r.at(i, j) = at(i, j);
        for (int i = 0; i < other.rows_; ++i) r.at(rows_ + i, j) = other.at(i, j);
    }
    return r;
}

namespace {

// Shared elimination core: reduces a working copy in place, returns pivot
// columns.  Partial pivoting on the largest |entry| for determinism.
std::vector<int> eliminate(QMatrix& w) {
    std::vector<int> pivot_cols;
    int r = 0;
    for (int c = 0; c < w.cols() && r < w.rows(); ++c) {
        int best = -1;
        Rational best_mag(0);
        for (int i = r; i < w.rows(); ++i) {
            Rational mag = ectl::abs(w.at(i, c));
            if (sign(mag) != 0 && (best < 0 || mag > best_mag)) {
                best = i;
                best_mag = mag;
            }
        }
        if (best < 0) continue;
        if (best != r)
            for (int j = 0; j < w.cols(); ++j) std::swap(w.at(r, j), w.at(best, j));
        for (int i = r + 1; i < w.rows(); ++i) {
            if (sign(w.at(i, c)) == 0) continue;
            Rational f = w.at(i, c) / w.at(r, c);
            for (int j = c; j < w.cols(); ++j) w.at(i, j) -= f * w.at(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    return pivot_cols;
}

}  // namespace

int rank(const QMatrix& m) {
    QMatrix w = m;
    return static_cast<int>(eliminate(w).size());
}

Rational det(const QMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("det: matrix not square");
    const int n = m.rows();
    QMatrix w = m;
    Rational d(1);
    for (int c = 0; c < n; ++c) {
        int best = -1;
        Rational best_mag(0);
        for (int i = c; i < n; ++i) {
            Rational mag = ectl::abs(w.at(i, c));
            if (sign(mag) != 0 && (best < 0 || mag > best_mag)) {
                best = i;
                best_mag = mag;
            }
        }
        if (best < 0) return Rational(0);
        if (best != c) {
            for (int j = 0; j < n; ++j) std::swap(w.at(c, j), w.at(best, j));
            d = -d;
        }
        d *= w.at(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (sign(w.at(i, c)) == 0) continue;
            Rational f = w.at(i, c) / w.at(c, c);
            for (int j = c; j < n; ++j) w.at(i, j) -= f * w.at(c, j);
        }
    }
    return d;
}

QMatrix inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("inverse: matrix not square");
    const int n = m.rows();
    QMatrix w = m.hcat(QMatrix::identity(n));
    for (int c = 0; c < n; ++c) {
        int best = -1;
        Rational best_mag(0);
        for (int i = c; i < n; ++i) {
            Rational mag = ectl::abs(w.at(i, c));
            if (sign(mag) != 0 && (best < 0 || mag > best_mag)) {
                best = i;
                best_mag = mag;
            }
        }
        if (best < 0) throw SingularMatrix("inverse: singular matrix");
        if (best != c)
            for (int j = 0; j < 2 * n; ++j) std::swap(w.at(c, j), w.at(best, j));
        const Rational piv = w.at(c, c);
        for (int j = 0; j < 2 * n; ++j) w.at(c, j) /= piv;
        for (int i = 0; i < n; ++i) {
            if (i == c || sign(w.at(i, c)) == 0) continue;
            Rational f = w.at(i, c);
            for (int j = 0; j < 2 * n; ++j) w.at(i, j) -= f * w.at(c, j);
        }
    }
    QMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = w.at(i, n + j);
    return inv;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
    if (static_cast<int>(b.size()) != a.rows()) throw DimensionMismatch("solve: rhs size");
    QMatrix rhs(a.rows(), 1);
    for (int i = 0; i < a.rows(); ++i) rhs.at(i, 0) = b[static_cast<std::size_t>(i)];
    QMatrix w = a.hcat(rhs);
    const std::vector<int> pivots = eliminate(w);
    // Inconsistent iff a pivot lands in the appended column.
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    if (static_cast<int>(pivots.size()) < a.cols())
        throw InternalError("solve: matrix does not have full column rank");
    // Back substitution; pivot row i has pivot column pivots[i] == i here
    // because rank == cols.
    QVector x(static_cast<std::size_t>(a.cols()), Rational(0));
    for (int i = a.cols() - 1; i >= 0; --i) {
        Rational acc = w.at(i, a.cols());
        for (int j = i + 1; j < a.cols(); ++j) acc -= w.at(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = acc / w.at(i, i);
    }
    return x;
}

int rank_bareiss(const QMatrix& m) {
    // Clear denominators row by row, then run integer fraction-free
    // elimination (Bareiss).  Exact divisions by the previous pivot.
    const int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Integer>> w(static_cast<std::size_t>(rows),
                                        std::vector<Integer>(static_cast<std::size_t>(cols), 0));
    for (int i = 0; i < rows; ++i) {
        Integer l = 1;
        for (int j = 0; j < cols; ++j) l = boost::multiprecision::lcm(l, Integer(denominator(m.at(i, j))));
        for (int j = 0; j < cols; ++j)
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                Integer(numerator(m.at(i, j))) * (l / Integer(denominator(m.at(i, j))));
    }
    Integer prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (w[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(w[static_cast<std::size_t>(piv)], w[static_cast<std::size_t>(r)]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j)
                w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    (w[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
                         w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                     w[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] *
                         w[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]) /
                    prev;
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = 0;
        }
        prev = w[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        ++r;
    }
    return r;
}

}  // namespace ectl
