#include "ectl/polymatrix.hpp"

#include <algorithm>

namespace ectl {

PolyMatrix PolyMatrix::identity(int n) {
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Poly(Rational(1));
    return m;
}

PolyMatrix PolyMatrix::from_constant(const QMatrix& q) {
    PolyMatrix m(q.rows(), q.cols());
    for (int i = 0; i < q.rows(); ++i)
        for (int j = 0; j < q.cols(); ++j) m.at(i, j) = Poly(q.at(i, j));
    return m;
}

PolyMatrix PolyMatrix::characteristic_pencil(const QMatrix& a) {
    if (a.rows() != a.cols()) throw NotSquare("characteristic pencil of a non-square matrix");
    PolyMatrix m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            m.at(i, j) = Poly(-a.at(i, j));
            if (i == j) m.at(i, j) = m.at(i, j) + Poly::variable();
        }
    return m;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("poly-matrix addition shape");
    PolyMatrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] + b.a_[i];
    return r;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("poly-matrix subtraction shape");
    PolyMatrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] - b.a_[i];
    return r;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("poly-matrix product shape");
    PolyMatrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const Poly& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
        }
    return r;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

QMatrix PolyMatrix::eval(const Rational& x) const {
    QMatrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).eval(x);
    return m;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Poly& p) { return p.is_zero(); });
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Poly det(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("det: poly-matrix not square");
    const int n = m.rows();
    if (n == 0) return Poly(Rational(1));
    PolyMatrix w = m;
    Poly prev(Rational(1));
    int sign_flips = 0;
    for (int c = 0; c < n - 1; ++c) {
        if (w.at(c, c).is_zero()) {
            int piv = -1;
            for (int i = c + 1; i < n; ++i)
                if (!w.at(i, c).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) return Poly();  // column of zeros below: singular
            for (int j = 0; j < n; ++j) std::swap(w.at(c, j), w.at(piv, j));
            ++sign_flips;
        }
        for (int i = c + 1; i < n; ++i) {
            for (int j = c + 1; j < n; ++j) {
                Poly num = w.at(c, c) * w.at(i, j) - w.at(i, c) * w.at(c, j);
                auto dm = poly_divmod(num, prev);
                if (!dm.rem.is_zero()) throw InternalError("Bareiss: inexact division");
                w.at(i, j) = dm.quot;
            }
            w.at(i, c) = Poly();
        }
        prev = w.at(c, c);
    }
    Poly d = w.at(n - 1, n - 1);
    return (sign_flips % 2 == 1) ? -d : d;
}

Poly charpoly(const QMatrix& a) { return det(PolyMatrix::characteristic_pencil(a)); }

std::vector<Poly> charpoly_coeffs(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("charpoly_coeffs: poly-matrix not square");
    const int n = m.rows();
    // Faddeev-LeVerrier: M_1 = M, c_{n-1} = -tr M_1,
    // M_{k+1} = M (M_k + c_{n-k} I), c_{n-k-1} = -tr(M_{k+1}) / (k+1).
    std::vector<Poly> c(static_cast<std::size_t>(n) + 1);
    c[static_cast<std::size_t>(n)] = Poly(Rational(1));
    PolyMatrix mk = m;
    for (int k = 1; k <= n; ++k) {
        Poly tr;
        for (int i = 0; i < n; ++i) tr = tr + mk.at(i, i);
        Poly ck = (Rational(-1) / Rational(k)) * tr;
        c[static_cast<std::size_t>(n - k)] = ck;
        if (k < n) {
            PolyMatrix shifted = mk;
            for (int i = 0; i < n; ++i) shifted.at(i, i) = shifted.at(i, i) + ck;
            mk = m * shifted;
        }
    }
    return c;
}

QMatrix eval_poly_at_matrix(const Poly& p, const QMatrix& a) {
    if (a.rows() != a.cols()) throw NotSquare("eval_poly_at_matrix: matrix not square");
    const int n = a.rows();
    QMatrix acc(n, n);
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
        acc = acc * a;
        for (int i = 0; i < n; ++i) acc.at(i, i) += *it;
    }
    return acc;
}

namespace {

struct SmithWork {
    PolyMatrix S, U, V, Uinv;

    void row_swap(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < S.cols(); ++c) std::swap(S.at(i, c), S.at(j, c));
        for (int c = 0; c < U.cols(); ++c) std::swap(U.at(i, c), U.at(j, c));
        for (int r = 0; r < Uinv.rows(); ++r) std::swap(Uinv.at(r, i), Uinv.at(r, j));
    }
    void col_swap(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < S.rows(); ++r) std::swap(S.at(r, i), S.at(r, j));
        for (int r = 0; r < V.rows(); ++r) std::swap(V.at(r, i), V.at(r, j));
    }
    // row_i -= q * row_t   (left multiply by I - q e_i e_t^T)
    void row_axpy(int i, int t, const Poly& q) {
        if (q.is_zero()) return;
        for (int c = 0; c < S.cols(); ++c) S.at(i, c) = S.at(i, c) - q * S.at(t, c);
        for (int c = 0; c < U.cols(); ++c) U.at(i, c) = U.at(i, c) - q * U.at(t, c);
        for (int r = 0; r < Uinv.rows(); ++r) Uinv.at(r, t) = Uinv.at(r, t) + q * Uinv.at(r, i);
    }
    // col_j -= q * col_t   (right multiply by I - q e_t e_j^T)
    void col_axpy(int j, int t, const Poly& q) {
        if (q.is_zero()) return;
        for (int r = 0; r < S.rows(); ++r) S.at(r, j) = S.at(r, j) - q * S.at(r, t);
        for (int r = 0; r < V.rows(); ++r) V.at(r, j) = V.at(r, j) - q * V.at(r, t);
    }
    // row_t += row_i  (divisibility repair)
    void row_add(int t, int i) {
        for (int c = 0; c < S.cols(); ++c) S.at(t, c) = S.at(t, c) + S.at(i, c);
        for (int c = 0; c < U.cols(); ++c) U.at(t, c) = U.at(t, c) + U.at(i, c);
        for (int r = 0; r < Uinv.rows(); ++r) Uinv.at(r, i) = Uinv.at(r, i) - Uinv.at(r, t);
    }
    // row_t *= s (s nonzero rational), used only for monic normalization
    void row_scale(int t, const Rational& s) {
        for (int c = 0; c < S.cols(); ++c) S.at(t, c) = s * S.at(t, c);
        for (int c = 0; c < U.cols(); ++c) U.at(t, c) = s * U.at(t, c);
        const Rational inv = Rational(1) / s;
        for (int r = 0; r < Uinv.rows(); ++r) Uinv.at(r, t) = inv * Uinv.at(r, t);
    }
};

}  // namespace

SmithResult smith_normal_form(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquare("smith_normal_form: matrix not square");
    const int n = m.rows();
    SmithWork w{m, PolyMatrix::identity(n), PolyMatrix::identity(n), PolyMatrix::identity(n)};

    for (int t = 0; t < n; ++t) {
        for (;;) {
            // Pivot: lowest-degree nonzero entry in the trailing block,
            // (row, col)-lexicographic tie break.
            int pi = -1, pj = -1, pdeg = -1;
            for (int i = t; i < n; ++i)
                for (int j = t; j < n; ++j) {
                    const Poly& e = w.S.at(i, j);
                    if (e.is_zero()) continue;
                    if (pdeg < 0 || e.degree() < pdeg) {
                        pi = i;
                        pj = j;
                        pdeg = e.degree();
                    }
                }
            if (pi < 0) {
                t = n;  // trailing block is all zero; done
                break;
            }
            w.row_swap(t, pi);
            w.col_swap(t, pj);

            // Clear the pivot row and column by Euclidean steps.  If any
            // remainder survives it has lower degree than the pivot, so the
            // next pivot search strictly decreases the degree.
            bool dirty = false;
            for (int i = t + 1; i < n; ++i) {
                if (w.S.at(i, t).is_zero()) continue;
                auto dm = poly_divmod(w.S.at(i, t), w.S.at(t, t));
                w.row_axpy(i, t, dm.quot);
                if (!w.S.at(i, t).is_zero()) dirty = true;
            }
            for (int j = t + 1; j < n; ++j) {
                if (w.S.at(t, j).is_zero()) continue;
                auto dm = poly_divmod(w.S.at(t, j), w.S.at(t, t));
                w.col_axpy(j, t, dm.quot);
                if (!w.S.at(t, j).is_zero()) dirty = true;
            }
            if (dirty) continue;

            // Row and column are clear.  Enforce pivot | trailing submatrix
            // (needed for the ascending divisibility chain): fold an
            // offending row into the pivot row and reduce again.
            int bad_i = -1, bad_j = -1;
            for (int i = t + 1; i < n && bad_i < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (!divides(w.S.at(t, t), w.S.at(i, j))) {
                        bad_i = i;
                        bad_j = j;
                        break;
                    }
            if (bad_i < 0) break;
            (void)bad_j;
            w.row_add(t, bad_i);
        }
        if (t >= n) break;
    }

    // Monic normalization of the diagonal.
    for (int t = 0; t < n; ++t)
        if (!w.S.at(t, t).is_zero() && !w.S.at(t, t).is_monic())
            w.row_scale(t, Rational(1) / w.S.at(t, t).leading());

    // Exact postconditions: factorization, inverse pairing, unimodularity,
    // diagonality, divisibility chain.
    if (w.U * m * w.V != w.S) throw InternalError("smith: S != U*M*V");
    if (w.U * w.Uinv != PolyMatrix::identity(n)) throw InternalError("smith: U*Uinv != I");
    const Poly du = det(w.U), dv = det(w.V);
    if (du.degree() != 0 || dv.degree() != 0) throw InternalError("smith: transforms not unimodular");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !w.S.at(i, j).is_zero()) throw InternalError("smith: S not diagonal");
    for (int i = 0; i + 1 < n; ++i) {
        const Poly &a = w.S.at(i, i), &b = w.S.at(i + 1, i + 1);
        if (!a.is_zero() && !b.is_zero() && !divides(a, b))
            throw InternalError("smith: divisibility chain violated");
        if (a.is_zero() && !b.is_zero()) throw InternalError("smith: zero ordering violated");
    }
    return SmithResult{w.S, w.U, w.V, w.Uinv};
}

}  // namespace ectl
