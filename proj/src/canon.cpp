#include "ectl/canon.hpp"

#include <functional>
#include <numeric>

#include "ectl/errors.hpp"

namespace ectl {

namespace {

// p(A) x by Horner, one matrix-vector product per coefficient.
QVector apply_poly(const Poly& p, const QMatrix& a, const QVector& x) {
    QVector res(x.size(), Rational(0));
    for (int s = p.degree(); s >= 0; --s) {
        res = a.apply(res);
        const Rational& c = p.coeff(s);
        if (c != 0)
            for (size_t i = 0; i < x.size(); ++i) res[i] += c * x[i];
    }
    return res;
}

bool is_zero_vec(const QVector& v) {
    for (const auto& e : v)
        if (e != 0) return false;
    return true;
}

// Row-echelon accumulator for exact incremental span/membership tests.
class IncrementalSpan {
  public:
    // Returns true and absorbs v when v is independent of the current span.
    bool add(QVector v) {
        reduce(v);
        int p = pivot_of(v);
        if (p < 0) return false;
        const Rational inv = Rational(1) / v[p];
        for (auto& e : v) e *= inv;
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }
    bool contains(QVector v) const {
        reduce(v);
        return pivot_of(v) < 0;
    }
    int dim() const { return static_cast<int>(rows_.size()); }

  private:
    void reduce(QVector& v) const {
        for (size_t r = 0; r < rows_.size(); ++r) {
            const Rational& c = v[pivots_[r]];
            if (c == 0) continue;
            const Rational f = c;
            for (size_t j = 0; j < v.size(); ++j) v[j] -= f * rows_[r][j];
        }
    }
    static int pivot_of(const QVector& v) {
        for (size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) return static_cast<int>(j);
        return -1;
    }
    std::vector<QVector> rows_;
    std::vector<int> pivots_;
};

// Degree of the annihilator of [w] in the quotient by the A-invariant span:
// the smallest t with A^t w inside span + <w, ..., A^{t-1} w>.  Stops early
// once t exceeds `cap` (the caller only accepts an exact match).
int quotient_ann_degree(const IncrementalSpan& span, const QMatrix& a, QVector w, int cap) {
    IncrementalSpan s = span;
    int t = 0;
    while (s.add(w)) {
        ++t;
        if (t > cap) return t;
        w = a.apply(w);
    }
    return t;
}

// Deterministic candidate order for generator coefficients c (w = B c):
// unit vectors left to right, then integer tuples by geometrically widening
// height bound (2, 4, 8, 16), within a bound by ascending grade sum(|c_i|),
// within a grade lexicographically with per-position value order
// 1, -1, 2, -2, ..., 0.  Sign-flipped duplicates (first nonzero negative) and
// scalar multiples (content > 1) are skipped.  `accept` returns true to stop.
bool enumerate_candidates(int m, const std::function<bool(const QVector&)>& accept) {
    for (int j = 0; j < m; ++j) {
        QVector c(m, Rational(0));
        c[j] = 1;
        if (accept(c)) return true;
    }
    std::vector<int> c(m, 0);
    int prev_h = 0;  // the unit pass covers only grade-1 tuples, so skip nothing at h = 2
    for (int h : {2, 4, 8, 16}) {
        for (int g = 2; g <= h * m; ++g) {
            std::function<bool(int, int, bool, int)> rec = [&](int pos, int rem, bool seen_nonzero,
                                                               int maxabs) -> bool {
                if (pos == m) {
                    if (rem != 0 || maxabs <= prev_h) return false;
                    int content = 0;
                    for (int e : c) content = std::gcd(content, std::abs(e));
                    if (content > 1) return false;
                    QVector cq(m);
                    for (int j = 0; j < m; ++j) cq[j] = c[j];
                    return accept(cq);
                }
                const int vmax = std::min(h, rem);
                for (int v = 1; v <= vmax; ++v) {
                    c[pos] = v;
                    if (rec(pos + 1, rem - v, true, std::max(maxabs, v))) return true;
                    if (seen_nonzero) {
                        c[pos] = -v;
                        if (rec(pos + 1, rem - v, true, std::max(maxabs, v))) return true;
                    }
                }
                c[pos] = 0;
                if (rec(pos + 1, rem, seen_nonzero, maxabs)) return true;
                return false;
            };
            if (rec(0, g, false, 0)) return true;
        }
        prev_h = h;
    }
    return false;
}

}  // namespace

InvariantFactorData invariant_factors(const QMatrix& a) {
    if (a.rows() != a.cols()) throw NotSquare("invariant_factors requires a square matrix");
    const SmithResult snf = smith_normal_form(PolyMatrix::characteristic_pencil(a));
    InvariantFactorData out;
    for (int i = a.rows() - 1; i >= 0; --i) {
        const Poly& d = snf.S.at(i, i);
        if (d.degree() >= 1) {
            out.factors.push_back(d);
            out.degrees.push_back(d.degree());
        }
    }
    // Exact postconditions: descending divisibility, product = charpoly,
    // a_1 annihilates A.
    Poly prod = Poly::from_coeffs({1});
    for (size_t i = 0; i < out.factors.size(); ++i) {
        prod = prod * out.factors[i];
        if (i + 1 < out.factors.size() && !divides(out.factors[i + 1], out.factors[i]))
            throw InternalError("invariant_factors: divisibility chain broken");
    }
    if (prod != charpoly(a)) throw InternalError("invariant_factors: product is not charpoly");
    if (!out.factors.empty() && !eval_poly_at_matrix(out.factors.front(), a).is_zero())
        throw InternalError("invariant_factors: minimal polynomial does not annihilate");
    return out;
}

int min_input_count(const QMatrix& a) {
    return static_cast<int>(invariant_factors(a).factors.size());
}

QMatrix companion(const Poly& a) {
    if (a.is_zero() || !a.is_monic()) throw NotMonic("companion requires a monic polynomial");
    const int n = a.degree();
    if (n < 1) throw DegreeZero("companion requires degree >= 1");
    QMatrix c(n, n);
    for (int i = 0; i + 1 < n; ++i) c.at(i + 1, i) = 1;
    for (int i = 0; i < n; ++i) c.at(i, n - 1) = -a.coeff(i);
    return c;
}

namespace {

QMatrix block_diag_companions(const std::vector<Poly>& factors, int n) {
    QMatrix c(n, n);
    int off = 0;
    for (const Poly& a : factors) {
        const QMatrix blk = companion(a);
        for (int i = 0; i < blk.rows(); ++i)
            for (int j = 0; j < blk.cols(); ++j) c.at(off + i, off + j) = blk.at(i, j);
        off += blk.rows();
    }
    return c;
}

QMatrix chains_matrix(const QMatrix& a, const std::vector<QVector>& generators,
                      const std::vector<int>& degrees) {
    const int n = a.rows();
    QMatrix p(n, n);
    int col = 0;
    for (size_t i = 0; i < generators.size(); ++i) {
        QVector v = generators[i];
        for (int s = 0; s < degrees[i]; ++s) {
            p.set_col(col++, v);
            v = a.apply(v);
        }
    }
    if (col != n) throw InternalError("cyclic chains do not fill the space");
    return p;
}

}  // namespace

RcfResult rcf(const QMatrix& a) {
    if (a.rows() != a.cols()) throw NotSquare("rcf requires a square matrix");
    const int n = a.rows();
    const SmithResult snf = smith_normal_form(PolyMatrix::characteristic_pencil(a));

    InvariantFactorData ifd;
    std::vector<QVector> generators;
    // The cokernel of xI - A is Q^n with x acting as A; the row transform U
    // maps it onto the diagonal module, so column i of U^{-1} names the
    // generator of the cyclic summand for diagonal entry i: evaluate its
    // polynomial entries on A against the standard basis.
    for (int i = n - 1; i >= 0; --i) {
        const Poly& d = snf.S.at(i, i);
        if (d.degree() < 1) continue;
        ifd.factors.push_back(d);
        ifd.degrees.push_back(d.degree());
        QVector v(n, Rational(0));
        for (int j = 0; j < n; ++j) {
            const Poly& p = snf.Uinv.at(j, i);
            if (p.is_zero()) continue;
            QVector ej(n, Rational(0));
            ej[j] = 1;
            const QVector contrib = apply_poly(p, a, ej);
            for (int r = 0; r < n; ++r) v[r] += contrib[r];
        }
        generators.push_back(std::move(v));
    }

    RcfResult out;
    out.factors = ifd;
    out.P = chains_matrix(a, generators, ifd.degrees);
    out.C = block_diag_companions(ifd.factors, n);
    if (a * out.P != out.P * out.C) throw InternalError("rcf: similarity check failed");
    if (det(out.P) == 0) throw InternalError("rcf: transformation not invertible");
    return out;
}

QMatrix controllability_matrix(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != a.cols()) throw DimensionMismatch("controllability matrix: A not square");
    if (b.rows() != a.rows()) throw DimensionMismatch("controllability matrix: B row count");
    const int n = a.rows(), m = b.cols();
    QMatrix w(n, n * m);
    QMatrix blk = b;
    for (int p = 0; p < n; ++p) {
        for (int j = 0; j < m; ++j) w.set_col(p * m + j, blk.col(j));
        blk = a * blk;
    }
    return w;
}

bool is_controllable(const QMatrix& a, const QMatrix& b) {
    return rank(controllability_matrix(a, b)) == a.rows();
}

CtrlCanonResult ctrl_canonical_form(const QMatrix& a, const QMatrix& b) {
    if (!is_controllable(a, b)) throw NotControllable("Kalman rank test failed");
    const int n = a.rows(), m = b.cols();
    const InvariantFactorData ifd = invariant_factors(a);
    const int k = static_cast<int>(ifd.factors.size());
    if (m < k) throw InternalError("controllable pair with fewer inputs than invariant factors");

    IncrementalSpan span;         // V_{i-1} as an echelon basis
    std::vector<QVector> chains;  // same space, chain column order
    std::vector<QVector> generators;

    for (int i = 0; i < k; ++i) {
        const Poly& ai = ifd.factors[i];
        const int ni = ifd.degrees[i];
        QVector w;
        const bool found = enumerate_candidates(m, [&](const QVector& c) {
            QVector cand = b.apply(c);
            if (quotient_ann_degree(span, a, cand, ni) != ni) return false;
            w = std::move(cand);
            return true;
        });
        if (!found)
            throw SearchExhausted("no generator for invariant factor " + std::to_string(i + 1) +
                                  " within the height bound");

        // Correct w into the invariant complement: a_i(A)w lies in V_{i-1};
        // its chain coordinates split into polynomials p_j that a_i divides
        // (V_{i-1} realizes the leading invariant factors, hence is pure), so
        // v = w - sum h_j(A) v_j with h_j = p_j / a_i satisfies a_i(A)v = 0.
        QVector v = w;
        if (i > 0) {
            const QVector rhs = apply_poly(ai, a, w);
            if (!is_zero_vec(rhs)) {
                QMatrix accm(n, static_cast<int>(chains.size()));
                for (size_t j = 0; j < chains.size(); ++j)
                    accm.set_col(static_cast<int>(j), chains[j]);
                const auto coords = solve(accm, rhs);
                if (!coords) throw InternalError("conductor image escaped the partial span");
                int off = 0;
                for (int j = 0; j < i; ++j) {
                    std::vector<Rational> pj(coords->begin() + off,
                                             coords->begin() + off + ifd.degrees[j]);
                    const auto dm = poly_divmod(Poly::from_coeffs(pj), ai);
                    if (!dm.rem.is_zero())
                        throw InternalError("chain coordinates not divisible by the conductor");
                    for (int s = 0; s <= dm.quot.degree(); ++s) {
                        const Rational& h = dm.quot.coeff(s);
                        if (h == 0) continue;
                        const QVector& base = chains[off + s];
                        for (int r = 0; r < n; ++r) v[r] -= h * base[r];
                    }
                    off += ifd.degrees[j];
                }
            }
        } else if (!is_zero_vec(apply_poly(ai, a, w))) {
            throw InternalError("minimal polynomial fails to annihilate the first generator");
        }

        if (!is_zero_vec(apply_poly(ai, a, v)))
            throw InternalError("corrected generator not annihilated by its factor");
        QVector chain = v;
        for (int s = 0; s < ni; ++s) {
            if (!span.add(chain)) throw InternalError("cyclic chain collapsed early");
            chains.push_back(chain);
            chain = a.apply(chain);
        }
        generators.push_back(std::move(v));
    }

    CtrlCanonResult out;
    out.factors = ifd;
    out.generators = generators;
    out.P = chains_matrix(a, generators, ifd.degrees);
    out.C = block_diag_companions(ifd.factors, n);
    if (a * out.P != out.P * out.C)
        throw InternalError("ctrl_canonical_form: similarity check failed");
    out.Bbar = inverse(out.P) * b;

    for (int i = 0; i < k; ++i) {
        if (i + 1 < k && ifd.factors[i + 1] != ifd.factors[i] &&
            is_zero_vec(apply_poly(ifd.factors[i + 1], a, generators[i])))
            throw InternalError("generator annihilated by the next invariant factor");
    }
    return out;
}

std::vector<int> bbar_column_groups(const QMatrix& bbar, const std::vector<int>& block_sizes) {
    std::vector<int> block_of_row;
    for (size_t i = 0; i < block_sizes.size(); ++i)
        for (int s = 0; s < block_sizes[i]; ++s) block_of_row.push_back(static_cast<int>(i) + 1);
    if (static_cast<int>(block_of_row.size()) != bbar.rows())
        throw DimensionMismatch("bbar_column_groups: block sizes do not cover the rows");
    std::vector<int> groups(bbar.cols());
    int g = 1;
    for (int j = 0; j < bbar.cols(); ++j) {
        int deepest = 1;
        for (int i = 0; i < bbar.rows(); ++i)
            if (bbar.at(i, j) != 0) deepest = block_of_row[i];
        g = std::max(g, deepest);
        groups[j] = g;
    }
    return groups;
}

}  // namespace ectl
