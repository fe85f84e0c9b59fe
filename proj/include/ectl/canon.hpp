#pragma once

#include <vector>

#include "ectl/matrix.hpp"
#include "ectl/polymatrix.hpp"

namespace ectl {

// Invariant factors a_1, ..., a_k of a square matrix in descending
// divisibility order: a_{i+1} | a_i, a_1 = minimal polynomial, and the
// product of all factors is the characteristic polynomial.
struct InvariantFactorData {
    std::vector<Poly> factors;
    std::vector<int> degrees;
};

// NotSquare.  Postconditions (divisibility chain, product = charpoly,
// a_1(A) = 0) are verified exactly before returning.
InvariantFactorData invariant_factors(const QMatrix& a);

// Number of invariant factors: the minimum number of inputs any controllable
// pair (A, B) must have.  NotSquare.
int min_input_count(const QMatrix& a);

// Companion matrix of a monic polynomial: ones on the subdiagonal, negated
// coefficients in the last column.  NotMonic, DegreeZero.
QMatrix companion(const Poly& a);

struct RcfResult {
    QMatrix C;  // block diagonal of companion blocks, one per invariant factor
    QMatrix P;  // invertible, C = P^{-1} A P exactly
    InvariantFactorData factors;
};

// Rational canonical form with transformation basis.  Cyclic generators are
// read off the inverse row transform of the Smith form of xI - A, making the
// output deterministic.  NotSquare.
RcfResult rcf(const QMatrix& a);

// [B | AB | ... | A^{n-1}B].  DimensionMismatch (also for non-square A).
QMatrix controllability_matrix(const QMatrix& a, const QMatrix& b);

// Kalman rank criterion, exact.  DimensionMismatch.
bool is_controllable(const QMatrix& a, const QMatrix& b);

struct CtrlCanonResult {
    QMatrix C;     // rational canonical form of A
    QMatrix Bbar;  // P^{-1} B, block upper triangular against the blocks of C
    QMatrix P;     // columns v_1, Av_1, ..., A^{n_1-1}v_1, ..., v_k, ...
    std::vector<QVector> generators;  // v_1, ..., v_k
    InvariantFactorData factors;
};

// Controllability canonical form: deterministic search for input-space
// generators v_i = B c_i (corrected into the invariant-factor complement)
// whose cyclic chains assemble an exact similarity to the rational canonical
// form.  NotControllable when the Kalman test fails; SearchExhausted when no
// integer combination within the documented height bound works.
CtrlCanonResult ctrl_canonical_form(const QMatrix& a, const QMatrix& b);

// Column group of each column of Bbar against row blocks of sizes n_i: the
// smallest nondecreasing sequence dominating each column's deepest nonzero
// block row (1-based; columns of a zero Bbar get group 1).
std::vector<int> bbar_column_groups(const QMatrix& bbar, const std::vector<int>& block_sizes);

}  // namespace ectl
