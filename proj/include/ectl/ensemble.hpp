#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ectl/algebraic.hpp"
#include "ectl/matrix.hpp"
#include "ectl/polymatrix.hpp"

namespace ectl {

enum class SystemForm { Diagonal, UpperTriangular };

// Parameterized pair (A(beta), B(beta)) on a compact interval K.  Only
// diagonal and upper-triangular A are admitted, so the diagonal entries are
// the eigenvalue functions.
struct EnsembleSystem {
    int n = 0, m = 0;
    std::string param_name = "beta";
    Rational beta_lo, beta_hi;
    PolyMatrix A, B;
    SystemForm form = SystemForm::Diagonal;
    std::vector<Poly> eigenfunctions;  // diagonal of A, filled by validate
};

// Checks the structural invariants and extracts the eigenvalue functions.
// MalformedShape, NonTriangular, EmptyInterval.
EnsembleSystem validate(const EnsembleSystem& sys);

enum class Direction { Increasing, Decreasing };

// Maximal subinterval of K on which the eigenvalue function is monotone;
// endpoints are K's ends or critical points of lambda.
struct Branch {
    RealValue lo, hi;
    Direction direction;
};

// Splits K at the isolated real roots of lambda'.  ConstantEigenfunction
// when lambda' is identically zero.
std::vector<Branch> compute_branches(const Poly& lambda, const Rational& beta_lo,
                                     const Rational& beta_hi);

struct SpectralRange {
    RealValue lo, hi;
};

// [min, max] of lambda over K, attained at branch endpoints.
SpectralRange spectral_range(const Poly& lambda, const Rational& beta_lo,
                             const Rational& beta_hi);

// Intersection of the two spectral ranges; nullopt when disjoint.
std::optional<SpectralRange> shared_spectrum(const Poly& li, const Poly& lj,
                                             const Rational& beta_lo, const Rational& beta_hi);

// lambda^{-1}(eta) inside K, ascending.  junction[j] marks a preimage where
// lambda' vanishes too (a branch junction: the root is multiple and counted
// once).  OutOfRange when eta is outside lambda(K).
struct PreimageSet {
    std::vector<RealValue> points;
    std::vector<bool> junction;
};
PreimageSet preimages(const Poly& lambda, const RealValue& eta, const Rational& beta_lo,
                      const Rational& beta_hi);

// A tuple eta in lambda_1(K) x ... x lambda_n(K) with its preimage data.
struct SpectralPoint {
    std::vector<RealValue> eta;
    std::vector<PreimageSet> pre;
    std::vector<int> kappas;
    int N = 0;

    bool all_rational() const;
    bool at_junction() const;
};
SpectralPoint spectral_point(const EnsembleSystem& sys, std::vector<RealValue> eta);

// Ensemble controllability criterion matrix for axis i: row j is the i-th
// row of B evaluated at the j-th preimage of eta_i (ascending beta order).
// Interval-backed entries are refined below `width`.
struct Eccm {
    int index = 0;
    std::vector<std::vector<RealValue>> D;
};
Eccm eccm(const EnsembleSystem& sys, int i, const RealValue& eta_i, const Rational& width);

// Reparameterized pair at eta: Adiag = diag(eta_i repeated kappa_i times),
// D = stacked ECCM blocks, N = sum kappa_i.
struct ReparamSystem {
    std::vector<RealValue> adiag;
    std::vector<std::vector<RealValue>> D;
    int N = 0, m = 0;
};
ReparamSystem reparameterized_system(const EnsembleSystem& sys, const SpectralPoint& pt,
                                     const Rational& width);

// Dense matrix of rational enclosures for certified numerical rank.
class IntervalMatrix {
  public:
    IntervalMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    RatInterval& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const RatInterval& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  private:
    int rows_, cols_;
    std::vector<RatInterval> a_;
};

// True when full row rank is certified by interval Gaussian elimination with
// certified-sign pivots.  False means "not certified at this width" — never
// a proof of deficiency.
bool certify_full_row_rank(IntervalMatrix m);

}  // namespace ectl
