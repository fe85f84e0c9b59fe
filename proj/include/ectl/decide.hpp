#pragma once

#include <optional>
#include <utility>

#include "ectl/canon.hpp"
#include "ectl/ensemble.hpp"
#include "ectl/ratfun.hpp"

namespace ectl {

enum class Verdict { Controllable, Uncontrollable, Indeterminate };
std::string to_string(Verdict v);

struct DecisionConfig {
    int grid_density = 17;  // rational lattice points per spectral axis
    int eval_bits = 64;     // first interval refinement width 2^-bits
    int max_bits = 256;     // refinement ceiling before Indeterminate
};

// Necessary-condition report.  The single-input rules only gate the verdict
// when m = 1; they are still reported for every system.
struct NecessaryChecks {
    std::vector<bool> injective;                // per eigenvalue function
    std::vector<std::pair<int, int>> overlaps;  // pairs with shared spectrum
    std::vector<int> constant_eigenfunctions;
    int max_k_critical = 0;  // max block count over the critical tuples
    bool single_input_ok = true;
    bool multiplicity_ok = true;  // m >= max_k_critical
    bool passed = true;
};
NecessaryChecks necessary_checks(const EnsembleSystem& sys);

struct Witness {
    enum class Kind { RankDeficient, MultiplicityExceedsInputs, ConstantEigenfunction };
    Kind kind = Kind::RankDeficient;
    SpectralPoint point;          // empty for ConstantEigenfunction
    int eigen_index = -1;         // ConstantEigenfunction only
    std::optional<QMatrix> ctrl;  // exact controllability matrix when rational
    int rank = -1;                // its exact rank (re-verified independently)
    int required = -1;            // N
};
std::string to_string(Witness::Kind k);

struct CanonicalSample {
    std::vector<Rational> eta;
    QMatrix C, Bbar;
    int k = 0;
    std::vector<int> block_sizes;
};

struct ControllabilityReport {
    Verdict verdict = Verdict::Indeterminate;
    std::optional<Witness> witness;
    NecessaryChecks checks;
    long tested_points = 0;
    std::vector<CanonicalSample> canonical_samples;
    std::vector<std::vector<RealValue>> indeterminate_points;
    std::vector<std::vector<RealValue>> junction_points;  // eta at a branch junction
    DecisionConfig config;
};

// Certificate set: every tuple of per-axis special values (branch-image
// endpoints and shared-spectrum endpoints — the only places where preimage
// counts or value coincidences can change for polynomial data), plus a
// rational lattice.
struct CertificateSet {
    std::vector<std::vector<RealValue>> critical;
    std::vector<std::vector<Rational>> grid;
    int density = 0;
};
CertificateSet build_certificate_set(const EnsembleSystem& sys, int density);

// Companion-block count of the reparameterized diagonal: the maximum
// multiplicity in the multiset {eta_i repeated kappa_i times}.
int k_of_eta(const SpectralPoint& pt);

// The decision pipeline: constant-eigenfunction fast path, necessary checks,
// then exact/certified Kalman tests over the certificate set and grid.
// A passing verdict is certified at the tested set (semi-decision).
ControllabilityReport decide_uec(const EnsembleSystem& sys, const DecisionConfig& cfg = {});

// Theorem-2 style symbolic canonical form for m = 1; bbar is always e_1.
struct SingleInputCanonical {
    RatFunMatrix C;  // P(beta)^{-1} A(beta) P(beta)
    PolyMatrix P;    // [b | Ab | ... | A^{n-1}b]
    Poly detP;       // nonvanishing on K (checked)
};
// NotSingleInput; PointwiseUncontrollable when det P(beta) has a root in K.
SingleInputCanonical single_input_canonical(const EnsembleSystem& sys);

struct FunctionalCanonicalSample {
    std::vector<Rational> eta;
    QMatrix Adiag, D;  // reparameterized pair at eta
    QMatrix C, Bbar, P;
    int k = 0;
    std::vector<int> block_sizes;
};
// Exact ensemble canonical form at a rational spectral point.  OutOfRange,
// NonRationalData (irrational preimages), NotControllableAtEta.
FunctionalCanonicalSample ensemble_canonical_form(const EnsembleSystem& sys,
                                                  const std::vector<Rational>& eta);

}  // namespace ectl
