#include "ectl/ensemble.hpp"

#include <algorithm>

#include "ectl/errors.hpp"

namespace ectl {

EnsembleSystem validate(const EnsembleSystem& sys) {
    EnsembleSystem out = sys;
    if (out.n <= 0 || out.m <= 0) throw MalformedShape("state and input dimensions must be positive");
    if (out.A.rows() != out.n || out.A.cols() != out.n)
        throw MalformedShape("A must be n x n");
    if (out.B.rows() != out.n || out.B.cols() != out.m)
        throw MalformedShape("B must be n x m");
    if (out.beta_lo >= out.beta_hi) throw EmptyInterval("parameter interval has no interior");
    for (int i = 0; i < out.n; ++i)
        for (int j = 0; j < out.n; ++j) {
            if (j >= i || out.A.at(i, j).is_zero()) continue;
            throw NonTriangular("A has a nonzero entry below the diagonal");
        }
    if (out.form == SystemForm::Diagonal)
        for (int i = 0; i < out.n; ++i)
            for (int j = 0; j < out.n; ++j)
                if (i != j && !out.A.at(i, j).is_zero())
                    throw NonTriangular("declared diagonal but has off-diagonal entries");
    out.eigenfunctions.clear();
    for (int i = 0; i < out.n; ++i) out.eigenfunctions.push_back(out.A.at(i, i));
    return out;
}

std::vector<Branch> compute_branches(const Poly& lambda, const Rational& beta_lo,
                                     const Rational& beta_hi) {
    const Poly d = lambda.derivative();
    if (d.is_zero()) throw ConstantEigenfunction("eigenvalue function is constant on K");

    std::vector<RealValue> cuts;
    cuts.emplace_back(beta_lo);
    for (const auto& iv : isolate_real_roots(d, beta_lo, beta_hi)) cuts.emplace_back(iv);
    cuts.emplace_back(beta_hi);

    std::vector<Branch> out;
    for (size_t s = 0; s + 1 < cuts.size(); ++s) {
        if (compare(cuts[s], cuts[s + 1]) >= 0) continue;  // critical point at an endpoint
        const Rational sample = rational_between(cuts[s], cuts[s + 1]);
        const int sgn = sign(d.eval(sample));
        if (sgn == 0) throw InternalError("derivative vanishes between isolated critical points");
        out.push_back({cuts[s], cuts[s + 1],
                       sgn > 0 ? Direction::Increasing : Direction::Decreasing});
    }
    return out;
}

SpectralRange spectral_range(const Poly& lambda, const Rational& beta_lo,
                             const Rational& beta_hi) {
    const auto branches = compute_branches(lambda, beta_lo, beta_hi);
    SpectralRange r{poly_value_at(lambda, RealValue(beta_lo)),
                    poly_value_at(lambda, RealValue(beta_lo))};
    auto consider = [&](const RealValue& x) {
        const RealValue v = poly_value_at(lambda, x);
        if (compare(v, r.lo) < 0) r.lo = v;
        if (compare(v, r.hi) > 0) r.hi = v;
    };
    for (const auto& b : branches) {
        consider(b.lo);
        consider(b.hi);
    }
    return r;
}

std::optional<SpectralRange> shared_spectrum(const Poly& li, const Poly& lj,
                                             const Rational& beta_lo, const Rational& beta_hi) {
    const SpectralRange ri = spectral_range(li, beta_lo, beta_hi);
    const SpectralRange rj = spectral_range(lj, beta_lo, beta_hi);
    SpectralRange s{compare(ri.lo, rj.lo) >= 0 ? ri.lo : rj.lo,
                    compare(ri.hi, rj.hi) <= 0 ? ri.hi : rj.hi};
    if (compare(s.lo, s.hi) > 0) return std::nullopt;
    return s;
}

PreimageSet preimages(const Poly& lambda, const RealValue& eta, const Rational& beta_lo,
                      const Rational& beta_hi) {
    const SpectralRange range = spectral_range(lambda, beta_lo, beta_hi);
    if (compare(eta, range.lo) < 0 || compare(eta, range.hi) > 0)
        throw OutOfRange("eta lies outside the spectral range");

    std::vector<IsolatingInterval> roots;
    if (eta.is_exact()) {
        roots = isolate_real_roots(lambda - Poly::from_coeffs({eta.exact()}), beta_lo, beta_hi);
    } else {
        // Roots of def_eta(lambda(beta)) include every preimage of eta (and
        // preimages of def_eta's other roots, filtered out below).
        const Poly h = eta.bracket().poly.compose(lambda);
        for (const auto& iv : isolate_real_roots(h, beta_lo, beta_hi)) {
            if (compare(poly_value_at(lambda, RealValue(iv)), eta) == 0) roots.push_back(iv);
        }
    }
    if (roots.empty()) throw InternalError("value inside the range has no preimage");

    PreimageSet out;
    const Poly d = lambda.derivative();
    for (const auto& iv : roots) {
        RealValue p(iv);
        out.junction.push_back(compare(poly_value_at(d, p), RealValue(Rational(0))) == 0);
        out.points.push_back(std::move(p));
    }
    return out;
}

bool SpectralPoint::all_rational() const {
    for (const auto& v : eta)
        if (!v.is_exact()) return false;
    for (const auto& ps : pre)
        for (const auto& p : ps.points)
            if (!p.is_exact()) return false;
    return true;
}

bool SpectralPoint::at_junction() const {
    for (const auto& ps : pre)
        for (bool j : ps.junction)
            if (j) return true;
    return false;
}

SpectralPoint spectral_point(const EnsembleSystem& sys, std::vector<RealValue> eta) {
    if (static_cast<int>(eta.size()) != sys.n)
        throw MalformedShape("eta must have one coordinate per state dimension");
    SpectralPoint pt;
    pt.eta = std::move(eta);
    for (int i = 0; i < sys.n; ++i) {
        pt.pre.push_back(preimages(sys.eigenfunctions[i], pt.eta[i], sys.beta_lo, sys.beta_hi));
        pt.kappas.push_back(static_cast<int>(pt.pre.back().points.size()));
        pt.N += pt.kappas.back();
    }
    return pt;
}

Eccm eccm(const EnsembleSystem& sys, int i, const RealValue& eta_i, const Rational& width) {
    if (i < 0 || i >= sys.n) throw MalformedShape("eigenvalue index out of range");
    const PreimageSet ps = preimages(sys.eigenfunctions[i], eta_i, sys.beta_lo, sys.beta_hi);
    Eccm out;
    out.index = i;
    for (const auto& p : ps.points) {
        std::vector<RealValue> row;
        for (int j = 0; j < sys.m; ++j) {
            RealValue v = poly_value_at(sys.B.at(i, j), p);
            v.refine_below(width);
            row.push_back(std::move(v));
        }
        out.D.push_back(std::move(row));
    }
    return out;
}

ReparamSystem reparameterized_system(const EnsembleSystem& sys, const SpectralPoint& pt,
                                     const Rational& width) {
    ReparamSystem out;
    out.m = sys.m;
    for (int i = 0; i < sys.n; ++i) {
        for (const auto& p : pt.pre[i].points) {
            out.adiag.push_back(pt.eta[i]);
            std::vector<RealValue> row;
            for (int j = 0; j < sys.m; ++j) {
                RealValue v = poly_value_at(sys.B.at(i, j), p);
                v.refine_below(width);
                row.push_back(std::move(v));
            }
            out.D.push_back(std::move(row));
        }
    }
    out.N = static_cast<int>(out.adiag.size());
    return out;
}

bool certify_full_row_rank(IntervalMatrix m) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<bool> used(rows, false);
    for (int step = 0; step < rows; ++step) {
        // Pivot: certified-nonzero entry of largest mignitude among unused rows.
        int pr = -1, pc = -1;
        Rational best(-1);
        for (int i = 0; i < rows; ++i) {
            if (used[i]) continue;
            for (int j = 0; j < cols; ++j) {
                const auto s = m.at(i, j).certified_sign();
                if (!s || *s == 0) continue;
                const Rational mig =
                    std::min(abs(m.at(i, j).lo()), abs(m.at(i, j).hi()));
                if (mig > best) {
                    best = mig;
                    pr = i;
                    pc = j;
                }
            }
        }
        if (pr < 0) return false;
        used[pr] = true;
        for (int i = 0; i < rows; ++i) {
            if (used[i]) continue;
            const RatInterval f = m.at(i, pc) / m.at(pr, pc);
            for (int j = 0; j < cols; ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(pr, j);
        }
    }
    return true;
}

}  // namespace ectl
