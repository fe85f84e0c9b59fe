#include "ectl/decide.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

#include "ectl/errors.hpp"

namespace ectl {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Controllable: return "Controllable";
        case Verdict::Uncontrollable: return "Uncontrollable";
        case Verdict::Indeterminate: return "Indeterminate";
    }
    throw InternalError("unknown verdict");
}

std::string to_string(Witness::Kind k) {
    switch (k) {
        case Witness::Kind::RankDeficient: return "RankDeficient";
        case Witness::Kind::MultiplicityExceedsInputs: return "MultiplicityExceedsInputs";
        case Witness::Kind::ConstantEigenfunction: return "ConstantEigenfunction";
    }
    throw InternalError("unknown witness kind");
}

namespace {

Rational width_of_bits(int bits) { return Rational(Integer(1), Integer(1) << bits); }

void insert_value(std::vector<RealValue>& vals, RealValue v) {
    for (const auto& e : vals)
        if (compare(e, v) == 0) return;
    vals.push_back(std::move(v));
}

// Per-axis special values: branch-image endpoints plus shared-spectrum
// endpoints — the only values where kappa_i or coincidence multiplicity can
// change for polynomial eigenvalue functions.
std::vector<std::vector<RealValue>> axis_critical_values(const EnsembleSystem& sys) {
    std::vector<std::vector<RealValue>> vals(sys.n);
    for (int i = 0; i < sys.n; ++i) {
        const Poly& li = sys.eigenfunctions[i];
        for (const auto& b : compute_branches(li, sys.beta_lo, sys.beta_hi)) {
            insert_value(vals[i], poly_value_at(li, b.lo));
            insert_value(vals[i], poly_value_at(li, b.hi));
        }
        for (int j = 0; j < sys.n; ++j) {
            if (j == i) continue;
            const auto s = shared_spectrum(li, sys.eigenfunctions[j], sys.beta_lo, sys.beta_hi);
            if (s) {
                insert_value(vals[i], s->lo);
                insert_value(vals[i], s->hi);
            }
        }
        std::sort(vals[i].begin(), vals[i].end(),
                  [](const RealValue& a, const RealValue& b) { return compare(a, b) < 0; });
    }
    return vals;
}

template <typename T, typename F>
void cartesian(const std::vector<std::vector<T>>& axes, const F& visit) {
    std::vector<T> tuple;
    std::function<bool(size_t)> rec = [&](size_t axis) -> bool {
        if (axis == axes.size()) return visit(tuple);
        for (const auto& v : axes[axis]) {
            tuple.push_back(v);
            const bool go_on = rec(axis + 1);
            tuple.pop_back();
            if (!go_on) return false;
        }
        return true;
    };
    rec(0);
}

void exact_reparam(const EnsembleSystem& sys, const SpectralPoint& pt, QMatrix& adiag,
                   QMatrix& d) {
    const ReparamSystem rs = reparameterized_system(sys, pt, Rational(1));
    adiag = QMatrix(rs.N, rs.N);
    d = QMatrix(rs.N, rs.m);
    for (int r = 0; r < rs.N; ++r) {
        adiag.at(r, r) = rs.adiag[r].exact();
        for (int j = 0; j < rs.m; ++j) d.at(r, j) = rs.D[r][j].exact();
    }
}

// Interval certification of the Kalman test with refinement up to max_bits.
bool certify_point(const EnsembleSystem& sys, const SpectralPoint& pt,
                   const DecisionConfig& cfg) {
    ReparamSystem rs = reparameterized_system(sys, pt, width_of_bits(cfg.eval_bits));
    for (int bits = cfg.eval_bits;; bits *= 2) {
        if (bits > cfg.eval_bits) {
            const Rational w = width_of_bits(bits);
            for (auto& v : rs.adiag) v.refine_below(w);
            for (auto& row : rs.D)
                for (auto& v : row) v.refine_below(w);
        }
        IntervalMatrix w(rs.N, rs.N * rs.m);
        for (int r = 0; r < rs.N; ++r) {
            const RatInterval ar = rs.adiag[r].enclosure();
            for (int j = 0; j < rs.m; ++j) {
                w.at(r, j) = rs.D[r][j].enclosure();
                for (int p = 1; p < rs.N; ++p)
                    w.at(r, p * rs.m + j) = ar * w.at(r, (p - 1) * rs.m + j);
            }
        }
        if (certify_full_row_rank(w)) return true;
        if (bits >= cfg.max_bits) return false;
    }
}

void fill_uncontrollable(const EnsembleSystem& sys, ControllabilityReport& rep,
                         SpectralPoint pt, Witness::Kind kind) {
    Witness w;
    w.kind = kind;
    w.required = pt.N;
    if (pt.all_rational()) {
        QMatrix adiag, d;
        exact_reparam(sys, pt, adiag, d);
        const QMatrix ctrl = controllability_matrix(adiag, d);
        const int r = rank(ctrl);
        if (rank_bareiss(ctrl) != r)
            throw InternalError("independent rank verifications disagree");
        if (r >= pt.N) throw InternalError("witness re-verification found full rank");
        w.ctrl = ctrl;
        w.rank = r;
    }
    w.point = std::move(pt);
    rep.witness = std::move(w);
    rep.verdict = Verdict::Uncontrollable;
}

// Image interval of a branch under its (monotone) eigenvalue function.
std::pair<RealValue, RealValue> branch_image(const Poly& lambda, const Branch& b) {
    RealValue u = poly_value_at(lambda, b.lo);
    RealValue v = poly_value_at(lambda, b.hi);
    if (compare(u, v) > 0) std::swap(u, v);
    return {std::move(u), std::move(v)};
}

// Lemma-2 failure witness tuple for m = 1: an eta with a forced repetition.
std::vector<RealValue> lemma2_witness_tuple(const EnsembleSystem& sys,
                                            const NecessaryChecks& checks) {
    std::vector<RealValue> eta;
    for (int i = 0; i < sys.n; ++i)
        eta.push_back(spectral_range(sys.eigenfunctions[i], sys.beta_lo, sys.beta_hi).lo);

    for (int i = 0; i < sys.n; ++i) {
        if (checks.injective[i]) continue;
        // Two adjacent branches of opposite direction: a value strictly
        // inside both images has two distinct preimages.
        const auto branches = compute_branches(sys.eigenfunctions[i], sys.beta_lo, sys.beta_hi);
        for (size_t s = 0; s + 1 < branches.size(); ++s) {
            if (branches[s].direction == branches[s + 1].direction) continue;
            const auto im1 = branch_image(sys.eigenfunctions[i], branches[s]);
            const auto im2 = branch_image(sys.eigenfunctions[i], branches[s + 1]);
            const RealValue& lo =
                compare(im1.first, im2.first) >= 0 ? im1.first : im2.first;
            const RealValue& hi =
                compare(im1.second, im2.second) <= 0 ? im1.second : im2.second;
            eta[i] = RealValue(rational_between(lo, hi));
            return eta;
        }
        throw InternalError("non-injective eigenfunction without a direction change");
    }

    if (checks.overlaps.empty())
        throw InternalError("single-input failure without overlap or injectivity defect");
    const auto [i, j] = checks.overlaps.front();
    const auto s = shared_spectrum(sys.eigenfunctions[i], sys.eigenfunctions[j], sys.beta_lo,
                                   sys.beta_hi);
    if (!s) throw InternalError("recorded overlap disappeared");
    const RealValue v = compare(s->lo, s->hi) == 0
                            ? s->lo
                            : RealValue(rational_between(s->lo, s->hi));
    eta[i] = v;
    eta[j] = v;
    return eta;
}

}  // namespace

int k_of_eta(const SpectralPoint& pt) {
    std::vector<std::pair<const RealValue*, int>> groups;
    for (size_t i = 0; i < pt.eta.size(); ++i) {
        bool merged = false;
        for (auto& g : groups) {
            if (compare(*g.first, pt.eta[i]) == 0) {
                g.second += pt.kappas[i];
                merged = true;
                break;
            }
        }
        if (!merged) groups.emplace_back(&pt.eta[i], pt.kappas[i]);
    }
    int k = 0;
    for (const auto& g : groups) k = std::max(k, g.second);
    return k;
}

NecessaryChecks necessary_checks(const EnsembleSystem& sys) {
    NecessaryChecks nc;
    nc.injective.assign(sys.n, true);
    std::vector<bool> constant(sys.n, false);
    for (int i = 0; i < sys.n; ++i) {
        std::vector<Branch> branches;
        try {
            branches = compute_branches(sys.eigenfunctions[i], sys.beta_lo, sys.beta_hi);
        } catch (const ConstantEigenfunction&) {
            nc.constant_eigenfunctions.push_back(i);
            nc.injective[i] = false;
            constant[i] = true;
            continue;
        }
        for (size_t s = 1; s < branches.size(); ++s)
            if (branches[s].direction != branches[0].direction) nc.injective[i] = false;
    }
    for (int i = 0; i < sys.n; ++i)
        for (int j = i + 1; j < sys.n; ++j) {
            if (constant[i] || constant[j]) continue;
            if (shared_spectrum(sys.eigenfunctions[i], sys.eigenfunctions[j], sys.beta_lo,
                                sys.beta_hi))
                nc.overlaps.emplace_back(i, j);
        }

    if (nc.constant_eigenfunctions.empty()) {
        const auto axes = axis_critical_values(sys);
        cartesian<RealValue>(axes, [&](const std::vector<RealValue>& tuple) {
            nc.max_k_critical =
                std::max(nc.max_k_critical, k_of_eta(spectral_point(sys, tuple)));
            return true;
        });
    }

    bool all_inj = true;
    for (bool b : nc.injective) all_inj = all_inj && b;
    nc.multiplicity_ok = sys.m >= nc.max_k_critical;
    nc.single_input_ok = sys.m != 1 || (all_inj && nc.overlaps.empty());
    nc.passed =
        nc.constant_eigenfunctions.empty() && nc.single_input_ok && nc.multiplicity_ok;
    return nc;
}

CertificateSet build_certificate_set(const EnsembleSystem& sys, int density) {
    CertificateSet cs;
    cs.density = density;
    const auto axes = axis_critical_values(sys);
    cartesian<RealValue>(axes, [&](const std::vector<RealValue>& tuple) {
        cs.critical.push_back(tuple);
        return true;
    });

    std::vector<std::vector<Rational>> grid_axes(sys.n);
    for (int i = 0; i < sys.n; ++i) {
        SpectralRange r = spectral_range(sys.eigenfunctions[i], sys.beta_lo, sys.beta_hi);
        for (;;) {
            const RatInterval el = r.lo.enclosure(), eh = r.hi.enclosure();
            if ((r.lo.is_exact() && r.hi.is_exact()) || el.hi() < eh.lo()) break;
            r.lo.refine_below(el.width() / 2);
            r.hi.refine_below(eh.width() / 2);
        }
        const Rational lo = inner_rational_low(r.lo), hi = inner_rational_high(r.hi);
        if (lo >= hi) throw InternalError("degenerate spectral range for grid construction");
        if (density <= 1) {
            grid_axes[i].push_back((lo + hi) / 2);
        } else {
            for (int t = 0; t < density; ++t)
                grid_axes[i].push_back(lo + Rational(t) * (hi - lo) / (density - 1));
        }
    }
    cartesian<Rational>(grid_axes, [&](const std::vector<Rational>& tuple) {
        cs.grid.push_back(tuple);
        return true;
    });
    return cs;
}

ControllabilityReport decide_uec(const EnsembleSystem& raw, const DecisionConfig& cfg) {
    const EnsembleSystem sys = validate(raw);
    ControllabilityReport rep;
    rep.config = cfg;

    for (int i = 0; i < sys.n; ++i) {
        if (sys.eigenfunctions[i].derivative().is_zero()) {
            rep.checks = necessary_checks(sys);
            Witness w;
            w.kind = Witness::Kind::ConstantEigenfunction;
            w.eigen_index = i;
            rep.witness = std::move(w);
            rep.verdict = Verdict::Uncontrollable;
            return rep;
        }
    }

    rep.checks = necessary_checks(sys);

    if (!rep.checks.single_input_ok) {
        SpectralPoint pt = spectral_point(sys, lemma2_witness_tuple(sys, rep.checks));
        if (k_of_eta(pt) <= sys.m)
            throw InternalError("single-input witness lost its multiplicity");
        fill_uncontrollable(sys, rep, std::move(pt), Witness::Kind::MultiplicityExceedsInputs);
        return rep;
    }

    const CertificateSet cs = build_certificate_set(sys, cfg.grid_density);
    std::set<std::string> seen;
    std::vector<std::vector<Rational>> sample_candidates;

    // Returns false to stop the scan (witness found).
    auto test_point = [&](std::vector<RealValue> eta, bool critical) -> bool {
        {
            std::string key;
            bool rational = true;
            for (const auto& v : eta) {
                if (!v.is_exact()) {
                    rational = false;
                    break;
                }
                key += to_string(v.exact());
                key += ',';
            }
            if (rational && !seen.insert(key).second) return true;
        }
        SpectralPoint pt = spectral_point(sys, std::move(eta));
        ++rep.tested_points;
        if (pt.at_junction()) rep.junction_points.push_back(pt.eta);
        if (k_of_eta(pt) > sys.m) {
            fill_uncontrollable(sys, rep, std::move(pt),
                                Witness::Kind::MultiplicityExceedsInputs);
            return false;
        }
        if (pt.all_rational()) {
            QMatrix adiag, d;
            exact_reparam(sys, pt, adiag, d);
            const QMatrix ctrl = controllability_matrix(adiag, d);
            const int r = rank(ctrl);
            if (r < pt.N) {
                if (rank_bareiss(ctrl) != r)
                    throw InternalError("independent rank verifications disagree");
                Witness w;
                w.kind = Witness::Kind::RankDeficient;
                w.ctrl = ctrl;
                w.rank = r;
                w.required = pt.N;
                w.point = std::move(pt);
                rep.witness = std::move(w);
                rep.verdict = Verdict::Uncontrollable;
                return false;
            }
            if (critical && sample_candidates.size() < 4) {
                std::vector<Rational> tup;
                for (const auto& v : pt.eta) tup.push_back(v.exact());
                sample_candidates.push_back(std::move(tup));
            }
        } else if (!certify_point(sys, pt, cfg)) {
            rep.indeterminate_points.push_back(pt.eta);
        }
        return true;
    };

    for (const auto& tuple : cs.critical)
        if (!test_point(tuple, true)) return rep;
    for (const auto& tuple : cs.grid) {
        std::vector<RealValue> eta;
        for (const auto& q : tuple) eta.emplace_back(q);
        if (!test_point(std::move(eta), false)) return rep;
    }

    rep.verdict =
        rep.indeterminate_points.empty() ? Verdict::Controllable : Verdict::Indeterminate;
    for (const auto& tup : sample_candidates) {
        const FunctionalCanonicalSample fc = ensemble_canonical_form(sys, tup);
        rep.canonical_samples.push_back({fc.eta, fc.C, fc.Bbar, fc.k, fc.block_sizes});
    }
    return rep;
}

SingleInputCanonical single_input_canonical(const EnsembleSystem& raw) {
    const EnsembleSystem sys = validate(raw);
    if (sys.m != 1) throw NotSingleInput("symbolic canonical form requires one input");
    const int n = sys.n;

    PolyMatrix p(n, n);
    PolyMatrix blk(n, 1);
    for (int i = 0; i < n; ++i) blk.at(i, 0) = sys.B.at(i, 0);
    for (int c = 0; c < n; ++c) {
        for (int i = 0; i < n; ++i) p.at(i, c) = blk.at(i, 0);
        blk = sys.A * blk;
    }

    SingleInputCanonical out;
    out.P = p;
    out.detP = det(p);
    if (out.detP.is_zero())
        throw PointwiseUncontrollable(
            "controllability matrix is singular for every parameter value");
    const auto roots = isolate_real_roots(out.detP, sys.beta_lo, sys.beta_hi);
    if (!roots.empty())
        throw PointwiseUncontrollable("det P(" + sys.param_name + ") vanishes at " +
                                      sys.param_name + " = " +
                                      to_string(RealValue(roots.front())));

    const RatFunMatrix prf = RatFunMatrix::from_poly_matrix(p);
    out.C = ratfun_solve(prf, RatFunMatrix::from_poly_matrix(sys.A * p));

    // bbar = P^{-1} b must be e_1 (b is P's first column).
    RatFunMatrix brf(n, 1);
    for (int i = 0; i < n; ++i) brf.at(i, 0) = RationalFunction(sys.B.at(i, 0));
    const RatFunMatrix bbar = ratfun_solve(prf, brf);
    for (int i = 0; i < n; ++i) {
        const RationalFunction expect(i == 0 ? Rational(1) : Rational(0));
        if (bbar.at(i, 0) != expect)
            throw InternalError("transformed input vector is not e_1");
    }
    return out;
}

FunctionalCanonicalSample ensemble_canonical_form(const EnsembleSystem& raw,
                                                  const std::vector<Rational>& eta) {
    const EnsembleSystem sys = validate(raw);
    if (static_cast<int>(eta.size()) != sys.n)
        throw MalformedShape("eta must have one coordinate per state dimension");
    std::vector<RealValue> ev;
    for (const auto& q : eta) ev.emplace_back(q);
    const SpectralPoint pt = spectral_point(sys, std::move(ev));
    if (!pt.all_rational())
        throw NonRationalData("preimages at this eta are irrational; exact canonical "
                              "sampling needs rational spectral data");

    FunctionalCanonicalSample out;
    out.eta = eta;
    exact_reparam(sys, pt, out.Adiag, out.D);
    if (!is_controllable(out.Adiag, out.D))
        throw NotControllableAtEta("reparameterized pair fails the Kalman test at this eta");
    const CtrlCanonResult cc = ctrl_canonical_form(out.Adiag, out.D);
    out.C = cc.C;
    out.Bbar = cc.Bbar;
    out.P = cc.P;
    out.k = static_cast<int>(cc.factors.factors.size());
    out.block_sizes = cc.factors.degrees;
    if (out.k != k_of_eta(pt))
        throw InternalError("companion block count disagrees with the multiplicity count");
    return out;
}

}  // namespace ectl
