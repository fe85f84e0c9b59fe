#include "ectl/steer.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "ectl/errors.hpp"

namespace ectl {

namespace {

bool is_diagonal(const Eigen::MatrixXd& a) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j && a(i, j) != 0.0) return false;
    return true;
}

}  // namespace

DiscretizedEnsemble discretize(const EnsembleSystem& raw, int count) {
    const EnsembleSystem sys = validate(raw);
    if (count < 2) throw MalformedShape("at least two ensemble samples are required");
    DiscretizedEnsemble de;
    de.n = sys.n;
    de.m = sys.m;
    const double lo = to_double(sys.beta_lo), hi = to_double(sys.beta_hi);
    de.samples.resize(count);
    for (int i = 0; i < count; ++i)
        de.samples[i] = lo + (hi - lo) * i / (count - 1);
    // Exact mirror symmetry about the midpoint (relied on by symmetry
    // arguments in the validation experiments).
    for (int i = 0; i < count / 2; ++i) de.samples[count - 1 - i] = (lo + hi) - de.samples[i];
    if (count % 2 == 1) de.samples[count / 2] = (lo + hi) / 2;

    for (double b : de.samples) {
        Eigen::MatrixXd a(sys.n, sys.n), bb(sys.n, sys.m);
        for (int i = 0; i < sys.n; ++i)
            for (int j = 0; j < sys.n; ++j) a(i, j) = sys.A.at(i, j).eval_double(b);
        for (int i = 0; i < sys.n; ++i)
            for (int j = 0; j < sys.m; ++j) bb(i, j) = sys.B.at(i, j).eval_double(b);
        de.Ablocks.push_back(std::move(a));
        de.Bblocks.push_back(std::move(bb));
    }
    return de;
}

StepKernel step_kernel(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double dt) {
    const int n = static_cast<int>(A.rows());
    const int m = static_cast<int>(B.cols());
    StepKernel k;
    if (is_diagonal(A)) {
        k.E = Eigen::MatrixXd::Zero(n, n);
        Eigen::VectorXd phi(n);
        for (int i = 0; i < n; ++i) {
            const double a = A(i, i);
            k.E(i, i) = std::exp(a * dt);
            phi(i) = a == 0.0 ? dt : std::expm1(a * dt) / a;
        }
        k.Phi = phi.asDiagonal() * B;
    } else {
        // Block-triangular exponential: exp([[A,B],[0,0]] dt) carries the
        // input integral in its top-right corner.
        Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(n + m, n + m);
        blk.topLeftCorner(n, n) = A * dt;
        blk.topRightCorner(n, m) = B * dt;
        const Eigen::MatrixXd e = blk.exp();
        k.E = e.topLeftCorner(n, n);
        k.Phi = e.topRightCorner(n, m);
    }
    return k;
}

Eigen::MatrixXd reachability_map(const DiscretizedEnsemble& de, double T, int steps) {
    if (steps < 1) throw ShapeMismatch("step count must be positive");
    const int s_count = static_cast<int>(de.samples.size());
    const double dt = T / steps;
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(s_count * de.n, steps * de.m);
    for (int s = 0; s < s_count; ++s) {
        const StepKernel k = step_kernel(de.Ablocks[s], de.Bblocks[s], dt);
        Eigen::MatrixXd acc = k.Phi;  // E^0 Phi belongs to the last block
        for (int j = steps - 1; j >= 0; --j) {
            r.block(s * de.n, j * de.m, de.n, de.m) = acc;
            if (j > 0) acc = k.E * acc;
        }
    }
    return r;
}

SteeringResult synthesize(const DiscretizedEnsemble& de, const SteeringProblem& pr) {
    const int s_count = static_cast<int>(de.samples.size());
    const int dim = de.state_size();
    if (pr.x0.size() != dim || pr.xF.size() != dim)
        throw ShapeMismatch("stacked state vectors must have size samples*n");
    if (pr.steps < 1) throw ShapeMismatch("step count must be positive");

    const Eigen::MatrixXd r = reachability_map(de, pr.T, pr.steps);
    const Eigen::VectorXd drift =
        simulate(de, pr.x0, Eigen::MatrixXd::Zero(pr.steps, de.m), pr.T);
    const Eigen::VectorXd target = pr.xF - drift;

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double cutoff = 1e-10 * smax;

    Eigen::VectorXd y = svd.matrixU().transpose() * target;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) {
            y(i) /= sv(i);
            ++rank;
        } else {
            y(i) = 0.0;
        }
    }
    const Eigen::VectorXd u = svd.matrixV() * y;

    SteeringResult res;
    res.singular_values = sv;
    res.cutoff = cutoff;
    res.reachability_rank = rank;
    res.controls = Eigen::MatrixXd(pr.steps, de.m);
    for (int j = 0; j < pr.steps; ++j)
        for (int c = 0; c < de.m; ++c) res.controls(j, c) = u(j * de.m + c);

    const Eigen::VectorXd xfinal = simulate(de, pr.x0, res.controls, pr.T);
    res.residual_per_sample.resize(s_count);
    for (int s = 0; s < s_count; ++s) {
        const double e =
            (xfinal.segment(s * de.n, de.n) - pr.xF.segment(s * de.n, de.n)).norm();
        res.residual_per_sample[s] = e;
        res.residual_sup = std::max(res.residual_sup, e);
    }
    return res;
}

Eigen::VectorXd simulate(const DiscretizedEnsemble& de, const Eigen::VectorXd& x0,
                         const Eigen::MatrixXd& controls, double T) {
    if (x0.size() != de.state_size())
        throw ShapeMismatch("stacked state vector must have size samples*n");
    if (controls.cols() != de.m) throw ShapeMismatch("controls must have one column per input");
    const int steps = static_cast<int>(controls.rows());
    if (steps < 1) throw ShapeMismatch("step count must be positive");
    const double dt = T / steps;
    Eigen::VectorXd x = x0;
    for (size_t s = 0; s < de.samples.size(); ++s) {
        const StepKernel k = step_kernel(de.Ablocks[s], de.Bblocks[s], dt);
        Eigen::VectorXd xs = x.segment(s * de.n, de.n);
        for (int j = 0; j < steps; ++j)
            xs = k.E * xs + k.Phi * controls.row(j).transpose();
        x.segment(s * de.n, de.n) = xs;
    }
    return x;
}

}  // namespace ectl
