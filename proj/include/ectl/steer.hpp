#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ectl/ensemble.hpp"

namespace ectl {

// The parameterized pair frozen at finitely many beta samples and stacked
// into one block-diagonal LTI system (doubles from here on).
struct DiscretizedEnsemble {
    std::vector<double> samples;
    std::vector<Eigen::MatrixXd> Ablocks;  // n x n per sample
    std::vector<Eigen::MatrixXd> Bblocks;  // n x m per sample
    int n = 0, m = 0;

    int state_size() const { return n * static_cast<int>(samples.size()); }
};

// `count` >= 2 evenly spaced samples over K, endpoints included, exactly
// symmetric about the midpoint.
DiscretizedEnsemble discretize(const EnsembleSystem& sys, int count);

// One zero-order-hold step: x <- E x + Phi u.
struct StepKernel {
    Eigen::MatrixXd E;    // exp(A dt)
    Eigen::MatrixXd Phi;  // int_0^dt exp(A s) ds B
};
StepKernel step_kernel(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double dt);

// Linear map from the stacked inputs (u_0 first) to the stacked zero-state
// final response: block row per sample of [E^{steps-1}Phi | ... | Phi].
Eigen::MatrixXd reachability_map(const DiscretizedEnsemble& de, double T, int steps);

struct SteeringProblem {
    Eigen::VectorXd x0;  // stacked, size samples*n
    Eigen::VectorXd xF;
    double T = 1.0;
    int steps = 32;
};

struct SteeringResult {
    Eigen::MatrixXd controls;  // steps x m; row j holds u on [j dt, (j+1) dt)
    double residual_sup = 0.0;  // max over samples of final-state error norm
    std::vector<double> residual_per_sample;
    int reachability_rank = 0;
    Eigen::VectorXd singular_values;
    double cutoff = 0.0;  // singular values at or below it are discarded
};

// Minimum-norm least-squares steering control via SVD of the reachability
// map; the reported residuals come from re-simulating the result.
SteeringResult synthesize(const DiscretizedEnsemble& de, const SteeringProblem& pr);

// Final stacked state from x0 under the piecewise-constant controls.
Eigen::VectorXd simulate(const DiscretizedEnsemble& de, const Eigen::VectorXd& x0,
                         const Eigen::MatrixXd& controls, double T);

}  // namespace ectl
