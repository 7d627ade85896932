#pragma once

#include <Eigen/Dense>

#include <vector>

namespace cascadelab {

/// Weighted l1-penalized logistic fit of one conditional: the target spin y
/// (entries +/-1) against feature rows X (entries +/-1) plus an intercept.
/// Minimizes -mean_w ln sigma(2 y (X beta + h)) + lambda sum_j penalty_j |beta_j|
/// by proximal gradient descent with fixed step 1/(n_features+1) and
/// backtracking halving whenever the objective would rise.
struct RowFitOptions {
    double lambda = 0.0;
    std::vector<double> penalty;  ///< per-feature weights; empty = all ones
    std::vector<char> frozen;     ///< per-feature pin-at-zero flags; empty = none
    double tol = 1e-8;            ///< relative objective-change stop
    int max_iters = 10000;
    double param_cap = 30.0;      ///< box bound on every parameter
    double degenerate_cap = 15.0; ///< intercept surrogate for constant targets
    double intercept0 = 0.0;
    Eigen::VectorXd beta0;        ///< warm start; empty = zeros
};

struct RowFit {
    double intercept = 0.0;
    Eigen::VectorXd beta;
    double objective = 0.0;  ///< penalized minimization objective at the solution
    double loglik = 0.0;     ///< mean log conditional likelihood (unpenalized)
    int iterations = 0;
    bool degenerate = false;
    bool converged = false;
};

/// -mean_w ln sigma(2 y (X beta + h)), the smooth part of the objective.
double logistic_loss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& weights, double intercept,
                     const Eigen::VectorXd& beta);

/// Analytic gradient of logistic_loss; returns d/d_intercept and fills grad.
double logistic_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const Eigen::VectorXd& weights, double intercept,
                         const Eigen::VectorXd& beta, Eigen::VectorXd& grad);

RowFit fit_logistic_row(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& weights, const RowFitOptions& opts);

double soft_threshold(double x, double t);

/// Default regularization strength: scale * sqrt(ln(L^2/eps) / M).
double default_lambda(int n_lines, int n_samples, double scale = 1.0, double eps = 0.01);

} // namespace cascadelab
