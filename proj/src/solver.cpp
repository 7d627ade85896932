#include "cascadelab/solver.hpp"

#include <algorithm>
#include <cmath>

#include "cascadelab/error.hpp"

namespace cascadelab {

namespace {

// ln sigma(z), stable on both tails.
double log_sigmoid(double z) {
    if (z >= 0.0) return -std::log1p(std::exp(-z));
    return z - std::log1p(std::exp(z));
}

Eigen::VectorXd effective_weights(const Eigen::VectorXd& weights, Eigen::Index m) {
    if (weights.size() == 0) return Eigen::VectorXd::Ones(m);
    if (weights.size() != m) throw InvariantError("weight vector size mismatch");
    return weights;
}

} // namespace

double soft_threshold(double x, double t) {
    if (x > t) return x - t;
    if (x < -t) return x + t;
    return 0.0;
}

double default_lambda(int n_lines, int n_samples, double scale, double eps) {
    if (n_lines < 2 || n_samples < 1 || eps <= 0.0) {
        throw InvariantError("bad default_lambda arguments");
    }
    const double l = static_cast<double>(n_lines);
    return scale * std::sqrt(std::log(l * l / eps) / static_cast<double>(n_samples));
}

double logistic_loss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const Eigen::VectorXd& weights, double intercept,
                     const Eigen::VectorXd& beta) {
    const Eigen::VectorXd w = effective_weights(weights, X.rows());
    const Eigen::VectorXd H = (X * beta).array() + intercept;
    double loss = 0.0;
    for (Eigen::Index t = 0; t < X.rows(); ++t) {
        loss -= w(t) * log_sigmoid(2.0 * y(t) * H(t));
    }
    return loss / w.sum();
}

double logistic_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const Eigen::VectorXd& weights, double intercept,
                         const Eigen::VectorXd& beta, Eigen::VectorXd& grad) {
    const Eigen::VectorXd w = effective_weights(weights, X.rows());
    const Eigen::VectorXd H = (X * beta).array() + intercept;
    Eigen::VectorXd r(X.rows());
    for (Eigen::Index t = 0; t < X.rows(); ++t) {
        r(t) = w(t) * (y(t) - std::tanh(H(t)));
    }
    const double wsum = w.sum();
    grad = -(X.transpose() * r) / wsum;
    return -r.sum() / wsum;
}

RowFit fit_logistic_row(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& weights, const RowFitOptions& opts) {
    const Eigen::Index m = X.rows();
    const Eigen::Index f = X.cols();
    if (y.size() != m) throw InvariantError("target size mismatch");
    const Eigen::VectorXd w = effective_weights(weights, m);
    const double wsum = w.sum();

    std::vector<double> penalty = opts.penalty;
    if (penalty.empty()) penalty.assign(static_cast<std::size_t>(f), 1.0);
    if (static_cast<Eigen::Index>(penalty.size()) != f) {
        throw InvariantError("penalty size mismatch");
    }
    std::vector<char> frozen = opts.frozen;
    if (frozen.empty()) frozen.assign(static_cast<std::size_t>(f), 0);
    if (static_cast<Eigen::Index>(frozen.size()) != f) {
        throw InvariantError("frozen mask size mismatch");
    }

    RowFit fit;
    fit.beta = Eigen::VectorXd::Zero(f);

    const bool all_plus = (y.array() > 0).all();
    const bool all_minus = (y.array() < 0).all();
    if (all_plus || all_minus) {
        fit.intercept = all_plus ? opts.degenerate_cap : -opts.degenerate_cap;
        fit.degenerate = true;
        fit.converged = true;
        fit.loglik = -logistic_loss(X, y, w, fit.intercept, fit.beta);
        fit.objective = -fit.loglik;
        return fit;
    }

    double h = opts.intercept0;
    Eigen::VectorXd beta = opts.beta0.size() ? opts.beta0 : Eigen::VectorXd::Zero(f);
    if (beta.size() != f) throw InvariantError("warm-start size mismatch");
    for (Eigen::Index j = 0; j < f; ++j) {
        if (frozen[static_cast<std::size_t>(j)]) beta(j) = 0.0;
    }

    auto penalty_term = [&](const Eigen::VectorXd& b) {
        double p = 0.0;
        for (Eigen::Index j = 0; j < f; ++j) {
            p += penalty[static_cast<std::size_t>(j)] * std::abs(b(j));
        }
        return opts.lambda * p;
    };
    auto smooth_loss = [&](const Eigen::VectorXd& H) {
        double loss = 0.0;
        for (Eigen::Index t = 0; t < m; ++t) {
            loss -= w(t) * log_sigmoid(2.0 * y(t) * H(t));
        }
        return loss / wsum;
    };

    const double base_step = 1.0 / static_cast<double>(f + 1);
    Eigen::VectorXd H = (X * beta).array() + h;
    double objective = smooth_loss(H) + penalty_term(beta);

    Eigen::VectorXd r(m), grad(f), beta_next(f), H_next(m);
    for (int iter = 0; iter < opts.max_iters; ++iter) {
        for (Eigen::Index t = 0; t < m; ++t) {
            r(t) = w(t) * (y(t) - std::tanh(H(t)));
        }
        grad.noalias() = -(X.transpose() * r) / wsum;
        const double grad_h = -r.sum() / wsum;

        double step = base_step;
        double h_next = h;
        double objective_next = objective;
        bool accepted = false;
        while (step > 1e-14) {
            h_next = std::clamp(h - step * grad_h, -opts.param_cap, opts.param_cap);
            for (Eigen::Index j = 0; j < f; ++j) {
                if (frozen[static_cast<std::size_t>(j)]) {
                    beta_next(j) = 0.0;
                    continue;
                }
                const double raw = beta(j) - step * grad(j);
                const double thr = step * opts.lambda * penalty[static_cast<std::size_t>(j)];
                beta_next(j) = std::clamp(soft_threshold(raw, thr),
                                          -opts.param_cap, opts.param_cap);
            }
            H_next = (X * beta_next).array() + h_next;
            objective_next = smooth_loss(H_next) + penalty_term(beta_next);
            if (objective_next <= objective + 1e-12) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            fit.converged = true;
            fit.iterations = iter;
            break;
        }
        if (objective_next > objective + 1e-9 * std::max(1.0, std::abs(objective))) {
            throw InvariantError("proximal step increased the objective");
        }
        const bool done =
            std::abs(objective - objective_next) <= opts.tol * std::max(1.0, std::abs(objective));
        h = h_next;
        beta.swap(beta_next);
        H.swap(H_next);
        objective = objective_next;
        fit.iterations = iter + 1;
        if (done) {
            fit.converged = true;
            break;
        }
    }

    fit.intercept = h;
    fit.beta = std::move(beta);
    fit.objective = objective;
    fit.loglik = penalty_term(fit.beta) - objective;
    return fit;
}

} // namespace cascadelab
