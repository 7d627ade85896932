#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cascadelab/error.hpp"
#include "cascadelab/rng.hpp"
#include "cascadelab/solver.hpp"

using namespace cascadelab;

namespace {

Eigen::MatrixXd random_design(Rng& rng, int m, int f) {
    Eigen::MatrixXd X(m, f);
    for (int t = 0; t < m; ++t) {
        for (int j = 0; j < f; ++j) X(t, j) = rng.uniform01() < 0.5 ? 1.0 : -1.0;
    }
    return X;
}

Eigen::VectorXd labels_from(const Eigen::MatrixXd& X, const Eigen::VectorXd& beta,
                            double intercept, Rng& rng) {
    Eigen::VectorXd y(X.rows());
    for (Eigen::Index t = 0; t < X.rows(); ++t) {
        const double p = 1.0 / (1.0 + std::exp(-2.0 * (X.row(t).dot(beta) + intercept)));
        y(t) = rng.uniform01() < p ? 1.0 : -1.0;
    }
    return y;
}

} // namespace

TEST_CASE("soft threshold equals the scalar prox") {
    // argmin_x 0.5 (x - v)^2 + t |x|, scanned on a fine grid.
    for (double v : {-2.0, -0.3, 0.0, 0.15, 1.7}) {
        for (double t : {0.05, 0.4, 2.5}) {
            double best_x = -3.0, best = 1e300;
            for (double x = -3.0; x <= 3.0; x += 1e-4) {
                const double value = 0.5 * (x - v) * (x - v) + t * std::abs(x);
                if (value < best) {
                    best = value;
                    best_x = x;
                }
            }
            CHECK_THAT(soft_threshold(v, t), Catch::Matchers::WithinAbs(best_x, 2e-4));
        }
    }
}

TEST_CASE("analytic gradient matches central differences") {
    Rng rng(21);
    const int m = 60, f = 5;
    const Eigen::MatrixXd X = random_design(rng, m, f);
    Eigen::VectorXd y(m);
    for (int t = 0; t < m; ++t) y(t) = rng.uniform01() < 0.5 ? 1.0 : -1.0;
    Eigen::VectorXd w(m);
    for (int t = 0; t < m; ++t) w(t) = 0.5 + rng.uniform01();

    const double eps = 1e-6;
    for (int point = 0; point < 20; ++point) {
        Eigen::VectorXd beta(f);
        for (int j = 0; j < f; ++j) beta(j) = 2.0 * rng.uniform01() - 1.0;
        const double intercept = 2.0 * rng.uniform01() - 1.0;

        Eigen::VectorXd grad;
        const double grad_h = logistic_gradient(X, y, w, intercept, beta, grad);

        const double fd_h = (logistic_loss(X, y, w, intercept + eps, beta) -
                             logistic_loss(X, y, w, intercept - eps, beta)) /
                            (2.0 * eps);
        CHECK_THAT(grad_h, Catch::Matchers::WithinRel(fd_h, 1e-6));
        for (int j = 0; j < f; ++j) {
            Eigen::VectorXd up = beta, down = beta;
            up(j) += eps;
            down(j) -= eps;
            const double fd = (logistic_loss(X, y, w, intercept, up) -
                               logistic_loss(X, y, w, intercept, down)) /
                              (2.0 * eps);
            if (std::abs(fd) > 1e-8) {
                CHECK_THAT(grad(j), Catch::Matchers::WithinRel(fd, 1e-6));
            } else {
                CHECK_THAT(grad(j), Catch::Matchers::WithinAbs(fd, 1e-9));
            }
        }
    }
}

TEST_CASE("huge lambda shrinks everything to the intercept") {
    Rng rng(5);
    const Eigen::MatrixXd X = random_design(rng, 400, 4);
    Eigen::VectorXd y(400);
    for (int t = 0; t < 400; ++t) y(t) = rng.uniform01() < 0.7 ? 1.0 : -1.0;

    RowFitOptions opts;
    opts.lambda = 1e3;
    opts.tol = 1e-14;
    opts.max_iters = 100000;
    const RowFit fit = fit_logistic_row(X, y, {}, opts);
    CHECK(fit.beta.cwiseAbs().maxCoeff() == 0.0);
    CHECK_THAT(std::tanh(fit.intercept), Catch::Matchers::WithinAbs(y.mean(), 1e-6));
}

TEST_CASE("duplicate columns keep a unique objective") {
    Rng rng(6);
    Eigen::MatrixXd X = random_design(rng, 300, 3);
    X.col(2) = X.col(1);
    Eigen::VectorXd planted(3);
    planted << 0.8, 0.4, 0.0;
    const Eigen::VectorXd y = labels_from(X, planted, 0.1, rng);

    RowFitOptions opts;
    opts.lambda = 0.0;
    const RowFit cold = fit_logistic_row(X, y, {}, opts);

    RowFitOptions warm = opts;
    warm.beta0 = Eigen::VectorXd::Zero(3);
    warm.beta0(1) = 1.2;  // start in a different corner of the flat valley
    warm.intercept0 = -0.5;
    const RowFit other = fit_logistic_row(X, y, {}, warm);

    CHECK_THAT(cold.objective, Catch::Matchers::WithinAbs(other.objective, 1e-6));
}

TEST_CASE("constant targets short-circuit as degenerate") {
    Rng rng(7);
    const Eigen::MatrixXd X = random_design(rng, 50, 3);
    const Eigen::VectorXd plus = Eigen::VectorXd::Ones(50);

    const RowFit fit = fit_logistic_row(X, plus, {}, RowFitOptions{});
    CHECK(fit.degenerate);
    CHECK(fit.intercept == 15.0);
    CHECK(fit.beta.cwiseAbs().maxCoeff() == 0.0);

    const RowFit neg = fit_logistic_row(X, -plus, {}, RowFitOptions{});
    CHECK(neg.intercept == -15.0);
}

TEST_CASE("parameters respect the box cap") {
    // Perfectly separable single feature drives the coefficient to the cap.
    Eigen::MatrixXd X(40, 1);
    Eigen::VectorXd y(40);
    for (int t = 0; t < 40; ++t) {
        X(t, 0) = t % 2 == 0 ? 1.0 : -1.0;
        y(t) = X(t, 0);
    }
    RowFitOptions opts;
    opts.param_cap = 4.0;
    opts.tol = 0.0;
    opts.max_iters = 3000;
    const RowFit fit = fit_logistic_row(X, y, {}, opts);
    CHECK(std::abs(fit.intercept) <= 4.0);
    CHECK(fit.beta.cwiseAbs().maxCoeff() <= 4.0);
    CHECK_THAT(fit.beta(0), Catch::Matchers::WithinAbs(4.0, 1e-6));
}

TEST_CASE("penalty weights bias which column survives") {
    Rng rng(8);
    Eigen::MatrixXd X = random_design(rng, 4000, 2);
    Eigen::VectorXd planted(2);
    planted << 0.5, 0.5;
    const Eigen::VectorXd y = labels_from(X, planted, 0.0, rng);

    RowFitOptions opts;
    opts.lambda = 0.05;
    opts.penalty = {1.0, 8.0};  // distant column pays more
    const RowFit fit = fit_logistic_row(X, y, {}, opts);
    CHECK(std::abs(fit.beta(0)) > std::abs(fit.beta(1)));
}

TEST_CASE("default lambda follows the sample-size rule") {
    const double direct = std::sqrt(std::log(179.0 * 179.0 / 0.01) / 50000.0);
    CHECK_THAT(default_lambda(179, 50000), Catch::Matchers::WithinRel(direct, 1e-12));
    CHECK_THAT(default_lambda(179, 100000) * std::sqrt(2.0),
               Catch::Matchers::WithinRel(default_lambda(179, 50000), 1e-12));
    CHECK_THAT(default_lambda(179, 50000, 2.0),
               Catch::Matchers::WithinRel(2.0 * direct, 1e-12));
    CHECK_THROWS_AS(default_lambda(1, 100), InvariantError);
}

TEST_CASE("warm starts and frozen coordinates are honoured") {
    Rng rng(9);
    Eigen::MatrixXd X = random_design(rng, 500, 3);
    Eigen::VectorXd planted(3);
    planted << 0.6, -0.4, 0.5;
    const Eigen::VectorXd y = labels_from(X, planted, 0.0, rng);

    RowFitOptions opts;
    opts.frozen = {0, 1, 0};
    const RowFit fit = fit_logistic_row(X, y, {}, opts);
    CHECK(fit.beta(1) == 0.0);
    CHECK(std::abs(fit.beta(0)) > 0.1);
    CHECK(fit.converged);
}
