#include "fit_common.hpp"

#include <algorithm>

#include "cascadelab/error.hpp"
#include "cascadelab/parallel.hpp"
#include "cascadelab/solver.hpp"
#include "cascadelab/static_learner.hpp"

namespace cascadelab::detail {

InteractionModel fit_rows(const Eigen::MatrixXd& X,
                          const Eigen::MatrixXd& targets,
                          const Eigen::VectorXd& weights,
                          const std::vector<std::vector<int>>& distances,
                          const FitConfig& config, const std::string& kind,
                          const std::string& dataset_hash, int lambda_samples) {
    const int L = static_cast<int>(X.cols());
    if (targets.cols() != L || targets.rows() != X.rows()) {
        throw InvariantError("target matrix shape mismatch");
    }
    if (static_cast<int>(distances.size()) != L) {
        throw InvariantError("distance matrix size mismatch");
    }
    if (!(config.delta_m > 0.0 && config.delta_p > 0.0)) {
        throw InvariantError("thresholds must be positive");
    }

    const double lambda =
        config.lambda >= 0.0
            ? config.lambda
            : default_lambda(L, lambda_samples, config.lambda_scale, config.eps);

    InteractionModel model;
    model.kind = kind;
    model.n_lines = L;
    model.h.assign(static_cast<std::size_t>(L), 0.0);
    model.J.assign(static_cast<std::size_t>(L), {});
    model.support.assign(static_cast<std::size_t>(L), {});
    model.degenerate.assign(static_cast<std::size_t>(L), 0);
    model.meta.lambda = lambda;
    model.meta.delta_m = config.delta_m;
    model.meta.delta_p = config.delta_p;
    model.meta.samples = lambda_samples;
    model.meta.dataset_hash = dataset_hash;
    model.meta.objective.assign(static_cast<std::size_t>(L), 0.0);

    parallel_for(static_cast<std::size_t>(L), config.jobs, [&](std::size_t ui) {
        const int i = static_cast<int>(ui);
        const Eigen::VectorXd y = targets.col(i);

        RowFitOptions stage1;
        stage1.lambda = lambda;
        stage1.tol = config.tol;
        stage1.max_iters = config.max_iters;
        stage1.penalty.assign(static_cast<std::size_t>(L), 1.0);
        stage1.frozen.assign(static_cast<std::size_t>(L), 0);
        stage1.frozen[ui] = 1;
        for (int j = 0; j < L; ++j) {
            if (j != i) {
                stage1.penalty[static_cast<std::size_t>(j)] =
                    static_cast<double>(distances[ui][static_cast<std::size_t>(j)]);
            }
        }

        const RowFit first = fit_logistic_row(X, y, weights, stage1);
        if (first.degenerate) {
            model.h[ui] = first.intercept;
            model.degenerate[ui] = 1;
            model.meta.objective[ui] = first.objective;
            return;
        }

        const std::vector<int> support =
            threshold_support(first.beta, config.delta_m, config.delta_p);
        model.support[ui] = support;

        Eigen::MatrixXd sub(X.rows(), static_cast<Eigen::Index>(support.size()));
        Eigen::VectorXd warm(static_cast<Eigen::Index>(support.size()));
        for (std::size_t k = 0; k < support.size(); ++k) {
            sub.col(static_cast<Eigen::Index>(k)) = X.col(support[k]);
            warm(static_cast<Eigen::Index>(k)) = first.beta(support[k]);
        }

        RowFitOptions stage2;
        stage2.lambda = 0.0;
        stage2.tol = config.stage2_tol;
        stage2.max_iters = config.max_iters;
        stage2.intercept0 = first.intercept;
        stage2.beta0 = warm;

        const RowFit final = fit_logistic_row(sub, y, weights, stage2);
        model.h[ui] = final.intercept;
        model.meta.objective[ui] = final.objective;
        auto& row = model.J[ui];
        for (std::size_t k = 0; k < support.size(); ++k) {
            const double value = final.beta(static_cast<Eigen::Index>(k));
            if (value != 0.0) row.emplace_back(support[k], value);
        }
        std::sort(row.begin(), row.end());
    });

    return model;
}

} // namespace cascadelab::detail
