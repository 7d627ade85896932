#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "cascadelab/model.hpp"

namespace cascadelab::detail {

/// Row-separable two-stage fit shared by the static and kinetic learners.
/// target_col(i) supplies the +/-1 target for line i; X is the shared input
/// matrix with line i's own column frozen out of row i's couplings.
InteractionModel fit_rows(const Eigen::MatrixXd& X,
                          const Eigen::MatrixXd& targets,
                          const Eigen::VectorXd& weights,
                          const std::vector<std::vector<int>>& distances,
                          const FitConfig& config, const std::string& kind,
                          const std::string& dataset_hash, int lambda_samples);

} // namespace cascadelab::detail
