#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "cascadelab/cascade.hpp"
#include "cascadelab/model.hpp"

namespace cascadelab {

/// Unique final states, first occurrence order.
std::vector<NetworkState> dedup_final_states(const Dataset& dataset);

/// M x L design matrix of +/-1 entries.
Eigen::MatrixXd build_design(const std::vector<NetworkState>& states);

/// Columns kept by the asymmetric threshold: J >= delta_p or J <= -delta_m.
std::vector<int> threshold_support(const Eigen::VectorXd& j_row, double delta_m,
                                   double delta_p);

/// Two-stage weighted-l1 pseudo-likelihood fit over deduplicated final states.
/// `distances` supplies the penalty weights d_ij (self entries unused).
InteractionModel fit_static_model(const std::vector<NetworkState>& states,
                                  const std::vector<std::vector<int>>& distances,
                                  const FitConfig& config,
                                  const std::string& dataset_hash = "");

struct MomentReport {
    std::vector<double> si_data;   ///< per line
    std::vector<double> si_model;  ///< <tanh H_i> under the model
    struct PairMoment {
        int i = 0;
        int j = 0;
        double data = 0.0;   ///< <s_i s_j>
        double model = 0.0;  ///< <tanh(H_i) s_j>
    };
    std::vector<PairMoment> pairs;  ///< all ordered pairs i != j
};

MomentReport moment_report(const InteractionModel& model,
                           const std::vector<NetworkState>& states);

} // namespace cascadelab
