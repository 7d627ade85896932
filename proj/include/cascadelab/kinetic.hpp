#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "cascadelab/cascade.hpp"
#include "cascadelab/model.hpp"

namespace cascadelab {

/// Consecutive-state pairs pooled over trajectories, with the steady state's
/// self-transition included once per trajectory. Identical pairs are merged;
/// `weights` carries multiplicities and `total` the raw transition count
/// T = sum_m (1 + t_ss^m).
struct TransitionSet {
    Eigen::MatrixXd inputs;  ///< U x L, s(t)
    Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic> targets;  ///< s(t+1)
    Eigen::VectorXd weights;
    std::uint64_t total = 0;

    int n_lines() const { return static_cast<int>(inputs.cols()); }
};

TransitionSet build_transitions(const std::vector<Trajectory>& trajectories);

/// Merge an explicit pair list (no terminal repeats added).
TransitionSet transitions_from_pairs(
    const std::vector<std::pair<NetworkState, NetworkState>>& pairs);

/// Mean log-likelihood per line per transition:
/// (1/(T L)) sum_t sum_i [s_i(t+1) H_i(t) - ln 2 cosh H_i(t)].
double kinetic_log_likelihood(const std::vector<double>& h,
                              const std::vector<std::vector<double>>& J,
                              const TransitionSet& transitions);

struct KineticGradient {
    std::vector<double> dh;
    std::vector<std::vector<double>> dJ;  ///< zero diagonal
};

/// Gradient of kinetic_log_likelihood (same per-line-per-transition scale).
KineticGradient kinetic_gradient(const std::vector<double>& h,
                                 const std::vector<std::vector<double>>& J,
                                 const TransitionSet& transitions);

/// Two-stage fit of the kinetic model over deduplicated trajectories.
InteractionModel fit_kinetic_model(const std::vector<Trajectory>& trajectories,
                                   const std::vector<std::vector<int>>& distances,
                                   const FitConfig& config,
                                   const std::string& dataset_hash = "");

InteractionModel fit_kinetic_model(const TransitionSet& transitions,
                                   const std::vector<std::vector<int>>& distances,
                                   const FitConfig& config,
                                   const std::string& dataset_hash = "");

struct KineticMomentReport {
    std::vector<double> si_data;   ///< <s_i(t+1)>
    std::vector<double> si_model;  ///< <tanh H_i(t)>
    struct PairMoment {
        int i = 0;
        int j = 0;
        double data = 0.0;   ///< <s_j(t) s_i(t+1)>
        double model = 0.0;  ///< <s_j(t) tanh H_i(t)>
    };
    std::vector<PairMoment> pairs;
};

KineticMomentReport kinetic_moment_report(const InteractionModel& model,
                                          const TransitionSet& transitions);

} // namespace cascadelab
