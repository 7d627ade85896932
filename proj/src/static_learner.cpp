#include "cascadelab/static_learner.hpp"

#include <set>

#include "cascadelab/error.hpp"
#include "fit_common.hpp"

namespace cascadelab {

std::vector<NetworkState> dedup_final_states(const Dataset& dataset) {
    std::set<NetworkState> seen;
    std::vector<NetworkState> unique;
    for (const Trajectory& traj : dataset.trajectories) {
        if (seen.insert(traj.final_state()).second) {
            unique.push_back(traj.final_state());
        }
    }
    return unique;
}

Eigen::MatrixXd build_design(const std::vector<NetworkState>& states) {
    if (states.empty()) throw InvariantError("no states to fit on");
    const Eigen::Index m = static_cast<Eigen::Index>(states.size());
    const Eigen::Index l = static_cast<Eigen::Index>(states.front().size());
    Eigen::MatrixXd X(m, l);
    for (Eigen::Index t = 0; t < m; ++t) {
        const NetworkState& s = states[static_cast<std::size_t>(t)];
        if (static_cast<Eigen::Index>(s.size()) != l) {
            throw InvariantError("ragged state list");
        }
        for (Eigen::Index j = 0; j < l; ++j) {
            X(t, j) = static_cast<double>(s[static_cast<std::size_t>(j)]);
        }
    }
    return X;
}

std::vector<int> threshold_support(const Eigen::VectorXd& j_row, double delta_m,
                                   double delta_p) {
    if (!(delta_m > 0.0 && delta_p > 0.0)) {
        throw InvariantError("thresholds must be positive");
    }
    std::vector<int> support;
    for (Eigen::Index j = 0; j < j_row.size(); ++j) {
        if (j_row(j) >= delta_p || j_row(j) <= -delta_m) {
            support.push_back(static_cast<int>(j));
        }
    }
    return support;
}

InteractionModel fit_static_model(const std::vector<NetworkState>& states,
                                  const std::vector<std::vector<int>>& distances,
                                  const FitConfig& config,
                                  const std::string& dataset_hash) {
    const Eigen::MatrixXd X = build_design(states);
    return detail::fit_rows(X, X, Eigen::VectorXd(), distances, config, "static",
                            dataset_hash, static_cast<int>(states.size()));
}

MomentReport moment_report(const InteractionModel& model,
                           const std::vector<NetworkState>& states) {
    const Eigen::MatrixXd X = build_design(states);
    const Eigen::Index m = X.rows();
    const int L = model.n_lines;
    if (X.cols() != L) throw InvariantError("model/state size mismatch");

    Eigen::MatrixXd T(m, L);  // tanh H_i per state
    for (Eigen::Index t = 0; t < m; ++t) {
        NetworkState s(static_cast<std::size_t>(L));
        for (int j = 0; j < L; ++j) {
            s[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(X(t, j));
        }
        for (int i = 0; i < L; ++i) {
            T(t, i) = std::tanh(model.local_field(i, s));
        }
    }

    MomentReport report;
    const Eigen::VectorXd si = X.colwise().mean();
    const Eigen::VectorXd ti = T.colwise().mean();
    report.si_data.assign(si.data(), si.data() + L);
    report.si_model.assign(ti.data(), ti.data() + L);

    const Eigen::MatrixXd data_pair = (X.transpose() * X) / static_cast<double>(m);
    const Eigen::MatrixXd model_pair = (T.transpose() * X) / static_cast<double>(m);
    for (int i = 0; i < L; ++i) {
        for (int j = 0; j < L; ++j) {
            if (i == j) continue;
            report.pairs.push_back({i, j, data_pair(i, j), model_pair(i, j)});
        }
    }
    return report;
}

} // namespace cascadelab
