#include "cascadelab/kinetic.hpp"

#include <cmath>
#include <map>

#include "cascadelab/error.hpp"
#include "fit_common.hpp"

namespace cascadelab {

namespace {

class TransitionMerger {
public:
    void add(const NetworkState& prev, const NetworkState& next) {
        auto [it, inserted] = counts_.try_emplace({prev, next}, 0.0);
        it->second += 1.0;
        if (inserted) order_.push_back(&*it);
        ++total_;
    }

    TransitionSet finish() const {
        if (order_.empty()) throw InvariantError("no transitions");
        const std::size_t L = order_.front()->first.first.size();
        TransitionSet set;
        set.total = total_;
        const Eigen::Index u = static_cast<Eigen::Index>(order_.size());
        set.inputs.resize(u, static_cast<Eigen::Index>(L));
        set.targets.resize(u, static_cast<Eigen::Index>(L));
        set.weights.resize(u);
        for (Eigen::Index r = 0; r < u; ++r) {
            const auto& [pair, count] = *order_[static_cast<std::size_t>(r)];
            for (std::size_t j = 0; j < L; ++j) {
                set.inputs(r, static_cast<Eigen::Index>(j)) = pair.first[j];
                set.targets(r, static_cast<Eigen::Index>(j)) = pair.second[j];
            }
            set.weights(r) = count;
        }
        return set;
    }

private:
    using Entry = std::pair<const std::pair<NetworkState, NetworkState>, double>;
    std::map<std::pair<NetworkState, NetworkState>, double> counts_;
    std::vector<const Entry*> order_;
    std::uint64_t total_ = 0;
};

} // namespace

TransitionSet build_transitions(const std::vector<Trajectory>& trajectories) {
    if (trajectories.empty()) throw InvariantError("no trajectories");
    TransitionMerger merger;
    for (const Trajectory& traj : trajectories) {
        for (std::size_t t = 0; t + 1 < traj.states.size(); ++t) {
            merger.add(traj.states[t], traj.states[t + 1]);
        }
        merger.add(traj.states.back(), traj.states.back());
    }
    return merger.finish();
}

TransitionSet transitions_from_pairs(
    const std::vector<std::pair<NetworkState, NetworkState>>& pairs) {
    TransitionMerger merger;
    for (const auto& [prev, next] : pairs) merger.add(prev, next);
    return merger.finish();
}

namespace {

void check_parameters(const std::vector<double>& h,
                      const std::vector<std::vector<double>>& J, int L) {
    if (static_cast<int>(h.size()) != L || static_cast<int>(J.size()) != L) {
        throw InvariantError("parameter size mismatch");
    }
    for (int i = 0; i < L; ++i) {
        if (static_cast<int>(J[static_cast<std::size_t>(i)].size()) != L) {
            throw InvariantError("coupling matrix is not square");
        }
        if (J[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] != 0.0) {
            throw InvariantError("coupling diagonal must be zero");
        }
    }
}

} // namespace

double kinetic_log_likelihood(const std::vector<double>& h,
                              const std::vector<std::vector<double>>& J,
                              const TransitionSet& transitions) {
    const int L = transitions.n_lines();
    check_parameters(h, J, L);
    double total = 0.0;
    for (Eigen::Index r = 0; r < transitions.inputs.rows(); ++r) {
        for (int i = 0; i < L; ++i) {
            double H = h[static_cast<std::size_t>(i)];
            for (int j = 0; j < L; ++j) {
                H += J[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                     transitions.inputs(r, j);
            }
            const double y = transitions.targets(r, i);
            const double abs_h = std::abs(H);
            // ln 2 cosh H, overflow-safe.
            const double ln2cosh = abs_h + std::log1p(std::exp(-2.0 * abs_h));
            total += transitions.weights(r) * (y * H - ln2cosh);
        }
    }
    return total / (static_cast<double>(transitions.total) * L);
}

KineticGradient kinetic_gradient(const std::vector<double>& h,
                                 const std::vector<std::vector<double>>& J,
                                 const TransitionSet& transitions) {
    const int L = transitions.n_lines();
    check_parameters(h, J, L);
    KineticGradient g;
    g.dh.assign(static_cast<std::size_t>(L), 0.0);
    g.dJ.assign(static_cast<std::size_t>(L),
                std::vector<double>(static_cast<std::size_t>(L), 0.0));
    for (Eigen::Index r = 0; r < transitions.inputs.rows(); ++r) {
        for (int i = 0; i < L; ++i) {
            double H = h[static_cast<std::size_t>(i)];
            for (int j = 0; j < L; ++j) {
                H += J[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                     transitions.inputs(r, j);
            }
            const double resid =
                transitions.weights(r) * (transitions.targets(r, i) - std::tanh(H));
            g.dh[static_cast<std::size_t>(i)] += resid;
            for (int j = 0; j < L; ++j) {
                if (j == i) continue;
                g.dJ[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                    resid * transitions.inputs(r, j);
            }
        }
    }
    const double scale = static_cast<double>(transitions.total) * L;
    for (int i = 0; i < L; ++i) {
        g.dh[static_cast<std::size_t>(i)] /= scale;
        for (int j = 0; j < L; ++j) {
            g.dJ[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] /= scale;
        }
    }
    return g;
}

InteractionModel fit_kinetic_model(const std::vector<Trajectory>& trajectories,
                                   const std::vector<std::vector<int>>& distances,
                                   const FitConfig& config,
                                   const std::string& dataset_hash) {
    return fit_kinetic_model(build_transitions(trajectories), distances, config,
                             dataset_hash);
}

InteractionModel fit_kinetic_model(const TransitionSet& transitions,
                                   const std::vector<std::vector<int>>& distances,
                                   const FitConfig& config,
                                   const std::string& dataset_hash) {
    const Eigen::MatrixXd targets = transitions.targets.cast<double>();
    return detail::fit_rows(transitions.inputs, targets, transitions.weights, distances,
                            config, "kinetic", dataset_hash,
                            static_cast<int>(transitions.total));
}

KineticMomentReport kinetic_moment_report(const InteractionModel& model,
                                          const TransitionSet& transitions) {
    const int L = model.n_lines;
    if (transitions.n_lines() != L) throw InvariantError("model/transition size mismatch");
    const Eigen::Index u = transitions.inputs.rows();
    const double T = transitions.weights.sum();

    Eigen::MatrixXd tanh_h(u, L);
    for (Eigen::Index r = 0; r < u; ++r) {
        NetworkState s(static_cast<std::size_t>(L));
        for (int j = 0; j < L; ++j) {
            s[static_cast<std::size_t>(j)] =
                static_cast<std::int8_t>(transitions.inputs(r, j));
        }
        for (int i = 0; i < L; ++i) {
            tanh_h(r, i) = std::tanh(model.local_field(i, s));
        }
    }

    KineticMomentReport report;
    const Eigen::MatrixXd targets = transitions.targets.cast<double>();
    const Eigen::VectorXd w = transitions.weights;
    const Eigen::VectorXd si = (targets.transpose() * w) / T;
    const Eigen::VectorXd ti = (tanh_h.transpose() * w) / T;
    report.si_data.assign(si.data(), si.data() + L);
    report.si_model.assign(ti.data(), ti.data() + L);

    const Eigen::MatrixXd weighted_inputs = transitions.inputs.array().colwise() * w.array();
    const Eigen::MatrixXd data_pair = (targets.transpose() * weighted_inputs) / T;
    const Eigen::MatrixXd model_pair = (tanh_h.transpose() * weighted_inputs) / T;
    for (int i = 0; i < L; ++i) {
        for (int j = 0; j < L; ++j) {
            if (i == j) continue;
            report.pairs.push_back({i, j, data_pair(i, j), model_pair(i, j)});
        }
    }
    return report;
}

} // namespace cascadelab
