#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cascadelab/cascade.hpp"
#include "cascadelab/grid.hpp"
#include "cascadelab/model.hpp"

namespace cascadelab {

struct RocPoint {
    double threshold = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

/// Points ordered by descending threshold, so both rates grow along the
/// vector. auc integrates the (fpr, tpr) path by trapezoids.
struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

/// Builds a curve from per-sample scores: positive prediction iff
/// score >= threshold. Thresholds = 101-point grid on [0,1] plus every
/// distinct score. Throws InsufficientSampleError unless both classes occur.
RocCurve roc_from_scores(const std::vector<double>& scores, const std::vector<char>& labels);

/// Pr(s_i = +1) given everyone else's state; the i-th entry is ignored.
double predict_line(const InteractionModel& model, const NetworkState& state, int i);

/// Per trajectory: pick a failed or surviving line with equal probability
/// from the final state, optionally flip `flip_neighbors` coupled lines
/// (model support first, bus adjacency when the support is thin), and score
/// the true state of the picked line. Picks draw from the (seed, pick)
/// stream, away from any trajectory-generation domain.
RocCurve static_prediction_experiment(const Grid& grid, const InteractionModel& model,
                                      const std::vector<Trajectory>& fresh,
                                      int flip_neighbors, std::uint64_t seed, int jobs = 1);

struct Rollout {
    std::vector<NetworkState> states;  ///< s(0) first, final prediction last
    bool truncated = false;            ///< horizon cap hit before a fixed point
};

/// Deterministic threshold dynamics of a kinetic model: a line fails when its
/// predicted failure probability reaches `threshold`, and failed lines stay
/// failed. horizon < 0 iterates to the first fixed point (cap 4L steps).
Rollout rollout(const InteractionModel& model, const NetworkState& s0, double threshold,
                int horizon);

enum class RolloutMode {
    MatchedHorizon,   ///< predict exactly t_ss steps per trajectory
    UntilFixedPoint,  ///< iterate to the model's fixed point
    LongOnly,         ///< fixed-point rollouts on trajectories with t_ss >= 6
};

std::string rollout_mode_name(RolloutMode mode);
RolloutMode rollout_mode_from_name(const std::string& name);

/// Sweeps 101 thresholds; per threshold, compares predicted vs true final
/// failures over every line not already failed at t = 0.
RocCurve rollout_roc(const InteractionModel& model, const std::vector<Trajectory>& test,
                     RolloutMode mode, int jobs = 1);

} // namespace cascadelab
