#include "cascadelab/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cascadelab/error.hpp"
#include "cascadelab/parallel.hpp"
#include "cascadelab/rng.hpp"

namespace cascadelab {

namespace {

/// Trapezoid area under the (fpr, tpr) path, anchored at (0,0) and (1,1).
double path_auc(std::vector<std::pair<double, double>> path) {
    path.emplace_back(0.0, 0.0);
    path.emplace_back(1.0, 1.0);
    std::sort(path.begin(), path.end());
    double area = 0.0;
    for (std::size_t k = 1; k < path.size(); ++k) {
        area += (path[k].first - path[k - 1].first) * (path[k].second + path[k - 1].second) / 2.0;
    }
    return area;
}

std::vector<double> threshold_grid() {
    std::vector<double> grid(101);
    for (int k = 0; k <= 100; ++k) grid[static_cast<std::size_t>(k)] = k / 100.0;
    return grid;
}

/// Lines sharing a bus with each line, by index.
std::vector<std::vector<int>> bus_adjacent_lines(const Grid& grid) {
    std::vector<std::vector<int>> at_bus(static_cast<std::size_t>(grid.n_buses()));
    for (int e = 0; e < grid.n_lines(); ++e) {
        at_bus[static_cast<std::size_t>(grid.lines[static_cast<std::size_t>(e)].from)].push_back(e);
        at_bus[static_cast<std::size_t>(grid.lines[static_cast<std::size_t>(e)].to)].push_back(e);
    }
    std::vector<std::vector<int>> adjacent(static_cast<std::size_t>(grid.n_lines()));
    for (int e = 0; e < grid.n_lines(); ++e) {
        std::set<int> seen;
        for (int bus : {grid.lines[static_cast<std::size_t>(e)].from,
                        grid.lines[static_cast<std::size_t>(e)].to}) {
            for (int other : at_bus[static_cast<std::size_t>(bus)]) {
                if (other != e) seen.insert(other);
            }
        }
        adjacent[static_cast<std::size_t>(e)].assign(seen.begin(), seen.end());
    }
    return adjacent;
}

} // namespace

RocCurve roc_from_scores(const std::vector<double>& scores, const std::vector<char>& labels) {
    if (scores.size() != labels.size() || scores.empty()) {
        throw InvariantError("roc_from_scores: size mismatch");
    }
    std::size_t n_pos = 0;
    for (char l : labels) n_pos += l ? 1 : 0;
    const std::size_t n_neg = scores.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw InsufficientSampleError("roc_from_scores: one class is empty");
    }

    std::vector<double> thresholds = threshold_grid();
    thresholds.insert(thresholds.end(), scores.begin(), scores.end());
    std::sort(thresholds.begin(), thresholds.end(), std::greater<double>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    std::vector<std::pair<double, char>> samples(scores.size());
    for (std::size_t k = 0; k < scores.size(); ++k) samples[k] = {scores[k], labels[k]};
    std::sort(samples.begin(), samples.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    RocCurve curve;
    std::size_t cursor = 0, tp = 0, fp = 0;
    for (double threshold : thresholds) {
        while (cursor < samples.size() && samples[cursor].first >= threshold) {
            if (samples[cursor].second) {
                ++tp;
            } else {
                ++fp;
            }
            ++cursor;
        }
        curve.points.push_back({threshold, static_cast<double>(fp) / static_cast<double>(n_neg),
                                static_cast<double>(tp) / static_cast<double>(n_pos)});
    }

    std::vector<std::pair<double, double>> path;
    path.reserve(curve.points.size());
    for (const auto& p : curve.points) path.emplace_back(p.fpr, p.tpr);
    curve.auc = path_auc(std::move(path));
    return curve;
}

double predict_line(const InteractionModel& model, const NetworkState& state, int i) {
    return activation_probability(model.local_field(i, state));
}

RocCurve static_prediction_experiment(const Grid& grid, const InteractionModel& model,
                                      const std::vector<Trajectory>& fresh,
                                      int flip_neighbors, std::uint64_t seed, int jobs) {
    if (fresh.empty()) throw InsufficientSampleError("no evaluation trajectories");
    if (flip_neighbors < 0) throw InvariantError("flip_neighbors must be >= 0");
    const std::vector<std::vector<int>> adjacent =
        flip_neighbors > 0 ? bus_adjacent_lines(grid) : std::vector<std::vector<int>>{};

    std::vector<double> scores(fresh.size());
    std::vector<char> labels(fresh.size());
    parallel_for(fresh.size(), jobs, [&](std::size_t k) {
        Rng rng(derive_stream(seed, kStreamPick, k));
        const NetworkState& final_state = fresh[k].final_state();

        const std::int8_t wanted = rng.bernoulli(0.5) ? 1 : -1;
        std::vector<int> candidates;
        for (std::size_t e = 0; e < final_state.size(); ++e) {
            if (final_state[e] == wanted) candidates.push_back(static_cast<int>(e));
        }
        if (candidates.empty()) {
            for (std::size_t e = 0; e < final_state.size(); ++e) {
                candidates.push_back(static_cast<int>(e));
            }
        }
        const int line = candidates[rng.below(candidates.size())];

        NetworkState probe = final_state;
        if (flip_neighbors > 0) {
            std::vector<int> pool = model.support[static_cast<std::size_t>(line)];
            if (static_cast<int>(pool.size()) < flip_neighbors) {
                pool = adjacent[static_cast<std::size_t>(line)];
            }
            const int flips = std::min<int>(flip_neighbors, static_cast<int>(pool.size()));
            for (int f = 0; f < flips; ++f) {
                const std::size_t pick =
                    static_cast<std::size_t>(f) + rng.below(pool.size() - static_cast<std::size_t>(f));
                std::swap(pool[static_cast<std::size_t>(f)], pool[pick]);
                const std::size_t target = static_cast<std::size_t>(pool[static_cast<std::size_t>(f)]);
                probe[target] = static_cast<std::int8_t>(-probe[target]);
            }
        }
        scores[k] = predict_line(model, probe, line);
        labels[k] = final_state[static_cast<std::size_t>(line)] == 1 ? 1 : 0;
    });
    return roc_from_scores(scores, labels);
}

namespace {

bool step_changes(const InteractionModel& model, const NetworkState& state, double threshold) {
    for (int e = 0; e < model.n_lines; ++e) {
        const std::size_t ue = static_cast<std::size_t>(e);
        if (state[ue] == 1) continue;
        if (predict_line(model, state, e) >= threshold) return true;
    }
    return false;
}

} // namespace

Rollout rollout(const InteractionModel& model, const NetworkState& s0, double threshold,
                int horizon) {
    if (static_cast<int>(s0.size()) != model.n_lines) {
        throw InvariantError("rollout: state size mismatch");
    }
    const int cap = 4 * model.n_lines;
    const int steps = horizon < 0 ? cap : std::min(horizon, cap);

    Rollout result;
    result.states.push_back(s0);
    NetworkState current = s0;
    for (int t = 0; t < steps; ++t) {
        NetworkState next = current;
        for (int e = 0; e < model.n_lines; ++e) {
            const std::size_t ue = static_cast<std::size_t>(e);
            if (current[ue] == 1) continue;  // failures are permanent
            next[ue] = predict_line(model, current, e) >= threshold ? 1 : -1;
        }
        if (next == current) return result;
        result.states.push_back(next);
        current = std::move(next);
    }
    if (horizon < 0 || horizon > cap) {
        result.truncated = step_changes(model, current, threshold);
    }
    return result;
}

namespace {

struct Confusion {
    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
};

} // namespace

std::string rollout_mode_name(RolloutMode mode) {
    switch (mode) {
        case RolloutMode::MatchedHorizon: return "matched-horizon";
        case RolloutMode::UntilFixedPoint: return "until-fixed-point";
        case RolloutMode::LongOnly: return "long-only";
    }
    throw InvariantError("unknown rollout mode");
}

RolloutMode rollout_mode_from_name(const std::string& name) {
    if (name == "matched-horizon") return RolloutMode::MatchedHorizon;
    if (name == "until-fixed-point") return RolloutMode::UntilFixedPoint;
    if (name == "long-only") return RolloutMode::LongOnly;
    throw InvariantError("unknown rollout mode '" + name + "'");
}

RocCurve rollout_roc(const InteractionModel& model, const std::vector<Trajectory>& test,
                     RolloutMode mode, int jobs) {
    std::vector<const Trajectory*> kept;
    for (const Trajectory& traj : test) {
        if (mode == RolloutMode::LongOnly && traj.t_ss() < 6) continue;
        kept.push_back(&traj);
    }
    if (kept.empty()) throw InsufficientSampleError("no trajectories pass the mode filter");

    const std::vector<double> grid = threshold_grid();
    std::vector<std::vector<Confusion>> partial(kept.size(),
                                                std::vector<Confusion>(grid.size()));
    parallel_for(kept.size(), jobs, [&](std::size_t k) {
        const Trajectory& traj = *kept[k];
        const NetworkState& s0 = traj.states.front();
        const NetworkState& truth = traj.final_state();
        const int horizon = mode == RolloutMode::MatchedHorizon ? traj.t_ss() : -1;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const Rollout ro = rollout(model, s0, grid[g], horizon);
            const NetworkState& pred = ro.states.back();
            Confusion& c = partial[k][g];
            for (std::size_t e = 0; e < s0.size(); ++e) {
                if (s0[e] == 1) continue;  // seeds are given, not predicted
                const bool truth_pos = truth[e] == 1;
                const bool pred_pos = pred[e] == 1;
                if (truth_pos && pred_pos) ++c.tp;
                else if (!truth_pos && pred_pos) ++c.fp;
                else if (truth_pos && !pred_pos) ++c.fn;
                else ++c.tn;
            }
        }
    });

    std::vector<Confusion> total(grid.size());
    for (const auto& row : partial) {
        for (std::size_t g = 0; g < grid.size(); ++g) {
            total[g].tp += row[g].tp;
            total[g].fp += row[g].fp;
            total[g].fn += row[g].fn;
            total[g].tn += row[g].tn;
        }
    }
    if (total.front().tp + total.front().fn == 0) {
        throw InsufficientSampleError("no line failures beyond the seeds");
    }
    if (total.front().fp + total.front().tn == 0) {
        throw InsufficientSampleError("every line fails in every trajectory");
    }

    RocCurve curve;
    for (std::size_t g = grid.size(); g-- > 0;) {
        const Confusion& c = total[g];
        curve.points.push_back(
            {grid[g], static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn),
             static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn)});
    }
    std::vector<std::pair<double, double>> path;
    path.reserve(curve.points.size());
    for (const auto& p : curve.points) path.emplace_back(p.fpr, p.tpr);
    curve.auc = path_auc(std::move(path));
    return curve;
}

} // namespace cascadelab
