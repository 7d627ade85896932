#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cascadelab/flow.hpp"
#include "cascadelab/grid.hpp"
#include "cascadelab/rng.hpp"

namespace cascadelab {

/// Per-line state, +1 = failed, -1 = in service.
using NetworkState = std::vector<std::int8_t>;

enum class Variant { D1, D2 };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct Trajectory {
    std::uint64_t seed = 0;           ///< derived per-trajectory stream seed
    std::vector<int> initial;         ///< sorted initial failure indices
    std::vector<NetworkState> states; ///< s(0)..s(t_ss), first fixed point last

    int t_ss() const { return static_cast<int>(states.size()) - 1; }
    bool propagated() const { return states.size() > 1; }
    const NetworkState& final_state() const { return states.back(); }
};

struct Dataset {
    Variant variant = Variant::D1;
    std::string grid_hash;
    double p_f = 0.0;
    std::uint64_t seed = 0;
    std::vector<Trajectory> trajectories;

    // draw accounting, over all seeded attempts
    std::uint64_t draws = 0;
    std::uint64_t propagating_draws = 0;
    std::uint64_t duplicates_skipped = 0;

    double propagation_fraction() const {
        return draws ? static_cast<double>(propagating_draws) / static_cast<double>(draws) : 0.0;
    }
};

NetworkState state_from_failures(int n_lines, const std::vector<int>& failed);
LineMask active_mask(const NetworkState& state);
int cascade_size(const NetworkState& state);

/// Independent Bernoulli(p_f) per line; empty draws are redrawn.
std::vector<int> seed_failures(Rng& rng, int n_lines, double p_f);

/// One synchronous cascade generation: islands on surviving lines, rebalance,
/// solve flows, and fail every line with |f_e| > c_e. Failed lines stay failed.
/// Injections are recomputed from the grid's nominal values each call.
NetworkState step(const Grid& grid, const NetworkState& state);

/// Iterates step() until a fixed point; states holds s(0) through the first
/// fixed point, so t_ss = states.size()-1 and step(s(t_ss)) = s(t_ss).
Trajectory run_trajectory(const Grid& grid, const std::vector<int>& initial,
                          std::uint64_t seed = 0);

/// First M_target accepted trajectories in draw-index order. D1 dedups by
/// initial-failure set; D2 additionally requires >= 1 consecutive failure.
/// `tag` selects the seed domain, keeping training and evaluation draws
/// disjoint for the same base seed.
Dataset generate_dataset(const Grid& grid, int m_target, double p_f, Variant variant,
                         std::uint64_t seed, int jobs = 1,
                         std::uint64_t tag = kStreamTrain);

} // namespace cascadelab
