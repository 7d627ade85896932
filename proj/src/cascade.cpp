#include "cascadelab/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cascadelab/error.hpp"
#include "cascadelab/parallel.hpp"

namespace cascadelab {

std::string variant_name(Variant v) { return v == Variant::D1 ? "D1" : "D2"; }

Variant variant_from_name(const std::string& name) {
    if (name == "D1") return Variant::D1;
    if (name == "D2") return Variant::D2;
    throw InvariantError("unknown dataset variant '" + name + "'");
}

NetworkState state_from_failures(int n_lines, const std::vector<int>& failed) {
    NetworkState s(static_cast<std::size_t>(n_lines), -1);
    for (int e : failed) {
        if (e < 0 || e >= n_lines) throw InvariantError("failure index out of range");
        s[static_cast<std::size_t>(e)] = 1;
    }
    return s;
}

LineMask active_mask(const NetworkState& state) {
    LineMask m(state.size());
    for (std::size_t e = 0; e < state.size(); ++e) m[e] = state[e] == -1 ? 1 : 0;
    return m;
}

int cascade_size(const NetworkState& state) {
    int z = 0;
    for (std::int8_t s : state) {
        if (s != 1 && s != -1) throw InvariantError("state entries must be +1 or -1");
        z += (1 + s) / 2;
    }
    return z;
}

std::vector<int> seed_failures(Rng& rng, int n_lines, double p_f) {
    if (!(p_f > 0.0 && p_f < 1.0)) throw InvariantError("p_f must lie in (0,1)");
    std::vector<int> failed;
    while (failed.empty()) {
        for (int e = 0; e < n_lines; ++e) {
            if (rng.bernoulli(p_f)) failed.push_back(e);
        }
    }
    return failed;
}

NetworkState step(const Grid& grid, const NetworkState& state) {
    if (static_cast<int>(state.size()) != grid.n_lines()) {
        throw InvariantError("state size mismatch");
    }
    const FlowSolution sol = solve_rebalanced(grid, active_mask(state), grid.injections());
    NetworkState next = state;
    for (int e = 0; e < grid.n_lines(); ++e) {
        const std::size_t ue = static_cast<std::size_t>(e);
        if (state[ue] == 1) continue;
        if (std::abs(sol.flows[ue]) > grid.lines[ue].capacity) next[ue] = 1;
    }
    return next;
}

Trajectory run_trajectory(const Grid& grid, const std::vector<int>& initial,
                          std::uint64_t seed) {
    if (initial.empty()) throw InvariantError("initial failure set is empty");
    Trajectory traj;
    traj.seed = seed;
    traj.initial = initial;
    std::sort(traj.initial.begin(), traj.initial.end());
    traj.initial.erase(std::unique(traj.initial.begin(), traj.initial.end()),
                       traj.initial.end());

    NetworkState s = state_from_failures(grid.n_lines(), traj.initial);
    traj.states.push_back(s);
    for (int t = 0; t < grid.n_lines(); ++t) {
        NetworkState next = step(grid, s);
        for (std::size_t e = 0; e < s.size(); ++e) {
            if (s[e] == 1 && next[e] != 1) throw InvariantError("failure repaired mid-cascade");
        }
        if (next == s) break;
        traj.states.push_back(next);
        s = std::move(next);
    }
    return traj;
}

Dataset generate_dataset(const Grid& grid, int m_target, double p_f, Variant variant,
                         std::uint64_t seed, int jobs, std::uint64_t tag) {
    if (m_target < 1) throw InvariantError("M_target must be >= 1");
    Dataset ds;
    ds.variant = variant;
    ds.grid_hash = grid.fingerprint();
    ds.p_f = p_f;
    ds.seed = seed;

    std::set<std::vector<int>> seen;
    std::uint64_t next_index = 0;
    const std::size_t chunk = std::max<std::size_t>(64, static_cast<std::size_t>(jobs) * 16);

    while (static_cast<int>(ds.trajectories.size()) < m_target) {
        std::vector<Trajectory> batch(chunk);
        const std::uint64_t base = next_index;
        parallel_for(chunk, jobs, [&](std::size_t k) {
            const std::uint64_t stream = derive_stream(seed, tag, base + k);
            Rng rng(stream);
            batch[k] = run_trajectory(grid, seed_failures(rng, grid.n_lines(), p_f), stream);
        });
        next_index += chunk;
        for (Trajectory& traj : batch) {
            if (static_cast<int>(ds.trajectories.size()) >= m_target) break;
            ++ds.draws;
            if (traj.propagated()) ++ds.propagating_draws;
            if (variant == Variant::D2 && !traj.propagated()) continue;
            if (!seen.insert(traj.initial).second) {
                ++ds.duplicates_skipped;
                continue;
            }
            ds.trajectories.push_back(std::move(traj));
        }
    }
    return ds;
}

} // namespace cascadelab
