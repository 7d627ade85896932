#include "cascadelab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "cascadelab/error.hpp"
#include "cascadelab/flow.hpp"

namespace cascadelab {

namespace {

std::vector<std::vector<int>> bus_distances(const Grid& grid) {
    const int n = grid.n_buses();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const Line& l : grid.lines) {
        adj[static_cast<std::size_t>(l.from)].push_back(l.to);
        adj[static_cast<std::size_t>(l.to)].push_back(l.from);
    }
    std::vector<std::vector<int>> dist(static_cast<std::size_t>(n),
                                       std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int src = 0; src < n; ++src) {
        auto& d = dist[static_cast<std::size_t>(src)];
        d[static_cast<std::size_t>(src)] = 0;
        std::deque<int> queue{src};
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (d[static_cast<std::size_t>(v)] < 0) {
                    d[static_cast<std::size_t>(v)] = d[static_cast<std::size_t>(u)] + 1;
                    queue.push_back(v);
                }
            }
        }
        for (int v : d) {
            if (v < 0) throw DisconnectedError("grid is not connected");
        }
    }
    return dist;
}

} // namespace

std::vector<std::vector<int>> edge_distance(const Grid& grid) {
    const auto bus_d = bus_distances(grid);
    const int L = grid.n_lines();
    std::vector<std::vector<int>> d(static_cast<std::size_t>(L),
                                    std::vector<int>(static_cast<std::size_t>(L), 0));
    for (int e = 0; e < L; ++e) {
        const Line& a = grid.lines[static_cast<std::size_t>(e)];
        for (int f = e + 1; f < L; ++f) {
            const Line& b = grid.lines[static_cast<std::size_t>(f)];
            int best = bus_d[static_cast<std::size_t>(a.from)][static_cast<std::size_t>(b.from)];
            best = std::min(best, bus_d[static_cast<std::size_t>(a.from)][static_cast<std::size_t>(b.to)]);
            best = std::min(best, bus_d[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(b.from)]);
            best = std::min(best, bus_d[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(b.to)]);
            d[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)] = best + 1;
            d[static_cast<std::size_t>(f)][static_cast<std::size_t>(e)] = best + 1;
        }
    }
    return d;
}

double lodf(const Grid& grid, int e, int ehat) {
    const int L = grid.n_lines();
    if (e < 0 || e >= L || ehat < 0 || ehat >= L || e == ehat) {
        throw InvariantError("lodf needs two distinct line indices");
    }
    const std::vector<double> p = grid.injections();
    const LineMask all = full_mask(grid);
    const FlowSolution base = solve_flows(grid, all, p);
    const double f_e = base.flows[static_cast<std::size_t>(e)];
    if (std::abs(f_e) < 1e-12) {
        throw ZeroFlowError("line " + std::to_string(e) + " carries no flow");
    }
    LineMask mask = all;
    mask[static_cast<std::size_t>(e)] = 0;
    const auto islands = find_islands(grid, mask);
    if (islands.size() != base.islands.size()) {
        throw BridgeRemovalError("removing line " + std::to_string(e) +
                                 " disconnects the network");
    }
    const FlowSolution after = solve_flows(grid, mask, p);
    return (after.flows[static_cast<std::size_t>(ehat)] - base.flows[static_cast<std::size_t>(ehat)]) / f_e;
}

namespace {

double pearson_over(const std::vector<const NetworkState*>& rows, int i, int j) {
    const double n = static_cast<double>(rows.size());
    double mi = 0.0, mj = 0.0;
    for (const NetworkState* s : rows) {
        mi += (*s)[static_cast<std::size_t>(i)];
        mj += (*s)[static_cast<std::size_t>(j)];
    }
    mi /= n;
    mj /= n;
    double cij = 0.0, cii = 0.0, cjj = 0.0;
    for (const NetworkState* s : rows) {
        const double xi = (*s)[static_cast<std::size_t>(i)] - mi;
        const double xj = (*s)[static_cast<std::size_t>(j)] - mj;
        cij += xi * xj;
        cii += xi * xi;
        cjj += xj * xj;
    }
    if (cii <= 0.0 || cjj <= 0.0) {
        throw ZeroVarianceError("line state is constant in the sample");
    }
    return cij / std::sqrt(cii * cjj);
}

} // namespace

double pearson(const std::vector<NetworkState>& states, int i, int j) {
    if (states.empty()) throw InsufficientSampleError("empty sample");
    std::vector<const NetworkState*> rows;
    rows.reserve(states.size());
    for (const NetworkState& s : states) rows.push_back(&s);
    return pearson_over(rows, i, j);
}

double conditional_pearson(const std::vector<NetworkState>& states, int i, int j,
                           int k, int s_k) {
    if (s_k != 1 && s_k != -1) throw InvariantError("conditioning state must be +1 or -1");
    std::vector<const NetworkState*> rows;
    for (const NetworkState& s : states) {
        if (s[static_cast<std::size_t>(k)] == s_k) rows.push_back(&s);
    }
    if (rows.size() < 30) {
        throw InsufficientSampleError("conditioning subsample has " +
                                      std::to_string(rows.size()) + " records, need 30");
    }
    return pearson_over(rows, i, j);
}

} // namespace cascadelab
