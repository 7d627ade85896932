#include "cascadelab/flow.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cascadelab/error.hpp"

namespace cascadelab {

LineMask full_mask(const Grid& grid) {
    return LineMask(static_cast<std::size_t>(grid.n_lines()), 1);
}

std::vector<std::vector<int>> find_islands(const Grid& grid, const LineMask& active) {
    const int n = grid.n_buses();
    if (static_cast<int>(active.size()) != grid.n_lines()) {
        throw InvariantError("line mask size mismatch");
    }
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int e = 0; e < grid.n_lines(); ++e) {
        if (!active[static_cast<std::size_t>(e)]) continue;
        const Line& l = grid.lines[static_cast<std::size_t>(e)];
        adj[static_cast<std::size_t>(l.from)].push_back(l.to);
        adj[static_cast<std::size_t>(l.to)].push_back(l.from);
    }
    std::vector<std::vector<int>> islands;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::vector<int> comp;
        stack.assign(1, start);
        seen[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    stack.push_back(v);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        islands.push_back(std::move(comp));
    }
    return islands;
}

namespace {

constexpr double kBalanceTol = 1e-9;

void note(std::vector<InjectionAdjustment>* record, int bus, double before, double after) {
    if (record && before != after) record->push_back({bus, before, after});
}

} // namespace

std::vector<double> rebalance(const Grid& grid, const std::vector<int>& island,
                              std::vector<double> injections,
                              std::vector<InjectionAdjustment>* record) {
    if (static_cast<int>(injections.size()) != grid.n_buses()) {
        throw InvariantError("injection vector size mismatch");
    }
    auto imbalance = [&] {
        double s = 0.0;
        for (int i : island) s += injections[static_cast<std::size_t>(i)];
        return s;
    };
    double surplus = imbalance();
    if (std::abs(surplus) <= kBalanceTol) return injections;

    std::vector<int> gens;
    for (int i : island) {
        if (grid.buses[static_cast<std::size_t>(i)].is_generator) gens.push_back(i);
    }

    if (surplus < 0.0) {
        double headroom = 0.0;
        for (int g : gens) {
            headroom += grid.buses[static_cast<std::size_t>(g)].gen_max -
                        injections[static_cast<std::size_t>(g)];
        }
        double deficit = -surplus;
        if (deficit > headroom + kBalanceTol) {
            // Shed whole loads, smallest first, until generation can cover the rest.
            std::vector<int> loads;
            for (int i : island) {
                if (injections[static_cast<std::size_t>(i)] < 0.0) loads.push_back(i);
            }
            std::sort(loads.begin(), loads.end(), [&](int a, int b) {
                const double pa = -injections[static_cast<std::size_t>(a)];
                const double pb = -injections[static_cast<std::size_t>(b)];
                return pa != pb ? pa < pb : a < b;
            });
            for (int i : loads) {
                if (deficit <= headroom + kBalanceTol) break;
                const double before = injections[static_cast<std::size_t>(i)];
                injections[static_cast<std::size_t>(i)] = 0.0;
                note(record, i, before, 0.0);
                deficit += before;  // before < 0 reduces the deficit
            }
        }
        surplus = imbalance();
    }

    if (surplus < -kBalanceTol) {
        // Ramp generators up, proportional to remaining headroom.
        double headroom = 0.0;
        for (int g : gens) {
            headroom += grid.buses[static_cast<std::size_t>(g)].gen_max -
                        injections[static_cast<std::size_t>(g)];
        }
        const double need = -surplus;
        if (headroom <= 0.0 || need > headroom + 1e-6) {
            throw InvariantError("island deficit exceeds generation headroom after shedding");
        }
        const double f = need / headroom;
        for (int g : gens) {
            const double before = injections[static_cast<std::size_t>(g)];
            const double head = grid.buses[static_cast<std::size_t>(g)].gen_max - before;
            if (head <= 0.0) continue;
            injections[static_cast<std::size_t>(g)] = before + f * head;
            note(record, g, before, injections[static_cast<std::size_t>(g)]);
        }
    } else if (surplus > kBalanceTol) {
        // Ramp generators down, proportional to current output.
        double total = 0.0;
        for (int g : gens) total += injections[static_cast<std::size_t>(g)];
        if (total < surplus - 1e-6) {
            throw InvariantError("island surplus exceeds total generation");
        }
        const double f = total > 0.0 ? (total - surplus) / total : 0.0;
        for (int g : gens) {
            const double before = injections[static_cast<std::size_t>(g)];
            if (before == 0.0) continue;
            injections[static_cast<std::size_t>(g)] = f * before;
            note(record, g, before, injections[static_cast<std::size_t>(g)]);
        }
    }
    return injections;
}

namespace {

FlowSolution solve_with_islands(const Grid& grid, const LineMask& active,
                                const std::vector<double>& injections,
                                std::vector<std::vector<int>> islands) {
    const int n = grid.n_buses();
    if (static_cast<int>(injections.size()) != n) {
        throw InvariantError("injection vector size mismatch");
    }
    FlowSolution sol;
    sol.theta.assign(static_cast<std::size_t>(n), 0.0);
    sol.flows.assign(static_cast<std::size_t>(grid.n_lines()), 0.0);

    std::vector<int> island_of(static_cast<std::size_t>(n), -1);
    for (std::size_t k = 0; k < islands.size(); ++k) {
        for (int i : islands[k]) island_of[static_cast<std::size_t>(i)] = static_cast<int>(k);
    }

    for (const std::vector<int>& island : islands) {
        double sum = 0.0;
        for (int i : island) sum += injections[static_cast<std::size_t>(i)];
        if (std::abs(sum) > 1e-6) {
            throw UnbalancedIslandError("island containing bus " +
                                        std::to_string(grid.buses[static_cast<std::size_t>(island[0])].id) +
                                        " is unbalanced by " + std::to_string(sum) + " MW");
        }
        const int m = static_cast<int>(island.size());
        if (m == 1) continue;  // theta stays 0, no lines

        int ref = island[0];
        if (island_of[static_cast<std::size_t>(grid.slack_bus)] ==
            island_of[static_cast<std::size_t>(island[0])]) {
            ref = grid.slack_bus;
        }
        // Position of each island bus in the reduced system; ref excluded.
        std::vector<int> pos(static_cast<std::size_t>(n), -1);
        int idx = 0;
        for (int i : island) {
            if (i != ref) pos[static_cast<std::size_t>(i)] = idx++;
        }

        Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(m - 1, m - 1);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m - 1);
        for (int e = 0; e < grid.n_lines(); ++e) {
            if (!active[static_cast<std::size_t>(e)]) continue;
            const Line& l = grid.lines[static_cast<std::size_t>(e)];
            if (island_of[static_cast<std::size_t>(l.from)] !=
                island_of[static_cast<std::size_t>(island[0])]) {
                continue;
            }
            const int a = pos[static_cast<std::size_t>(l.from)];
            const int b = pos[static_cast<std::size_t>(l.to)];
            if (a >= 0) lap(a, a) += l.susceptance;
            if (b >= 0) lap(b, b) += l.susceptance;
            if (a >= 0 && b >= 0) {
                lap(a, b) -= l.susceptance;
                lap(b, a) -= l.susceptance;
            }
        }
        for (int i : island) {
            const int a = pos[static_cast<std::size_t>(i)];
            if (a >= 0) rhs(a) = injections[static_cast<std::size_t>(i)];
        }
        Eigen::LDLT<Eigen::MatrixXd> ldlt(lap);
        if (ldlt.info() != Eigen::Success) {
            throw InvariantError("reduced Laplacian factorization failed");
        }
        const Eigen::VectorXd theta = ldlt.solve(rhs);
        for (int i : island) {
            const int a = pos[static_cast<std::size_t>(i)];
            sol.theta[static_cast<std::size_t>(i)] = a >= 0 ? theta(a) : 0.0;
        }
    }

    for (int e = 0; e < grid.n_lines(); ++e) {
        if (!active[static_cast<std::size_t>(e)]) continue;
        const Line& l = grid.lines[static_cast<std::size_t>(e)];
        sol.flows[static_cast<std::size_t>(e)] =
            l.susceptance * (sol.theta[static_cast<std::size_t>(l.from)] -
                             sol.theta[static_cast<std::size_t>(l.to)]);
    }
    sol.islands = std::move(islands);
    return sol;
}

} // namespace

FlowSolution solve_flows(const Grid& grid, const LineMask& active,
                         const std::vector<double>& injections) {
    return solve_with_islands(grid, active, injections, find_islands(grid, active));
}

FlowSolution solve_rebalanced(const Grid& grid, const LineMask& active,
                              const std::vector<double>& injections) {
    auto islands = find_islands(grid, active);
    std::vector<InjectionAdjustment> record;
    std::vector<double> adjusted = injections;
    for (const auto& island : islands) {
        adjusted = rebalance(grid, island, std::move(adjusted), &record);
    }
    FlowSolution sol = solve_with_islands(grid, active, adjusted, std::move(islands));
    sol.shed_record = std::move(record);
    return sol;
}

} // namespace cascadelab
