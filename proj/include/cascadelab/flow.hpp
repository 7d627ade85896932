#pragma once

#include <vector>

#include "cascadelab/grid.hpp"

namespace cascadelab {

/// 1 = line in service. Size n_lines.
using LineMask = std::vector<char>;

LineMask full_mask(const Grid& grid);

/// One injection change applied during rebalancing.
struct InjectionAdjustment {
    int bus = 0;
    double before = 0.0;
    double after = 0.0;
};

struct FlowSolution {
    std::vector<double> theta;  ///< per bus; each island's reference bus at 0
    std::vector<double> flows;  ///< per line; 0 for out-of-service lines
    std::vector<std::vector<int>> islands;
    std::vector<InjectionAdjustment> shed_record;
};

/// Connected components of the bus graph restricted to active lines.
/// Islands are ordered by their smallest bus index; buses sorted ascending.
std::vector<std::vector<int>> find_islands(const Grid& grid, const LineMask& active);

/// Balances one island: proportional generator ramping within [0, gen_max];
/// when the deficit exceeds ramp-up headroom, loads are shed whole in
/// ascending |p| order until the remainder is coverable. Returns the adjusted
/// full-length injection vector; appends every change to `record` if given.
std::vector<double> rebalance(const Grid& grid, const std::vector<int>& island,
                              std::vector<double> injections,
                              std::vector<InjectionAdjustment>* record = nullptr);

/// DC flow solution via the per-island reduced Laplacian (reference bus
/// grounded; slack bus when present, else the island's smallest bus index).
/// Requires injections balanced per island within 1e-6, else throws
/// UnbalancedIslandError.
FlowSolution solve_flows(const Grid& grid, const LineMask& active,
                         const std::vector<double>& injections);

/// find_islands + rebalance per island + solve_flows, in one call.
FlowSolution solve_rebalanced(const Grid& grid, const LineMask& active,
                              const std::vector<double>& injections);

} // namespace cascadelab
