#pragma once

#include <vector>

#include "cascadelab/cascade.hpp"
#include "cascadelab/grid.hpp"

namespace cascadelab {

/// Edge distances d[e][ehat] = 1 + min hop count between endpoints;
/// d[e][e] = 0. Requires the full grid to be connected.
std::vector<std::vector<int>> edge_distance(const Grid& grid);

/// Line outage distribution factor (f'_ehat - f_ehat) / f_e, where f' is the
/// flow after removing line e with unchanged injections.
double lodf(const Grid& grid, int e, int ehat);

double pearson(const std::vector<NetworkState>& states, int i, int j);

/// Pearson over the subsample where line k has state s_k (+1 or -1).
/// Requires >= 30 matching records.
double conditional_pearson(const std::vector<NetworkState>& states, int i, int j,
                           int k, int s_k);

} // namespace cascadelab
