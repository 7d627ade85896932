#pragma once

#include <string>

#include "cascadelab/grid.hpp"
#include "cascadelab/rng.hpp"

namespace fixtures {

// Three-bus ring, unit susceptances: 1 MW injected at bus 1, consumed at
// bus 2. Base flows are f(1,2) = 2/3, f(1,3) = 1/3, f(3,2) = 1/3, so the
// 0.9 MW rating on line 0 survives the base case but not the loss of line 1.
inline const char* kTriangleCase =
    "# three-bus ring\n"
    "BUS\n"
    "1 0\n"
    "2 1\n"
    "3 0\n"
    "GEN\n"
    "1 1 2\n"
    "BRANCH\n"
    "1 2 1 0.9\n"
    "1 3 1 2\n"
    "3 2 1 2\n";

cascadelab::Grid make_triangle();

/// Connected random grid: spanning tree plus extra edges, positive random
/// susceptances, balanced injections, generators able to absorb rebalancing.
cascadelab::Grid random_grid(cascadelab::Rng& rng, int n_buses, int extra_lines);

std::string repo_path(const std::string& relative);

} // namespace fixtures
