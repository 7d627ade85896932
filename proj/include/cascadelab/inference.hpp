#pragma once

#include <cstdint>
#include <vector>

#include "cascadelab/cascade.hpp"
#include "cascadelab/model.hpp"

namespace cascadelab {

/// Directed influence graph over lines: an edge j -> i with weight e^{4 J_ij}
/// for every retained coupling. All weights are strictly positive and the
/// diagonal is never present.
struct FlowGraph {
    struct Edge {
        int from = 0;
        int to = 0;
        double weight = 0.0;
    };
    int n_nodes = 0;
    std::vector<Edge> edges;
};

FlowGraph build_flow_graph(const InteractionModel& model);

/// For each line j, the number of lines i whose row couples to j.
std::vector<int> influence_degree(const InteractionModel& model);

/// Stationary visit rates of the weighted walk on `graph` with uniform
/// teleportation; dangling mass is also spread uniformly. Sums to one.
std::vector<double> visit_rates(const FlowGraph& graph, double teleport = 0.15);

struct ClusterAssignment {
    std::vector<int> cluster_of;               ///< node -> cluster id, 0 = largest
    std::vector<std::vector<int>> clusters;    ///< size-descending, members sorted
    double codelength = 0.0;                   ///< bits per recorded step
    double singleton_codelength = 0.0;         ///< all-singletons reference value

    int n_clusters() const { return static_cast<int>(clusters.size()); }
};

struct ClusterConfig {
    double teleport = 0.15;
    std::uint64_t seed = 0;
};

/// Two-level map-equation clustering of the directed weighted walk.
/// Teleportation steps are not encoded; only link flows enter the
/// codelength. Greedy node moves plus module aggregation, repeated until no
/// move lowers the codelength. Deterministic for a fixed (graph, seed).
ClusterAssignment cluster_flow_graph(const FlowGraph& graph, const ClusterConfig& config = {});

/// Map-equation value (bits) of an arbitrary assignment; exposed for checks.
double map_equation_codelength(const FlowGraph& graph, const std::vector<int>& cluster_of,
                               double teleport = 0.15);

struct GammaEntry {
    int cluster_id = 0;
    std::vector<int> members;
    double conditional_mean = 0.0;  ///< E[Z_C | Z_C > 0] over final states
    std::vector<double> gamma;      ///< one value per null draw
    double mean = 0.0;
    double median = 0.0;
};

struct GammaReport {
    std::vector<GammaEntry> clusters;
    int n_null = 0;
};

/// Compares each cluster of size >= min_size against random line sets of the
/// same size: gamma = E[Z_C | Z_C > 0] / E[Z_R | Z_R > 0], one value per null
/// draw. Throws ClusterNeverFailsError when a qualifying cluster never fails.
GammaReport gamma_report(const ClusterAssignment& assignment,
                         const std::vector<NetworkState>& finals, int n_null,
                         std::uint64_t seed, int min_size = 5, int jobs = 1);

} // namespace cascadelab
