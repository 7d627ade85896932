#include "cascadelab/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "cascadelab/error.hpp"
#include "cascadelab/parallel.hpp"
#include "cascadelab/rng.hpp"

namespace cascadelab {

namespace {

double plogp(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

/// Internal walk representation. Aggregated levels may carry self-loops;
/// they stay inside a module and never count toward exit flow.
struct WalkNetwork {
    std::vector<double> p;                                   ///< node visit rates
    std::vector<std::vector<std::pair<int, double>>> out;    ///< link flows i -> j
    std::vector<std::vector<std::pair<int, double>>> in;     ///< reversed view

    int size() const { return static_cast<int>(p.size()); }
};

/// PageRank-style power iteration; teleport and dangling mass spread
/// uniformly over nodes.
std::vector<double> stationary_rates(int n, const std::vector<FlowGraph::Edge>& edges,
                                     double teleport) {
    std::vector<double> strength(static_cast<std::size_t>(n), 0.0);
    for (const auto& e : edges) strength[static_cast<std::size_t>(e.from)] += e.weight;

    std::vector<double> pi(static_cast<std::size_t>(n), 1.0 / n);
    std::vector<double> next(static_cast<std::size_t>(n), 0.0);
    for (int iter = 0; iter < 100000; ++iter) {
        double dangling = 0.0;
        for (int i = 0; i < n; ++i) {
            if (strength[static_cast<std::size_t>(i)] == 0.0) {
                dangling += pi[static_cast<std::size_t>(i)];
            }
        }
        const double base = (teleport + (1.0 - teleport) * dangling) / n;
        std::fill(next.begin(), next.end(), base);
        for (const auto& e : edges) {
            next[static_cast<std::size_t>(e.to)] += (1.0 - teleport) *
                pi[static_cast<std::size_t>(e.from)] * e.weight /
                strength[static_cast<std::size_t>(e.from)];
        }
        double delta = 0.0;
        for (int i = 0; i < n; ++i) {
            delta += std::abs(next[static_cast<std::size_t>(i)] - pi[static_cast<std::size_t>(i)]);
        }
        pi.swap(next);
        if (delta < 1e-14) break;
    }
    return pi;
}

/// Link flows of the teleported walk with teleportation steps dropped and the
/// remainder renormalized; node rates are then in-flows, so nodes that are
/// never entered by a link carry zero weight in the codelength.
WalkNetwork walk_network(const FlowGraph& graph, double teleport) {
    const int n = graph.n_nodes;
    const std::vector<double> pi = stationary_rates(n, graph.edges, teleport);
    std::vector<double> strength(static_cast<std::size_t>(n), 0.0);
    for (const auto& e : graph.edges) strength[static_cast<std::size_t>(e.from)] += e.weight;

    WalkNetwork net;
    net.p.assign(static_cast<std::size_t>(n), 0.0);
    net.out.assign(static_cast<std::size_t>(n), {});
    net.in.assign(static_cast<std::size_t>(n), {});

    double total = 0.0;
    for (const auto& e : graph.edges) {
        total += pi[static_cast<std::size_t>(e.from)] * e.weight /
                 strength[static_cast<std::size_t>(e.from)];
    }
    if (total <= 0.0) return net;

    for (const auto& e : graph.edges) {
        const double flow = pi[static_cast<std::size_t>(e.from)] * e.weight /
                            (strength[static_cast<std::size_t>(e.from)] * total);
        net.out[static_cast<std::size_t>(e.from)].emplace_back(e.to, flow);
        net.in[static_cast<std::size_t>(e.to)].emplace_back(e.from, flow);
        net.p[static_cast<std::size_t>(e.to)] += flow;
    }
    return net;
}

struct Partition {
    std::vector<int> module_of;
    std::vector<double> exit;    ///< per-module exit flow
    std::vector<double> inside;  ///< per-module total node flow
    double exit_total = 0.0;
};

Partition singletons(const WalkNetwork& net) {
    const int n = net.size();
    Partition part;
    part.module_of.resize(static_cast<std::size_t>(n));
    part.exit.assign(static_cast<std::size_t>(n), 0.0);
    part.inside.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        part.module_of[static_cast<std::size_t>(i)] = i;
        part.inside[static_cast<std::size_t>(i)] = net.p[static_cast<std::size_t>(i)];
        for (const auto& [j, flow] : net.out[static_cast<std::size_t>(i)]) {
            if (j != i) part.exit[static_cast<std::size_t>(i)] += flow;
        }
        part.exit_total += part.exit[static_cast<std::size_t>(i)];
    }
    return part;
}

double codelength(const Partition& part) {
    double sum_exit = 0.0, sum_both = 0.0;
    for (std::size_t m = 0; m < part.exit.size(); ++m) {
        sum_exit += plogp(part.exit[m]);
        sum_both += plogp(part.exit[m] + part.inside[m]);
    }
    return plogp(part.exit_total) - 2.0 * sum_exit + sum_both;
}

/// The node-rate entropy term is constant across partitions, so moves are
/// scored without it; it is added back when reporting bits.
double node_term(const WalkNetwork& net) {
    double s = 0.0;
    for (double p : net.p) s += plogp(p);
    return -s;
}

/// One Louvain-style sweep: visit nodes in shuffled order, moving each to the
/// neighboring module that lowers the codelength the most. Returns whether
/// any move was accepted.
bool local_moves(const WalkNetwork& net, Partition& part, Rng& rng) {
    const int n = net.size();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        std::swap(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i + 1)))]);
    }

    bool any = false;
    bool moved = true;
    int sweeps = 0;
    while (moved && sweeps < 200) {
        moved = false;
        ++sweeps;
        for (int u : order) {
            const int a = part.module_of[static_cast<std::size_t>(u)];
            const double pu = net.p[static_cast<std::size_t>(u)];

            double out_ext = 0.0, in_ext = 0.0;
            std::unordered_map<int, double> to_mod, from_mod;
            for (const auto& [v, flow] : net.out[static_cast<std::size_t>(u)]) {
                if (v == u) continue;
                out_ext += flow;
                to_mod[part.module_of[static_cast<std::size_t>(v)]] += flow;
            }
            for (const auto& [v, flow] : net.in[static_cast<std::size_t>(u)]) {
                if (v == u) continue;
                in_ext += flow;
                from_mod[part.module_of[static_cast<std::size_t>(v)]] += flow;
            }

            const double exit_a_without =
                part.exit[static_cast<std::size_t>(a)] - out_ext + to_mod[a] + from_mod[a];

            // Candidate modules: anywhere u exchanges flow with.
            std::vector<int> candidates;
            for (const auto& [m, f] : to_mod) {
                if (m != a) candidates.push_back(m);
            }
            for (const auto& [m, f] : from_mod) {
                if (m != a && to_mod.find(m) == to_mod.end()) candidates.push_back(m);
            }
            std::sort(candidates.begin(), candidates.end());

            int best = a;
            double best_delta = -1e-12;
            for (int b : candidates) {
                const double exit_b_with = part.exit[static_cast<std::size_t>(b)] + out_ext -
                                           to_mod[b] - from_mod[b];
                const double da = exit_a_without - part.exit[static_cast<std::size_t>(a)];
                const double db = exit_b_with - part.exit[static_cast<std::size_t>(b)];
                double delta = plogp(part.exit_total + da + db) - plogp(part.exit_total);
                delta -= 2.0 * (plogp(exit_a_without) - plogp(part.exit[static_cast<std::size_t>(a)]) +
                                plogp(exit_b_with) - plogp(part.exit[static_cast<std::size_t>(b)]));
                delta += plogp(exit_a_without + part.inside[static_cast<std::size_t>(a)] - pu) -
                         plogp(part.exit[static_cast<std::size_t>(a)] +
                               part.inside[static_cast<std::size_t>(a)]);
                delta += plogp(exit_b_with + part.inside[static_cast<std::size_t>(b)] + pu) -
                         plogp(part.exit[static_cast<std::size_t>(b)] +
                               part.inside[static_cast<std::size_t>(b)]);
                if (delta < best_delta) {
                    best_delta = delta;
                    best = b;
                }
            }

            if (best != a) {
                const double exit_b_with = part.exit[static_cast<std::size_t>(best)] + out_ext -
                                           to_mod[best] - from_mod[best];
                part.exit_total += (exit_a_without - part.exit[static_cast<std::size_t>(a)]) +
                                   (exit_b_with - part.exit[static_cast<std::size_t>(best)]);
                part.exit[static_cast<std::size_t>(a)] = exit_a_without;
                part.exit[static_cast<std::size_t>(best)] = exit_b_with;
                part.inside[static_cast<std::size_t>(a)] -= pu;
                part.inside[static_cast<std::size_t>(best)] += pu;
                part.module_of[static_cast<std::size_t>(u)] = best;
                moved = true;
                any = true;
            }
        }
    }
    return any;
}

/// Collapses modules to supernodes, keeping intra-module flow as self-loops.
WalkNetwork aggregate(const WalkNetwork& net, const std::vector<int>& module_of,
                      std::vector<int>& relabel) {
    relabel.assign(module_of.size(), -1);
    int next_id = 0;
    for (int m : module_of) {
        // first-appearance order keeps the result independent of module ids
        if (relabel[static_cast<std::size_t>(m)] < 0) {
            relabel[static_cast<std::size_t>(m)] = next_id++;
        }
    }

    WalkNetwork agg;
    agg.p.assign(static_cast<std::size_t>(next_id), 0.0);
    agg.out.assign(static_cast<std::size_t>(next_id), {});
    agg.in.assign(static_cast<std::size_t>(next_id), {});

    std::vector<std::unordered_map<int, double>> flows(static_cast<std::size_t>(next_id));
    for (int i = 0; i < net.size(); ++i) {
        const int mi = relabel[static_cast<std::size_t>(module_of[static_cast<std::size_t>(i)])];
        agg.p[static_cast<std::size_t>(mi)] += net.p[static_cast<std::size_t>(i)];
        for (const auto& [j, flow] : net.out[static_cast<std::size_t>(i)]) {
            const int mj =
                relabel[static_cast<std::size_t>(module_of[static_cast<std::size_t>(j)])];
            flows[static_cast<std::size_t>(mi)][mj] += flow;
        }
    }
    for (int m = 0; m < next_id; ++m) {
        std::vector<std::pair<int, double>> row(flows[static_cast<std::size_t>(m)].begin(),
                                                flows[static_cast<std::size_t>(m)].end());
        std::sort(row.begin(), row.end());
        for (const auto& [to, flow] : row) {
            agg.out[static_cast<std::size_t>(m)].emplace_back(to, flow);
            agg.in[static_cast<std::size_t>(to)].emplace_back(m, flow);
        }
    }
    return agg;
}

} // namespace

FlowGraph build_flow_graph(const InteractionModel& model) {
    FlowGraph graph;
    graph.n_nodes = model.n_lines;
    for (int i = 0; i < model.n_lines; ++i) {
        for (const auto& [j, value] : model.J[static_cast<std::size_t>(i)]) {
            graph.edges.push_back({j, i, std::exp(4.0 * value)});
        }
    }
    std::sort(graph.edges.begin(), graph.edges.end(), [](const auto& a, const auto& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    return graph;
}

std::vector<int> influence_degree(const InteractionModel& model) {
    std::vector<int> degree(static_cast<std::size_t>(model.n_lines), 0);
    for (int i = 0; i < model.n_lines; ++i) {
        for (const auto& entry : model.J[static_cast<std::size_t>(i)]) {
            ++degree[static_cast<std::size_t>(entry.first)];
        }
    }
    return degree;
}

std::vector<double> visit_rates(const FlowGraph& graph, double teleport) {
    if (graph.n_nodes <= 0) throw InvariantError("visit_rates: empty graph");
    return stationary_rates(graph.n_nodes, graph.edges, teleport);
}

double map_equation_codelength(const FlowGraph& graph, const std::vector<int>& cluster_of,
                               double teleport) {
    if (static_cast<int>(cluster_of.size()) != graph.n_nodes) {
        throw InvariantError("map_equation_codelength: assignment size mismatch");
    }
    const WalkNetwork net = walk_network(graph, teleport);
    const int n_modules = 1 + *std::max_element(cluster_of.begin(), cluster_of.end());
    Partition part;
    part.module_of = cluster_of;
    part.exit.assign(static_cast<std::size_t>(n_modules), 0.0);
    part.inside.assign(static_cast<std::size_t>(n_modules), 0.0);
    for (int i = 0; i < net.size(); ++i) {
        const int m = cluster_of[static_cast<std::size_t>(i)];
        part.inside[static_cast<std::size_t>(m)] += net.p[static_cast<std::size_t>(i)];
        for (const auto& [j, flow] : net.out[static_cast<std::size_t>(i)]) {
            if (cluster_of[static_cast<std::size_t>(j)] != m) {
                part.exit[static_cast<std::size_t>(m)] += flow;
            }
        }
    }
    for (double q : part.exit) part.exit_total += q;
    return codelength(part) + node_term(net);
}

ClusterAssignment cluster_flow_graph(const FlowGraph& graph, const ClusterConfig& config) {
    if (graph.n_nodes <= 0) throw InvariantError("cluster_flow_graph: empty graph");
    for (const auto& e : graph.edges) {
        if (e.from == e.to) throw InvariantError("cluster_flow_graph: self-loop");
        if (!(e.weight > 0.0)) throw InvariantError("cluster_flow_graph: non-positive weight");
    }

    WalkNetwork net = walk_network(graph, config.teleport);
    const double constant = node_term(net);
    Rng rng(derive_stream(config.seed, kStreamCluster));

    // node -> module on the original graph, refined level by level
    std::vector<int> assignment(static_cast<std::size_t>(graph.n_nodes));
    std::iota(assignment.begin(), assignment.end(), 0);

    Partition part = singletons(net);
    const double singleton_bits = codelength(part) + constant;

    while (true) {
        if (!local_moves(net, part, rng)) break;
        std::vector<int> relabel;
        net = aggregate(net, part.module_of, relabel);
        for (auto& m : assignment) {
            m = relabel[static_cast<std::size_t>(part.module_of[static_cast<std::size_t>(m)])];
        }
        part = singletons(net);
    }

    ClusterAssignment result;
    result.singleton_codelength = singleton_bits;
    result.codelength = codelength(part) + constant;

    std::vector<std::vector<int>> groups(net.p.size());
    for (int i = 0; i < graph.n_nodes; ++i) {
        groups[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])].push_back(i);
    }
    std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() > b.size() : a.front() < b.front();
    });
    result.clusters = std::move(groups);
    result.cluster_of.assign(static_cast<std::size_t>(graph.n_nodes), -1);
    for (std::size_t c = 0; c < result.clusters.size(); ++c) {
        for (int node : result.clusters[c]) {
            result.cluster_of[static_cast<std::size_t>(node)] = static_cast<int>(c);
        }
    }
    return result;
}

namespace {

/// E[Z_S | Z_S > 0] over final states; negative when Z_S is never positive.
double conditional_failure_mean(const std::vector<int>& members,
                                const std::vector<NetworkState>& finals) {
    double sum = 0.0;
    std::size_t hits = 0;
    for (const auto& state : finals) {
        int z = 0;
        for (int line : members) {
            if (state[static_cast<std::size_t>(line)] == 1) ++z;
        }
        if (z > 0) {
            sum += z;
            ++hits;
        }
    }
    return hits == 0 ? -1.0 : sum / static_cast<double>(hits);
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace

GammaReport gamma_report(const ClusterAssignment& assignment,
                         const std::vector<NetworkState>& finals, int n_null,
                         std::uint64_t seed, int min_size, int jobs) {
    if (n_null < 1) throw InvariantError("gamma_report: n_null must be positive");
    if (finals.empty()) throw InvariantError("gamma_report: no final states");
    const int n_lines = static_cast<int>(finals.front().size());

    GammaReport report;
    report.n_null = n_null;
    for (std::size_t c = 0; c < assignment.clusters.size(); ++c) {
        if (static_cast<int>(assignment.clusters[c].size()) < min_size) continue;
        GammaEntry entry;
        entry.cluster_id = static_cast<int>(c);
        entry.members = assignment.clusters[c];
        entry.conditional_mean = conditional_failure_mean(entry.members, finals);
        if (entry.conditional_mean < 0.0) {
            throw ClusterNeverFailsError("cluster " + std::to_string(c) +
                                         " never fails in the dataset");
        }
        entry.gamma.assign(static_cast<std::size_t>(n_null), 0.0);
        report.clusters.push_back(std::move(entry));
    }

    for (std::size_t k = 0; k < report.clusters.size(); ++k) {
        GammaEntry& entry = report.clusters[k];
        const std::size_t set_size = entry.members.size();
        parallel_for(static_cast<std::size_t>(n_null), jobs, [&](std::size_t d) {
            Rng rng(derive_stream(seed, kStreamNull,
                                  k * static_cast<std::size_t>(n_null) + d));
            std::vector<int> pool(static_cast<std::size_t>(n_lines));
            // redraw until the random set fails at least once in the data
            for (int attempt = 0; attempt < 1000; ++attempt) {
                std::iota(pool.begin(), pool.end(), 0);
                for (std::size_t i = 0; i < set_size; ++i) {
                    const std::size_t j =
                        i + static_cast<std::size_t>(rng.below(pool.size() - i));
                    std::swap(pool[i], pool[j]);
                }
                const std::vector<int> draw(pool.begin(),
                                            pool.begin() + static_cast<std::ptrdiff_t>(set_size));
                const double null_mean = conditional_failure_mean(draw, finals);
                if (null_mean > 0.0) {
                    entry.gamma[d] = entry.conditional_mean / null_mean;
                    return;
                }
            }
            throw ClusterNeverFailsError("null draws for cluster " +
                                         std::to_string(entry.cluster_id) + " never fail");
        });
        double total = 0.0;
        for (double g : entry.gamma) total += g;
        entry.mean = total / static_cast<double>(n_null);
        entry.median = median_of(entry.gamma);
    }
    return report;
}

} // namespace cascadelab
