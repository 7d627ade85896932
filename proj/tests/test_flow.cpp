#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <cmath>

#include "cascadelab/error.hpp"
#include "cascadelab/flow.hpp"
#include "cascadelab/rng.hpp"
#include "support/fixtures.hpp"

using namespace cascadelab;

namespace {

// Full-Laplacian pseudoinverse solve, the reference implementation the
// reduced-system path must agree with.
std::vector<double> pinv_flows(const Grid& grid, const LineMask& active,
                               const std::vector<double>& p) {
    const int n = grid.n_buses();
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (int e = 0; e < grid.n_lines(); ++e) {
        if (!active[static_cast<std::size_t>(e)]) continue;
        const Line& l = grid.lines[static_cast<std::size_t>(e)];
        lap(l.from, l.from) += l.susceptance;
        lap(l.to, l.to) += l.susceptance;
        lap(l.from, l.to) -= l.susceptance;
        lap(l.to, l.from) -= l.susceptance;
    }
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) rhs(i) = p[static_cast<std::size_t>(i)];
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(lap);
    const Eigen::VectorXd theta = cod.pseudoInverse() * rhs;
    std::vector<double> flows(static_cast<std::size_t>(grid.n_lines()), 0.0);
    for (int e = 0; e < grid.n_lines(); ++e) {
        if (!active[static_cast<std::size_t>(e)]) continue;
        const Line& l = grid.lines[static_cast<std::size_t>(e)];
        flows[static_cast<std::size_t>(e)] = l.susceptance * (theta(l.from) - theta(l.to));
    }
    return flows;
}

std::vector<double> balance_per_island(const Grid& grid,
                                       const std::vector<std::vector<int>>& islands,
                                       std::vector<double> p) {
    for (const auto& island : islands) {
        double mean = 0.0;
        for (int i : island) mean += p[static_cast<std::size_t>(i)];
        mean /= static_cast<double>(island.size());
        for (int i : island) p[static_cast<std::size_t>(i)] -= mean;
    }
    return p;
}

void check_conservation(const Grid& grid, const LineMask& active,
                        const std::vector<double>& p, const FlowSolution& sol) {
    std::vector<double> net(p);
    for (int e = 0; e < grid.n_lines(); ++e) {
        if (!active[static_cast<std::size_t>(e)]) continue;
        const Line& l = grid.lines[static_cast<std::size_t>(e)];
        net[static_cast<std::size_t>(l.from)] -= sol.flows[static_cast<std::size_t>(e)];
        net[static_cast<std::size_t>(l.to)] += sol.flows[static_cast<std::size_t>(e)];
    }
    for (double r : net) CHECK(std::abs(r) < 1e-8);
}

} // namespace

TEST_CASE("triangle base flows") {
    const Grid g = fixtures::make_triangle();
    const FlowSolution sol = solve_flows(g, full_mask(g), g.injections());
    CHECK_THAT(sol.flows[0], Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-12));
    CHECK_THAT(sol.flows[1], Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-12));
    CHECK_THAT(sol.flows[2], Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-12));
    CHECK(sol.theta[g.slack_bus] == 0.0);
    check_conservation(g, full_mask(g), g.injections(), sol);
}

TEST_CASE("reduced solve matches the pseudoinverse on random grids") {
    Rng rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        const Grid g = fixtures::random_grid(rng, 8 + static_cast<int>(rng.below(8)), 6);
        LineMask active = full_mask(g);
        // Knock out a few lines to also exercise multi-island solves.
        for (std::size_t e = 0; e < active.size(); ++e) {
            if (rng.uniform01() < 0.15) active[e] = 0;
        }
        const auto islands = find_islands(g, active);
        std::vector<double> p(static_cast<std::size_t>(g.n_buses()));
        for (double& v : p) v = 2.0 * rng.uniform01() - 1.0;
        p = balance_per_island(g, islands, p);

        const FlowSolution sol = solve_flows(g, active, p);
        const auto oracle = pinv_flows(g, active, p);
        for (int e = 0; e < g.n_lines(); ++e) {
            CHECK_THAT(sol.flows[static_cast<std::size_t>(e)],
                       Catch::Matchers::WithinAbs(oracle[static_cast<std::size_t>(e)], 1e-8));
        }
        check_conservation(g, active, p, sol);
    }
}

TEST_CASE("islands are ordered and sorted") {
    const Grid g = fixtures::make_triangle();
    LineMask active = full_mask(g);
    active[0] = 0;  // bus1-bus2
    active[1] = 0;  // bus1-bus3
    const auto islands = find_islands(g, active);
    REQUIRE(islands.size() == 2);
    CHECK(islands[0] == std::vector<int>{0});
    CHECK(islands[1] == std::vector<int>{1, 2});
}

TEST_CASE("unbalanced island is rejected") {
    const Grid g = fixtures::make_triangle();
    std::vector<double> p = g.injections();
    p[2] = 0.5;
    CHECK_THROWS_AS(solve_flows(g, full_mask(g), p), UnbalancedIslandError);
}

TEST_CASE("rebalance ramps generators for small deficits") {
    const Grid g = parse_case(
        "BUS\n1 0\n2 0\n3 6\nGEN\n1 2 5\n2 2 3\nBRANCH\n1 3 1 99\n2 3 1 99\n");
    std::vector<double> p = {2.0, 2.0, -6.0};  // deficit 2, headroom 3 + 1
    std::vector<InjectionAdjustment> record;
    const auto out = rebalance(g, {0, 1, 2}, p, &record);
    CHECK_THAT(out[0], Catch::Matchers::WithinAbs(3.5, 1e-12));  // +2 * (3/4)
    CHECK_THAT(out[1], Catch::Matchers::WithinAbs(2.5, 1e-12));  // +2 * (1/4)
    CHECK(out[2] == -6.0);
    CHECK(record.size() == 2);

    const auto again = rebalance(g, {0, 1, 2}, out);
    CHECK(again == out);
}

TEST_CASE("rebalance sheds smallest loads when headroom runs out") {
    const Grid g = parse_case(
        "BUS\n1 0\n2 1\n3 2\n4 5\nGEN\n1 3 4\nBRANCH\n1 2 1 99\n2 3 1 99\n3 4 1 99\n");
    std::vector<double> p = {3.0, -1.0, -2.0, -5.0};  // deficit 5, headroom 1
    std::vector<InjectionAdjustment> record;
    const auto out = rebalance(g, {0, 1, 2, 3}, p, &record);
    // Sheds -1 then -2 whole; remaining deficit 2... still above headroom 1,
    // so -5 goes too, leaving a surplus handled by ramping down.
    CHECK(out[1] == 0.0);
    CHECK(out[2] == 0.0);
    CHECK(out[3] == 0.0);
    CHECK_THAT(out[0], Catch::Matchers::WithinAbs(0.0, 1e-12));

    std::vector<double> q = {3.0, -1.0, -2.0, -3.0};  // deficit 3: shedding -1 and -2 suffices
    const auto out2 = rebalance(g, {0, 1, 2, 3}, q);
    CHECK(out2[1] == 0.0);
    CHECK(out2[2] == 0.0);
    CHECK(out2[3] == -3.0);
    CHECK(out2[0] == 3.0);
}

TEST_CASE("generator-only island trips to zero") {
    const Grid g = parse_case(
        "BUS\n1 0\n2 2\nGEN\n1 2 3\nBRANCH\n1 2 1 99\n");
    std::vector<InjectionAdjustment> record;
    const auto out = rebalance(g, {0}, {2.0, -2.0}, &record);
    CHECK(out[0] == 0.0);
    REQUIRE(record.size() == 1);
    CHECK(record[0].bus == 0);
    CHECK(record[0].before == 2.0);
    CHECK(record[0].after == 0.0);
}

TEST_CASE("rebalance keeps generators in bounds on random islands") {
    Rng rng(97);
    for (int trial = 0; trial < 40; ++trial) {
        const Grid g = fixtures::random_grid(rng, 10, 4);
        std::vector<double> p = g.injections();
        // Perturb into imbalance.
        for (double& v : p) v *= 0.5 + rng.uniform01();
        std::vector<int> island(static_cast<std::size_t>(g.n_buses()));
        for (int i = 0; i < g.n_buses(); ++i) island[static_cast<std::size_t>(i)] = i;

        const auto out = rebalance(g, island, p);
        double sum = 0.0;
        for (int i = 0; i < g.n_buses(); ++i) {
            const Bus& b = g.buses[static_cast<std::size_t>(i)];
            const double v = out[static_cast<std::size_t>(i)];
            sum += v;
            if (b.is_generator) {
                CHECK(v >= -1e-9);
                CHECK(v <= b.gen_max + 1e-9);
            } else {
                CHECK(v <= 0.0);
                CHECK(std::abs(v) <= std::abs(p[static_cast<std::size_t>(i)]) + 1e-12);
            }
        }
        CHECK(std::abs(sum) < 1e-9);

        const auto twice = rebalance(g, island, out);
        CHECK(twice == out);
    }
}

TEST_CASE("solve_rebalanced settles a split triangle") {
    const Grid g = fixtures::make_triangle();
    LineMask active = full_mask(g);
    active[0] = 0;
    active[1] = 0;  // isolates bus 1
    const FlowSolution sol = solve_rebalanced(g, active, g.injections());
    CHECK(sol.islands.size() == 2);
    CHECK(sol.flows[2] == 0.0);
    REQUIRE(sol.shed_record.size() == 2);
    CHECK(sol.shed_record[0].bus == 0);  // generation tripped
    CHECK(sol.shed_record[1].bus == 1);  // load shed
}

TEST_CASE("cutting the 118-bus network splits it into islands covering it") {
    const Grid g = load_grid(fixtures::repo_path("data/ieee118.case"));
    LineMask active = full_mask(g);

    // the global min cut has size 1: removing some single line disconnects
    // the network (leaf buses exist); find the first such bridge
    int bridge = -1;
    for (int e = 0; e < g.n_lines() && bridge < 0; ++e) {
        active[static_cast<std::size_t>(e)] = 0;
        if (find_islands(g, active).size() == 2) bridge = e;
        active[static_cast<std::size_t>(e)] = 1;
    }
    REQUIRE(bridge >= 0);

    active[static_cast<std::size_t>(bridge)] = 0;
    const auto islands = find_islands(g, active);
    REQUIRE(islands.size() == 2);
    CHECK(islands[0].size() + islands[1].size() == 118);

    // the cut is minimal by construction: size-1 cuts are global minima
    CHECK(find_islands(g, full_mask(g)).size() == 1);
}
