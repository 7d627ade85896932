#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cascadelab/error.hpp"
#include "cascadelab/metrics.hpp"
#include "support/fixtures.hpp"

using namespace cascadelab;

TEST_CASE("edge distance on the triangle") {
    const Grid g = fixtures::make_triangle();
    const auto d = edge_distance(g);
    for (int e = 0; e < 3; ++e) {
        CHECK(d[static_cast<std::size_t>(e)][static_cast<std::size_t>(e)] == 0);
        for (int f = 0; f < 3; ++f) {
            if (e != f) CHECK(d[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)] == 1);
        }
    }
}

TEST_CASE("edge distance separates a path graph") {
    const Grid g = parse_case(
        "BUS\n1 0\n2 1\n3 1\n4 2\nGEN\n1 4 9\n"
        "BRANCH\n1 2 1 9\n2 3 1 9\n3 4 1 9\n");
    const auto d = edge_distance(g);
    CHECK(d[0][1] == 1);
    CHECK(d[0][2] == 2);
    CHECK(d[1][2] == 1);

    // Triangle inequality with the +1 offset.
    const int L = g.n_lines();
    for (int e = 0; e < L; ++e) {
        for (int f = 0; f < L; ++f) {
            for (int k = 0; k < L; ++k) {
                CHECK(d[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)] <=
                      d[static_cast<std::size_t>(e)][static_cast<std::size_t>(k)] +
                          d[static_cast<std::size_t>(k)][static_cast<std::size_t>(f)]);
            }
        }
    }
}

TEST_CASE("edge distance requires a connected grid") {
    Grid g = fixtures::make_triangle();
    Bus lonely;
    lonely.id = 9;
    lonely.injection = 0.0;
    g.buses.push_back(lonely);
    CHECK_THROWS_AS(edge_distance(g), DisconnectedError);
}

TEST_CASE("triangle lodf is exactly one") {
    const Grid g = fixtures::make_triangle();
    const int e = g.line_between(1, 2);
    const int ehat = g.line_between(1, 3);
    CHECK_THAT(lodf(g, e, ehat), Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("lodf is invariant under injection scaling") {
    Rng rng(13);
    Grid g = fixtures::random_grid(rng, 9, 5);
    Grid doubled = g;
    for (Bus& b : doubled.buses) {
        b.injection *= 2.0;
        b.gen_max *= 2.0;
    }
    int checked = 0;
    for (int e = 0; e < g.n_lines() && checked < 6; ++e) {
        for (int f = 0; f < g.n_lines() && checked < 6; ++f) {
            if (e == f) continue;
            double k1 = 0.0, k2 = 0.0;
            try {
                k1 = lodf(g, e, f);
                k2 = lodf(doubled, e, f);
            } catch (const std::runtime_error&) {
                continue;
            }
            CHECK_THAT(k1, Catch::Matchers::WithinAbs(k2, 1e-9));
            ++checked;
        }
    }
    CHECK(checked == 6);
}

TEST_CASE("lodf flags bridges and dead lines") {
    const Grid g = parse_case(
        "BUS\n1 0\n2 1\n3 1\nGEN\n1 2 9\nBRANCH\n1 2 1 9\n2 3 1 9\n");
    CHECK_THROWS_AS(lodf(g, 0, 1), BridgeRemovalError);

    // A perfectly symmetric diamond leaves the cross line flowless.
    const Grid h = parse_case(
        "BUS\n1 0\n2 0\n3 0\n4 2\nGEN\n1 2 9\n"
        "BRANCH\n1 2 1 9\n1 3 1 9\n2 3 1 9\n2 4 1 9\n3 4 1 9\n");
    const int cross = h.line_between(2, 3);
    REQUIRE(cross >= 0);
    CHECK_THROWS_AS(lodf(h, cross, 0), ZeroFlowError);
}

TEST_CASE("lodf shared-bus sign on the triangle") {
    // Positivity for adjacent lines holds once both are oriented away from
    // the bus they share; raw file orientations can flip the sign.
    const Grid g = fixtures::make_triangle();
    auto away_sign = [&](int e, int v) {
        return g.lines[static_cast<std::size_t>(e)].from == v ? 1.0 : -1.0;
    };
    for (int e = 0; e < g.n_lines(); ++e) {
        for (int f = 0; f < g.n_lines(); ++f) {
            if (e == f) continue;
            const Line& a = g.lines[static_cast<std::size_t>(e)];
            const Line& b = g.lines[static_cast<std::size_t>(f)];
            int shared = -1;
            for (int v : {a.from, a.to}) {
                if (v == b.from || v == b.to) shared = v;
            }
            REQUIRE(shared >= 0);
            CHECK(away_sign(e, shared) * away_sign(f, shared) * lodf(g, e, f) > 0.0);
        }
    }
}

namespace {

std::vector<NetworkState> planted_sample(int n, std::uint64_t seed) {
    // k fails with p=1/2; i and j each copy k's failure with prob 0.9,
    // independently; conditioned on k the residual dependence vanishes.
    Rng rng(seed);
    std::vector<NetworkState> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        const std::int8_t k = rng.uniform01() < 0.5 ? 1 : -1;
        const std::int8_t i = rng.uniform01() < 0.9 ? k : static_cast<std::int8_t>(-k);
        const std::int8_t j = rng.uniform01() < 0.9 ? k : static_cast<std::int8_t>(-k);
        out.push_back({i, j, k});
    }
    return out;
}

} // namespace

TEST_CASE("pearson basics") {
    const auto sample = planted_sample(2000, 3);
    CHECK(pearson(sample, 0, 0) == 1.0);
    CHECK(pearson(sample, 0, 1) == pearson(sample, 1, 0));
    CHECK(pearson(sample, 0, 1) > 0.5);

    std::vector<NetworkState> constant(40, NetworkState{1, -1});
    CHECK_THROWS_AS(pearson(constant, 0, 1), ZeroVarianceError);
}

TEST_CASE("independent columns decorrelate") {
    Rng rng(17);
    std::vector<NetworkState> sample;
    for (int t = 0; t < 10000; ++t) {
        sample.push_back({rng.uniform01() < 0.5 ? std::int8_t{1} : std::int8_t{-1},
                          rng.uniform01() < 0.5 ? std::int8_t{1} : std::int8_t{-1}});
    }
    CHECK(std::abs(pearson(sample, 0, 1)) < 0.05);
}

TEST_CASE("conditioning removes the planted common cause") {
    const auto sample = planted_sample(4000, 8);
    const double raw = pearson(sample, 0, 1);
    const double given_fail = conditional_pearson(sample, 0, 1, 2, 1);
    const double given_ok = conditional_pearson(sample, 0, 1, 2, -1);
    CHECK(raw > 0.4);
    CHECK(std::abs(given_fail) < 0.1);
    CHECK(std::abs(given_ok) < 0.1);
}

TEST_CASE("conditional pearson guards its subsample") {
    const auto sample = planted_sample(40, 5);
    std::vector<NetworkState> constant(sample);
    for (NetworkState& s : constant) s[2] = 1;
    CHECK_THROWS_AS(conditional_pearson(constant, 0, 1, 2, -1), InsufficientSampleError);
}

TEST_CASE("118-bus edge distances peak at 15 and honor the triangle bound") {
    const Grid g = load_grid(fixtures::repo_path("data/ieee118.case"));
    const auto d = edge_distance(g);
    const int L = g.n_lines();

    int d_max = 0;
    for (int e = 0; e < L; ++e) {
        for (int f = 0; f < L; ++f) d_max = std::max(d_max, d[e][f]);
    }
    CHECK(d_max == 15);

    // crossing an intermediate line costs at most its own hop
    long violations = 0;
    for (int e = 0; e < L; ++e) {
        for (int k = 0; k < L; ++k) {
            for (int f = 0; f < L; ++f) {
                if (d[e][f] > d[e][k] + d[k][f]) ++violations;
            }
        }
    }
    CHECK(violations == 0);
}
