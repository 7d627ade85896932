#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cascadelab/error.hpp"
#include "cascadelab/grid.hpp"
#include "support/fixtures.hpp"

using namespace cascadelab;

TEST_CASE("triangle case parses into netted buses") {
    const Grid g = fixtures::make_triangle();
    REQUIRE(g.n_buses() == 3);
    REQUIRE(g.n_lines() == 3);
    CHECK(g.buses[0].injection == 1.0);
    CHECK(g.buses[0].is_generator);
    CHECK(g.buses[0].gen_max == 2.0);
    CHECK(g.buses[1].injection == -1.0);
    CHECK_FALSE(g.buses[1].is_generator);
    CHECK(g.buses[2].injection == 0.0);
    CHECK(g.slack_bus == 0);
    CHECK(g.line_between(1, 2) == 0);
    CHECK(g.line_between(2, 3) == 2);
    CHECK(g.line_between(1, 4) == -1);
}

TEST_CASE("comments and blank lines are skipped") {
    const Grid g = parse_case(
        "# header\nBUS\n1 0  # slack site\n2 1\n\nGEN\n1 1 2\nBRANCH\n1 2 1 5\n");
    REQUIRE(g.n_buses() == 2);
    REQUIRE(g.n_lines() == 1);
}

TEST_CASE("parse errors carry line numbers") {
    try {
        parse_case("BUS\n1 0\n2 oops\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line_no() == 3);
    }

    CHECK_THROWS_AS(parse_case("1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_case("BUS\n1 0\n1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_case("BUS\n1 0\nGEN\n9 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_case("BUS\n1 -1\n"), ParseError);
    CHECK_THROWS_AS(parse_case("BUS\n1 0\n2 0\nBRANCH\n1 2 1\n"), ParseError);
}

TEST_CASE("validation rejects bad grids") {
    CHECK_THROWS_AS(parse_case("BUS\n1 0\n2 1\nBRANCH\n1 2 1 5\n"), InvariantError);  // no gen
    CHECK_THROWS_AS(parse_case("BUS\n1 0\n2 1\nGEN\n1 1 2\nBRANCH\n1 2 0 5\n"),
                    InvariantError);  // zero susceptance
    CHECK_THROWS_AS(parse_case("BUS\n1 0\n2 1\nGEN\n1 1 2\nBRANCH\n1 1 1 5\n"),
                    InvariantError);  // self loop
    CHECK_THROWS_AS(parse_case("BUS\n1 0\n2 1\nGEN\n1 3 2\nBRANCH\n1 2 1 5\n"),
                    InvariantError);  // injection above gen_max
}

TEST_CASE("slack is the generator with the largest headroom") {
    const Grid g = parse_case(
        "BUS\n1 0\n2 0\n3 4\nGEN\n1 2 3\n2 2 7\nBRANCH\n1 2 1 9\n2 3 1 9\n");
    CHECK(g.buses[static_cast<std::size_t>(g.slack_bus)].id == 2);
}

TEST_CASE("repeated GEN rows accumulate") {
    const Grid g = parse_case(
        "BUS\n1 0\n2 3\nGEN\n1 1 2\n1 2 2\nBRANCH\n1 2 1 9\n");
    CHECK(g.buses[0].injection == 3.0);
    CHECK(g.buses[0].gen_max == 4.0);
}

TEST_CASE("capacity scale multiplies ratings only") {
    const Grid base = parse_case(fixtures::kTriangleCase);
    const Grid scaled = parse_case(fixtures::kTriangleCase, 2.0);
    for (int e = 0; e < base.n_lines(); ++e) {
        CHECK(scaled.lines[static_cast<std::size_t>(e)].capacity ==
              2.0 * base.lines[static_cast<std::size_t>(e)].capacity);
        CHECK(scaled.lines[static_cast<std::size_t>(e)].susceptance ==
              base.lines[static_cast<std::size_t>(e)].susceptance);
    }
    CHECK(base.fingerprint() != scaled.fingerprint());
}

TEST_CASE("fingerprint is stable across reparses") {
    const Grid a = parse_case(fixtures::kTriangleCase);
    const Grid b = parse_case("# reordered comment\n" + std::string(fixtures::kTriangleCase));
    CHECK(a.fingerprint() == b.fingerprint());
    CHECK(a.fingerprint().size() == 16);
}

TEST_CASE("shipped 118-bus case loads with the expected shape") {
    const Grid g = load_grid(fixtures::repo_path("data/ieee118.case"));
    CHECK(g.n_buses() == 118);
    CHECK(g.n_lines() == 179);

    double balance = 0.0;
    for (const Bus& b : g.buses) balance += b.injection;
    CHECK(std::abs(balance) < 1e-6);

    CHECK(g.buses[static_cast<std::size_t>(g.slack_bus)].id == 69);

    // parallel circuits arrive merged: exactly one line joins 49 and 66
    int joining = 0;
    const int a = g.bus_index(49), b = g.bus_index(66);
    for (const Line& l : g.lines) {
        if ((l.from == a && l.to == b) || (l.from == b && l.to == a)) ++joining;
    }
    CHECK(joining == 1);

    // mean bus degree of the documented topology
    CHECK(2.0 * g.n_lines() / g.n_buses() == Catch::Approx(3.034).margin(0.001));
}
