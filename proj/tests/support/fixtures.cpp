#include "fixtures.hpp"

namespace fixtures {

cascadelab::Grid make_triangle() {
    return cascadelab::parse_case(kTriangleCase);
}

cascadelab::Grid random_grid(cascadelab::Rng& rng, int n_buses, int extra_lines) {
    using namespace cascadelab;
    Grid grid;
    const int n_gens = std::max(1, n_buses / 3);
    double load_total = 0.0;
    std::vector<double> loads(static_cast<std::size_t>(n_buses), 0.0);
    for (int i = n_gens; i < n_buses; ++i) {
        loads[static_cast<std::size_t>(i)] = 0.2 + rng.uniform01();
        load_total += loads[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < n_buses; ++i) {
        Bus b;
        b.id = i + 1;
        if (i < n_gens) {
            b.is_generator = true;
            b.injection = load_total / n_gens;
            b.gen_max = 2.0 * b.injection + 1.0;
        } else {
            b.injection = -loads[static_cast<std::size_t>(i)];
        }
        grid.buses.push_back(b);
    }
    grid.slack_bus = 0;

    auto add_line = [&](int a, int b) {
        Line l;
        l.from = a;
        l.to = b;
        l.susceptance = 0.5 + 1.5 * rng.uniform01();
        l.capacity = 1e6;
        grid.lines.push_back(l);
    };
    for (int i = 1; i < n_buses; ++i) {
        add_line(i, static_cast<int>(rng.below(static_cast<std::uint64_t>(i))));
    }
    for (int k = 0; k < extra_lines; ++k) {
        const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_buses)));
        int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_buses)));
        while (b == a) b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_buses)));
        add_line(a, b);
    }
    validate_grid(grid);
    return grid;
}

std::string repo_path(const std::string& relative) {
    return std::string(CASCADELAB_SOURCE_DIR) + "/" + relative;
}

} // namespace fixtures
