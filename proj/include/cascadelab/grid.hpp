#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cascadelab {

struct Bus {
    int id = 0;                ///< external bus id from the case file
    double injection = 0.0;    ///< MW, + net generation, - net demand
    double gen_max = 0.0;      ///< maximum net injection (generator buses)
    bool is_generator = false;
};

struct Line {
    int from = 0;              ///< bus index (0-based), tail of the arbitrary orientation
    int to = 0;                ///< bus index (0-based)
    double susceptance = 0.0;  ///< 1 / reactance
    double capacity = 0.0;     ///< max |flow| in MW
};

/// Immutable after load; all solver and simulation entry points take it const.
struct Grid {
    std::vector<Bus> buses;
    std::vector<Line> lines;
    int slack_bus = 0;  // bus index

    int n_buses() const { return static_cast<int>(buses.size()); }
    int n_lines() const { return static_cast<int>(lines.size()); }

    /// Nominal injection vector (one entry per bus).
    std::vector<double> injections() const;

    /// Line index joining the two external bus ids, or -1.
    int line_between(int bus_id_a, int bus_id_b) const;

    /// Index of the bus with the given external id, or -1.
    int bus_index(int bus_id) const;

    /// Stable content fingerprint (16 hex digits).
    std::string fingerprint() const;
};

/// Throws InvariantError naming the offending element if any Grid invariant
/// is violated (endpoint validity, positive susceptance/capacity, generator
/// injection bounds, slack bus hosts a generator).
void validate_grid(const Grid& grid);

/// Parses the sectioned text case format (BUS / GEN / BRANCH, '#' comments).
/// Line capacities are multiplied by capacity_scale. `format` must be "case".
Grid load_grid(const std::filesystem::path& path, const std::string& format = "case",
               double capacity_scale = 1.0);

/// Parses case-format text from a string (used by load_grid and tests).
Grid parse_case(const std::string& text, double capacity_scale = 1.0);

} // namespace cascadelab
