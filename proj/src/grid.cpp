#include "cascadelab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cascadelab/error.hpp"
#include "cascadelab/hash.hpp"

namespace cascadelab {

std::vector<double> Grid::injections() const {
    std::vector<double> p(buses.size());
    for (std::size_t i = 0; i < buses.size(); ++i) p[i] = buses[i].injection;
    return p;
}

int Grid::bus_index(int bus_id) const {
    for (std::size_t i = 0; i < buses.size(); ++i) {
        if (buses[i].id == bus_id) return static_cast<int>(i);
    }
    return -1;
}

int Grid::line_between(int bus_id_a, int bus_id_b) const {
    const int a = bus_index(bus_id_a);
    const int b = bus_index(bus_id_b);
    if (a < 0 || b < 0) return -1;
    for (std::size_t e = 0; e < lines.size(); ++e) {
        if ((lines[e].from == a && lines[e].to == b) ||
            (lines[e].from == b && lines[e].to == a)) {
            return static_cast<int>(e);
        }
    }
    return -1;
}

std::string Grid::fingerprint() const {
    std::ostringstream canon;
    canon << "grid v1\nslack " << slack_bus << '\n';
    for (const Bus& b : buses) {
        canon << "bus " << b.id << ' ' << format_double(b.injection) << ' '
              << format_double(b.gen_max) << ' ' << (b.is_generator ? 1 : 0) << '\n';
    }
    for (const Line& l : lines) {
        canon << "line " << l.from << ' ' << l.to << ' ' << format_double(l.susceptance)
              << ' ' << format_double(l.capacity) << '\n';
    }
    return to_hex(fnv1a(canon.str()));
}

void validate_grid(const Grid& grid) {
    const int n = grid.n_buses();
    if (n < 1) throw InvariantError("grid has no buses");
    for (int e = 0; e < grid.n_lines(); ++e) {
        const Line& l = grid.lines[static_cast<std::size_t>(e)];
        if (l.from < 0 || l.from >= n || l.to < 0 || l.to >= n) {
            throw InvariantError("line " + std::to_string(e) + " references an unknown bus");
        }
        if (l.from == l.to) {
            throw InvariantError("line " + std::to_string(e) + " is a self-loop");
        }
        if (!(l.susceptance > 0.0)) {
            throw InvariantError("nonpositive susceptance on line " + std::to_string(e));
        }
        if (!(l.capacity > 0.0)) {
            throw InvariantError("nonpositive capacity on line " + std::to_string(e));
        }
    }
    for (int i = 0; i < n; ++i) {
        const Bus& b = grid.buses[static_cast<std::size_t>(i)];
        if (b.is_generator && (b.injection < 0.0 || b.injection > b.gen_max + 1e-9)) {
            throw InvariantError("generator at bus " + std::to_string(b.id) +
                                 " outside [0, gen_max]");
        }
        if (!b.is_generator && b.injection > 1e-9) {
            throw InvariantError("non-generator bus " + std::to_string(b.id) +
                                 " has positive injection");
        }
    }
    if (grid.slack_bus < 0 || grid.slack_bus >= n) {
        throw InvariantError("slack bus index out of range");
    }
    if (!grid.buses[static_cast<std::size_t>(grid.slack_bus)].is_generator) {
        throw InvariantError("slack bus " +
                             std::to_string(grid.buses[static_cast<std::size_t>(grid.slack_bus)].id) +
                             " hosts no generator");
    }
}

namespace {

struct RawBus {
    double load = 0.0;
    double gen_p = 0.0;
    double gen_pmax = 0.0;
    bool has_gen = false;
};

double parse_number(const std::string& tok, int line_no) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ParseError("expected number, got '" + tok + "'", line_no);
    }
    if (used != tok.size() || !std::isfinite(v)) {
        throw ParseError("expected number, got '" + tok + "'", line_no);
    }
    return v;
}

int parse_int(const std::string& tok, int line_no) {
    const double v = parse_number(tok, line_no);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
        throw ParseError("expected integer, got '" + tok + "'", line_no);
    }
    return i;
}

} // namespace

Grid parse_case(const std::string& text, double capacity_scale) {
    if (!(capacity_scale > 0.0)) {
        throw InvariantError("capacity scale must be positive");
    }
    enum class Section { None, Bus, Gen, Branch };
    Section section = Section::None;

    std::map<int, RawBus> raw;  // keyed by external id, kept sorted
    struct RawBranch {
        int from, to;
        double b, c;
        int line_no;
    };
    std::vector<RawBranch> branches;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream row(line);
        std::vector<std::string> tok;
        for (std::string t; row >> t;) tok.push_back(t);
        if (tok.empty()) continue;

        if (tok.size() == 1 && (tok[0] == "BUS" || tok[0] == "GEN" || tok[0] == "BRANCH")) {
            section = tok[0] == "BUS" ? Section::Bus
                    : tok[0] == "GEN" ? Section::Gen
                                      : Section::Branch;
            continue;
        }
        switch (section) {
        case Section::None:
            throw ParseError("data before any section header", line_no);
        case Section::Bus: {
            if (tok.size() != 2) throw ParseError("BUS row needs: id load_MW", line_no);
            const int id = parse_int(tok[0], line_no);
            const double load = parse_number(tok[1], line_no);
            if (load < 0.0) throw ParseError("negative load at bus " + tok[0], line_no);
            if (raw.count(id)) throw ParseError("duplicate bus id " + tok[0], line_no);
            raw[id].load = load;
            break;
        }
        case Section::Gen: {
            if (tok.size() != 3) throw ParseError("GEN row needs: bus_id p_MW p_max_MW", line_no);
            const int id = parse_int(tok[0], line_no);
            auto it = raw.find(id);
            if (it == raw.end()) throw ParseError("GEN row for undeclared bus " + tok[0], line_no);
            it->second.gen_p += parse_number(tok[1], line_no);
            it->second.gen_pmax += parse_number(tok[2], line_no);
            it->second.has_gen = true;
            break;
        }
        case Section::Branch: {
            if (tok.size() != 4) {
                throw ParseError("BRANCH row needs: from to susceptance capacity_MW", line_no);
            }
            RawBranch br;
            br.from = parse_int(tok[0], line_no);
            br.to = parse_int(tok[1], line_no);
            br.b = parse_number(tok[2], line_no);
            br.c = parse_number(tok[3], line_no);
            br.line_no = line_no;
            branches.push_back(br);
            break;
        }
        }
    }

    Grid grid;
    std::map<int, int> index_of;
    for (const auto& [id, rb] : raw) {
        Bus b;
        b.id = id;
        b.injection = rb.gen_p - rb.load;
        b.is_generator = rb.has_gen;
        b.gen_max = rb.has_gen ? rb.gen_pmax - rb.load : 0.0;
        index_of[id] = grid.n_buses();
        grid.buses.push_back(b);
    }
    for (const RawBranch& br : branches) {
        Line l;
        auto f = index_of.find(br.from);
        auto t = index_of.find(br.to);
        if (f == index_of.end() || t == index_of.end()) {
            throw ParseError("branch references unknown bus", br.line_no);
        }
        l.from = f->second;
        l.to = t->second;
        l.susceptance = br.b;
        l.capacity = br.c * capacity_scale;
        grid.lines.push_back(l);
    }

    // Slack convention: the generator bus with the largest gen_max
    // (ties broken by smallest id).
    int slack = -1;
    for (int i = 0; i < grid.n_buses(); ++i) {
        const Bus& b = grid.buses[static_cast<std::size_t>(i)];
        if (!b.is_generator) continue;
        if (slack < 0 || b.gen_max > grid.buses[static_cast<std::size_t>(slack)].gen_max) {
            slack = i;
        }
    }
    if (slack < 0) throw InvariantError("case declares no generator");
    grid.slack_bus = slack;

    validate_grid(grid);
    return grid;
}

Grid load_grid(const std::filesystem::path& path, const std::string& format,
               double capacity_scale) {
    if (format != "case") {
        throw InvariantError("unknown case format '" + format + "'");
    }
    std::ifstream in(path);
    if (!in) {
        throw MissingInputError("missing input artifact: grid case file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_case(buf.str(), capacity_scale);
}

} // namespace cascadelab
