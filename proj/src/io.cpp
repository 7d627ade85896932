#include "cascadelab/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cascadelab/error.hpp"
#include "cascadelab/hash.hpp"

namespace cascadelab {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingInputError("cannot open '" + path.string() + "' for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingInputError("missing input file '" + path.string() + "'");
    return in;
}

json parse_line(const std::string& line, int line_no) {
    try {
        return json::parse(line);
    } catch (const json::parse_error& err) {
        throw ParseError(err.what(), line_no);
    }
}

std::vector<int> failed_indices(const NetworkState& state) {
    std::vector<int> failed;
    for (std::size_t e = 0; e < state.size(); ++e) {
        if (state[e] == 1) failed.push_back(static_cast<int>(e));
    }
    return failed;
}

} // namespace

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    int n_lines = 0;
    if (!dataset.trajectories.empty()) {
        n_lines = static_cast<int>(dataset.trajectories.front().states.front().size());
    }
    json header;
    header["grid_hash"] = dataset.grid_hash;
    header["m"] = dataset.trajectories.size();
    header["n_lines"] = n_lines;
    header["p_f"] = dataset.p_f;
    header["seed"] = dataset.seed;
    header["variant"] = variant_name(dataset.variant);
    header["draws"] = dataset.draws;
    header["propagating_draws"] = dataset.propagating_draws;
    header["duplicates_skipped"] = dataset.duplicates_skipped;
    out << header.dump() << '\n';

    for (const Trajectory& traj : dataset.trajectories) {
        json record;
        record["seed"] = traj.seed;
        record["initial"] = traj.initial;
        json states = json::array();
        for (const NetworkState& s : traj.states) states.push_back(failed_indices(s));
        record["states"] = states;
        out << record.dump() << '\n';
    }
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty dataset file", 1);
    ++line_no;
    const json header = parse_line(line, line_no);

    Dataset dataset;
    try {
        dataset.grid_hash = header.at("grid_hash").get<std::string>();
        dataset.p_f = header.at("p_f").get<double>();
        dataset.seed = header.at("seed").get<std::uint64_t>();
        dataset.variant = variant_from_name(header.at("variant").get<std::string>());
        dataset.draws = header.at("draws").get<std::uint64_t>();
        dataset.propagating_draws = header.at("propagating_draws").get<std::uint64_t>();
        dataset.duplicates_skipped = header.at("duplicates_skipped").get<std::uint64_t>();
    } catch (const json::exception& err) {
        throw ParseError(err.what(), line_no);
    }
    std::size_t m = 0;
    int n_lines = 0;
    try {
        m = header.at("m").get<std::size_t>();
        n_lines = header.at("n_lines").get<int>();
    } catch (const json::exception& err) {
        throw ParseError(err.what(), line_no);
    }

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const json record = parse_line(line, line_no);
        Trajectory traj;
        try {
            traj.seed = record.at("seed").get<std::uint64_t>();
            traj.initial = record.at("initial").get<std::vector<int>>();
            const auto states = record.at("states").get<std::vector<std::vector<int>>>();
            if (states.empty()) throw ParseError("trajectory without states", line_no);
            traj.states.reserve(states.size());
            for (const auto& s : states) {
                for (int e : s) {
                    if (e < 0 || e >= n_lines) {
                        throw ParseError("failed-line index out of range", line_no);
                    }
                }
                traj.states.push_back(state_from_failures(n_lines, s));
            }
        } catch (const json::exception& err) {
            throw ParseError(err.what(), line_no);
        }
        dataset.trajectories.push_back(std::move(traj));
    }
    if (dataset.trajectories.size() != m) {
        throw ParseError("header m = " + std::to_string(m) + " but file holds " +
                             std::to_string(dataset.trajectories.size()) + " trajectories",
                         line_no);
    }
    return dataset;
}

void save_model(const InteractionModel& model, const std::filesystem::path& path) {
    json doc;
    doc["kind"] = model.kind;
    doc["n_lines"] = model.n_lines;
    doc["h"] = model.h;
    json triplets = json::array();
    for (int i = 0; i < model.n_lines; ++i) {
        for (const auto& [j, value] : model.J[static_cast<std::size_t>(i)]) {
            triplets.push_back(json::array({i, j, value}));
        }
    }
    doc["J"] = triplets;
    doc["support"] = model.support;
    json degenerate = json::array();
    for (char d : model.degenerate) degenerate.push_back(d ? 1 : 0);
    doc["degenerate"] = degenerate;
    doc["meta"] = {{"lambda", model.meta.lambda},
                   {"delta_m", model.meta.delta_m},
                   {"delta_p", model.meta.delta_p},
                   {"samples", model.meta.samples},
                   {"dataset_hash", model.meta.dataset_hash},
                   {"objective", model.meta.objective}};

    std::ofstream out = open_out(path);
    out << doc.dump(2) << '\n';
}

InteractionModel load_model(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw ParseError(err.what(), 1);
    }

    InteractionModel model;
    try {
        model.kind = doc.at("kind").get<std::string>();
        model.n_lines = doc.at("n_lines").get<int>();
        model.h = doc.at("h").get<std::vector<double>>();
        model.J.assign(static_cast<std::size_t>(model.n_lines), {});
        for (const auto& triplet : doc.at("J")) {
            const int i = triplet.at(0).get<int>();
            const int j = triplet.at(1).get<int>();
            if (i < 0 || i >= model.n_lines || j < 0 || j >= model.n_lines || i == j) {
                throw ParseError("coupling index out of range", 1);
            }
            model.J[static_cast<std::size_t>(i)].emplace_back(j, triplet.at(2).get<double>());
        }
        model.support = doc.at("support").get<std::vector<std::vector<int>>>();
        for (const auto& flag : doc.at("degenerate")) {
            model.degenerate.push_back(flag.get<int>() ? 1 : 0);
        }
        const json& meta = doc.at("meta");
        model.meta.lambda = meta.at("lambda").get<double>();
        model.meta.delta_m = meta.at("delta_m").get<double>();
        model.meta.delta_p = meta.at("delta_p").get<double>();
        model.meta.samples = meta.at("samples").get<int>();
        model.meta.dataset_hash = meta.at("dataset_hash").get<std::string>();
        model.meta.objective = meta.at("objective").get<std::vector<double>>();
    } catch (const json::exception& err) {
        throw ParseError(err.what(), 1);
    }
    if (static_cast<int>(model.h.size()) != model.n_lines ||
        static_cast<int>(model.support.size()) != model.n_lines ||
        static_cast<int>(model.degenerate.size()) != model.n_lines) {
        throw ParseError("model arrays disagree with n_lines", 1);
    }
    return model;
}

void save_states(const std::vector<NetworkState>& states, int n_lines,
                 const std::string& model_hash, const SamplerConfig& config,
                 const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    json header;
    header["kind"] = "glauber_samples";
    header["model_hash"] = model_hash;
    header["n_lines"] = n_lines;
    header["n_samples"] = states.size();
    header["seed"] = config.seed;
    header["warmup"] = config.warmup;
    header["stride"] = config.stride;
    header["chains"] = config.n_chains;
    out << header.dump() << '\n';
    for (const NetworkState& s : states) {
        json record;
        record["state"] = failed_indices(s);
        out << record.dump() << '\n';
    }
}

std::vector<NetworkState> load_states(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty samples file", 1);
    ++line_no;
    const json header = parse_line(line, line_no);
    int n_lines = 0;
    std::size_t n_samples = 0;
    try {
        n_lines = header.at("n_lines").get<int>();
        n_samples = header.at("n_samples").get<std::size_t>();
    } catch (const json::exception& err) {
        throw ParseError(err.what(), line_no);
    }

    std::vector<NetworkState> states;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const json record = parse_line(line, line_no);
        try {
            states.push_back(
                state_from_failures(n_lines, record.at("state").get<std::vector<int>>()));
        } catch (const json::exception& err) {
            throw ParseError(err.what(), line_no);
        }
    }
    if (states.size() != n_samples) {
        throw ParseError("header n_samples disagrees with record count", line_no);
    }
    return states;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out = open_out(path);
    for (std::size_t c = 0; c < header.size(); ++c) {
        out << (c ? "," : "") << header[c];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << row[c];
        }
        out << '\n';
    }
}

void save_roc(const RocCurve& curve, const std::filesystem::path& path) {
    std::vector<std::vector<std::string>> rows;
    for (const RocPoint& p : curve.points) {
        rows.push_back({format_double(p.threshold), format_double(p.fpr), format_double(p.tpr)});
    }
    rows.push_back({"auc", format_double(curve.auc), ""});
    write_csv(path, {"threshold", "fpr", "tpr"}, rows);
}

void save_size_stats(const SizeStats& stats, const std::filesystem::path& path) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [z, cum] : stats.cdf) {
        rows.push_back({"cdf", std::to_string(z), format_double(cum)});
    }
    for (std::size_t b = 0; b < stats.pdf.size(); ++b) {
        // bin center of [b, b+1) * delta_z
        const double center = stats.delta_z * (static_cast<double>(b) + 0.5);
        rows.push_back({"pdf", format_double(center), format_double(stats.pdf[b])});
    }
    rows.push_back({"z_max", std::to_string(stats.z_max), ""});
    rows.push_back({"delta_z", format_double(stats.delta_z), ""});
    rows.push_back({"span_decades", format_double(stats.span_decades), ""});
    write_csv(path, {"series", "z", "value"}, rows);
}

void save_clusters(const Grid& grid, const ClusterAssignment& assignment,
                   const std::filesystem::path& path) {
    std::vector<std::vector<std::string>> rows;
    for (int e = 0; e < static_cast<int>(assignment.cluster_of.size()); ++e) {
        const Line& line = grid.lines[static_cast<std::size_t>(e)];
        rows.push_back({std::to_string(e), std::to_string(grid.buses[static_cast<std::size_t>(line.from)].id),
                        std::to_string(grid.buses[static_cast<std::size_t>(line.to)].id),
                        std::to_string(assignment.cluster_of[static_cast<std::size_t>(e)])});
    }
    write_csv(path, {"line_index", "from_bus", "to_bus", "cluster_id"}, rows);
}

void save_cluster_matrix(const InteractionModel& model, const ClusterAssignment& assignment,
                         const std::filesystem::path& path) {
    std::vector<int> order;
    for (const auto& cluster : assignment.clusters) {
        order.insert(order.end(), cluster.begin(), cluster.end());
    }
    std::vector<std::string> header{"line"};
    for (int e : order) header.push_back(std::to_string(e));
    std::vector<std::vector<std::string>> rows;
    for (int i : order) {
        std::vector<std::string> row{std::to_string(i)};
        for (int j : order) {
            row.push_back(i == j ? "0" : format_double(model.coupling(i, j)));
        }
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

void save_gamma(const GammaReport& report, const std::filesystem::path& path) {
    std::vector<std::vector<std::string>> rows;
    for (const GammaEntry& entry : report.clusters) {
        for (std::size_t d = 0; d < entry.gamma.size(); ++d) {
            rows.push_back({std::to_string(entry.cluster_id),
                            std::to_string(entry.members.size()), std::to_string(d),
                            format_double(entry.gamma[d])});
        }
        rows.push_back({std::to_string(entry.cluster_id), std::to_string(entry.members.size()),
                        "mean", format_double(entry.mean)});
        rows.push_back({std::to_string(entry.cluster_id), std::to_string(entry.members.size()),
                        "median", format_double(entry.median)});
    }
    write_csv(path, {"cluster_id", "size", "draw", "gamma"}, rows);
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
    json doc;
    doc["command"] = manifest.command;
    doc["config"] = json::parse(manifest.config_json);
    doc["seed"] = manifest.seed;
    json inputs = json::object();
    for (const auto& [name, hash] : manifest.input_hashes) inputs[name] = hash;
    doc["input_hashes"] = inputs;
    json outputs = json::object();
    for (const auto& [name, hash] : manifest.output_hashes) outputs[name] = hash;
    doc["output_hashes"] = outputs;
    doc["wall_time_s"] = manifest.wall_time_s;
    std::ofstream out = open_out(path);
    out << doc.dump(2) << '\n';
}

} // namespace cascadelab
