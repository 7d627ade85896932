// Command-line front end: simulation, learning, sampling, clustering,
// evaluation, metrics, and the per-figure data chains.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <boost/program_options.hpp>
#include <nlohmann/json.hpp>

#include "cascadelab/cascade.hpp"
#include "cascadelab/error.hpp"
#include "cascadelab/evaluation.hpp"
#include "cascadelab/glauber.hpp"
#include "cascadelab/grid.hpp"
#include "cascadelab/hash.hpp"
#include "cascadelab/inference.hpp"
#include "cascadelab/io.hpp"
#include "cascadelab/kinetic.hpp"
#include "cascadelab/metrics.hpp"
#include "cascadelab/model.hpp"
#include "cascadelab/parallel.hpp"
#include "cascadelab/rng.hpp"
#include "cascadelab/static_learner.hpp"

namespace po = boost::program_options;
namespace fs = std::filesystem;
using nlohmann::json;
using namespace cascadelab;

namespace {

constexpr int kExitInvalidConfig = 1;
constexpr int kExitMissingInput = 2;

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    const char* env = std::getenv("CASCADE_LAB_SEED");
    if (!env || !*env) return flag_seed;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (!end || *end != '\0') {
        throw InvariantError("CASCADE_LAB_SEED is not an unsigned integer: '" +
                             std::string(env) + "'");
    }
    return v;
}

void emit_manifest(const std::string& command, const json& config, std::uint64_t seed,
                   const std::vector<std::pair<std::string, fs::path>>& inputs,
                   const std::vector<std::pair<std::string, fs::path>>& outputs,
                   double wall_time_s, const fs::path& path) {
    Manifest m;
    m.command = command;
    m.config_json = config.dump();
    m.seed = seed;
    for (const auto& [name, p] : inputs) m.input_hashes.emplace_back(name, file_fingerprint(p));
    for (const auto& [name, p] : outputs) m.output_hashes.emplace_back(name, file_fingerprint(p));
    m.wall_time_s = wall_time_s;
    save_manifest(m, path);
}

double default_p_f(const Grid& grid) { return 2.5 / grid.n_lines(); }

double default_lambda(Variant variant) { return variant == Variant::D1 ? 1e-4 : 5e-4; }

po::options_description common_options() {
    po::options_description opts("common options");
    opts.add_options()
        ("help,h", "show this help")
        ("out", po::value<std::string>()->default_value("out"), "output directory")
        ("seed", po::value<std::uint64_t>()->default_value(1), "base seed (CASCADE_LAB_SEED wins)")
        ("jobs", po::value<int>()->default_value(default_jobs()), "worker threads");
    return opts;
}

po::variables_map parse_args(const po::options_description& opts,
                             const std::vector<std::string>& args) {
    po::variables_map vm;
    po::store(po::command_line_parser(args).options(opts).run(), vm);
    po::notify(vm);
    return vm;
}

void require_positive(long long v, const std::string& name) {
    if (v <= 0) throw InvariantError(name + " must be positive");
}

// ---------------------------------------------------------------------------
// pipeline steps shared by the subcommands and the figure chains

struct SimulateSpec {
    fs::path grid_path;
    double capacity_scale = 1.0;
    Variant variant = Variant::D1;
    int m = 0;
    double p_f = -1.0;  // sentinel: 2.5 / L
    std::uint64_t seed = 1;
    int jobs = 1;
    std::uint64_t tag = kStreamTrain;
};

Dataset run_simulate(const SimulateSpec& spec, const fs::path& data_out,
                     const fs::path& manifest_out) {
    Stopwatch timer;
    const Grid grid = load_grid(spec.grid_path, "case", spec.capacity_scale);
    const double p_f = spec.p_f > 0.0 ? spec.p_f : default_p_f(grid);
    const Dataset dataset =
        generate_dataset(grid, spec.m, p_f, spec.variant, spec.seed, spec.jobs, spec.tag);
    save_dataset(dataset, data_out);

    const json config = {{"grid", spec.grid_path.string()},
                         {"capacity_scale", spec.capacity_scale},
                         {"variant", variant_name(spec.variant)},
                         {"m", spec.m},
                         {"p_f", p_f},
                         {"grid_hash", dataset.grid_hash},
                         {"propagation_fraction", dataset.propagation_fraction()},
                         {"duplicates_skipped", dataset.duplicates_skipped}};
    emit_manifest("simulate", config, spec.seed, {{"grid", spec.grid_path}},
                  {{"dataset", data_out}}, timer.seconds(), manifest_out);
    return dataset;
}

struct LearnSpec {
    fs::path grid_path;
    double capacity_scale = 1.0;
    fs::path data_path;
    std::string kind;  // "static" | "kinetic"
    double lambda = -1.0;  // sentinel: variant default
    double delta = 0.1;
    double tol = 1e-8;
    int max_iters = 10000;
    int jobs = 1;
};

InteractionModel run_learn(const LearnSpec& spec, const fs::path& model_out,
                           const fs::path& manifest_out) {
    Stopwatch timer;
    const Grid grid = load_grid(spec.grid_path, "case", spec.capacity_scale);
    const Dataset dataset = load_dataset(spec.data_path);
    if (dataset.grid_hash != grid.fingerprint()) {
        throw InvariantError("dataset was generated from a different grid (hash " +
                             dataset.grid_hash + " vs " + grid.fingerprint() + ")");
    }

    FitConfig config;
    config.lambda = spec.lambda > 0.0 ? spec.lambda : default_lambda(dataset.variant);
    config.delta_m = spec.delta;
    config.delta_p = spec.delta;
    config.tol = spec.tol;
    config.max_iters = spec.max_iters;
    config.jobs = spec.jobs;

    const auto distances = edge_distance(grid);
    const std::string data_hash = file_fingerprint(spec.data_path);
    InteractionModel model;
    if (spec.kind == "static") {
        model = fit_static_model(dedup_final_states(dataset), distances, config, data_hash);
    } else {
        model = fit_kinetic_model(dataset.trajectories, distances, config, data_hash);
    }
    save_model(model, model_out);

    const json cfg = {{"grid", spec.grid_path.string()},
                      {"capacity_scale", spec.capacity_scale},
                      {"data", spec.data_path.string()},
                      {"kind", spec.kind},
                      {"lambda", config.lambda},
                      {"delta_m", config.delta_m},
                      {"delta_p", config.delta_p},
                      {"tol", config.tol},
                      {"max_iters", config.max_iters},
                      {"variant", variant_name(dataset.variant)},
                      {"sparsity", model.sparsity()}};
    emit_manifest("learn-" + spec.kind, cfg, dataset.seed,
                  {{"grid", spec.grid_path}, {"dataset", spec.data_path}},
                  {{"model", model_out}}, timer.seconds(), manifest_out);
    return model;
}

struct SampleSpec {
    fs::path model_path;
    int n_samples = 0;
    std::uint64_t warmup = 0;  // sentinel: 10^3 L
    std::uint64_t stride = 0;  // sentinel: 20 L
    int chains = 1;
    std::uint64_t seed = 1;
    int jobs = 1;
};

std::vector<NetworkState> run_sample(const SampleSpec& spec, const fs::path& samples_out,
                                     const fs::path& stats_out, const fs::path& manifest_out) {
    Stopwatch timer;
    const InteractionModel model = load_model(spec.model_path);
    SamplerConfig config = default_sampler_config(model.n_lines, spec.n_samples, spec.seed);
    if (spec.warmup > 0) config.warmup = spec.warmup;
    if (spec.stride > 0) config.stride = spec.stride;
    config.n_chains = spec.chains;

    const auto states = sample_steady_states(model, config, spec.jobs);
    const std::string model_hash = file_fingerprint(spec.model_path);
    save_states(states, model.n_lines, model_hash, config, samples_out);
    save_size_stats(cascade_size_stats(sizes_of(states)), stats_out);

    const json cfg = {{"model", spec.model_path.string()},
                      {"n_samples", spec.n_samples},
                      {"warmup", config.warmup},
                      {"stride", config.stride},
                      {"chains", config.n_chains}};
    emit_manifest("sample", cfg, spec.seed, {{"model", spec.model_path}},
                  {{"samples", samples_out}, {"size_stats", stats_out}}, timer.seconds(),
                  manifest_out);
    return states;
}

struct ClusterSpec {
    fs::path model_path;
    fs::path grid_path;
    double capacity_scale = 1.0;
    fs::path data_path;
    double teleport = 0.15;
    int n_null = 200;
    int min_size = 5;
    std::uint64_t seed = 1;
    int jobs = 1;
};

ClusterAssignment run_cluster(const ClusterSpec& spec, const fs::path& clusters_out,
                              const fs::path& matrix_out, const fs::path& gamma_out,
                              const fs::path& manifest_out) {
    Stopwatch timer;
    const InteractionModel model = load_model(spec.model_path);
    const Grid grid = load_grid(spec.grid_path, "case", spec.capacity_scale);
    const Dataset dataset = load_dataset(spec.data_path);

    ClusterConfig config;
    config.teleport = spec.teleport;
    config.seed = spec.seed;
    const ClusterAssignment assignment = cluster_flow_graph(build_flow_graph(model), config);
    save_clusters(grid, assignment, clusters_out);
    save_cluster_matrix(model, assignment, matrix_out);

    std::vector<NetworkState> finals;
    for (const Trajectory& t : dataset.trajectories) finals.push_back(t.final_state());
    const GammaReport report =
        gamma_report(assignment, finals, spec.n_null, spec.seed, spec.min_size, spec.jobs);
    save_gamma(report, gamma_out);

    int size_gt2 = 0;
    for (const auto& c : assignment.clusters) {
        if (c.size() > 2) ++size_gt2;
    }
    const json cfg = {{"model", spec.model_path.string()},
                      {"grid", spec.grid_path.string()},
                      {"capacity_scale", spec.capacity_scale},
                      {"data", spec.data_path.string()},
                      {"teleport", spec.teleport},
                      {"n_null", spec.n_null},
                      {"min_size", spec.min_size},
                      {"n_clusters", assignment.n_clusters()},
                      {"n_clusters_size_gt2", size_gt2},
                      {"codelength", assignment.codelength}};
    emit_manifest("cluster", cfg, spec.seed,
                  {{"model", spec.model_path}, {"grid", spec.grid_path},
                   {"dataset", spec.data_path}},
                  {{"clusters", clusters_out}, {"matrix", matrix_out}, {"gamma", gamma_out}},
                  timer.seconds(), manifest_out);
    return assignment;
}

struct EvaluateSpec {
    fs::path model_path;
    fs::path grid_path;
    double capacity_scale = 1.0;
    int m = 0;         // sentinel 0: 5000 static / 1000 kinetic
    int flips = 2;     // static: neighbor flips in the perturbed run
    double p_f = -1.0;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::optional<RolloutMode> mode;  // kinetic: run one mode instead of all three
};

void run_evaluate(const EvaluateSpec& spec, const fs::path& out_dir, const std::string& stem,
                  const fs::path& manifest_out) {
    Stopwatch timer;
    const InteractionModel model = load_model(spec.model_path);
    const Grid grid = load_grid(spec.grid_path, "case", spec.capacity_scale);
    const double p_f = spec.p_f > 0.0 ? spec.p_f : default_p_f(grid);

    json cfg = {{"model", spec.model_path.string()},
                {"grid", spec.grid_path.string()},
                {"capacity_scale", spec.capacity_scale},
                {"kind", model.kind},
                {"p_f", p_f}};
    std::vector<std::pair<std::string, fs::path>> outputs;

    if (model.kind == "static") {
        const int m = spec.m > 0 ? spec.m : 5000;
        // fresh trajectories from the evaluation stream, D1-style acceptance
        const Dataset fresh =
            generate_dataset(grid, m, p_f, Variant::D1, spec.seed, spec.jobs, kStreamEval);
        const RocCurve clean = static_prediction_experiment(grid, model, fresh.trajectories, 0,
                                                            spec.seed, spec.jobs);
        const RocCurve flipped = static_prediction_experiment(
            grid, model, fresh.trajectories, spec.flips, spec.seed, spec.jobs);
        const fs::path clean_path = out_dir / (stem + "_clean.csv");
        const fs::path flip_path =
            out_dir / (stem + "_flip" + std::to_string(spec.flips) + ".csv");
        save_roc(clean, clean_path);
        save_roc(flipped, flip_path);
        outputs = {{"roc_clean", clean_path}, {"roc_flip", flip_path}};
        cfg["m"] = m;
        cfg["flips"] = spec.flips;
        cfg["auc_clean"] = clean.auc;
        cfg["auc_flip"] = flipped.auc;
    } else {
        const int m = spec.m > 0 ? spec.m : 1000;
        const Dataset fresh =
            generate_dataset(grid, m, p_f, Variant::D2, spec.seed, spec.jobs, kStreamEval);
        std::vector<RolloutMode> modes;
        if (spec.mode) {
            modes = {*spec.mode};
        } else {
            modes = {RolloutMode::MatchedHorizon, RolloutMode::UntilFixedPoint,
                     RolloutMode::LongOnly};
        }
        cfg["m"] = m;
        for (RolloutMode mode : modes) {
            const RocCurve curve = rollout_roc(model, fresh.trajectories, mode, spec.jobs);
            const fs::path path = out_dir / (stem + "_" + rollout_mode_name(mode) + ".csv");
            save_roc(curve, path);
            outputs.emplace_back("roc_" + rollout_mode_name(mode), path);
            cfg["auc_" + rollout_mode_name(mode)] = curve.auc;
        }
    }
    emit_manifest("evaluate", cfg, spec.seed,
                  {{"model", spec.model_path}, {"grid", spec.grid_path}}, outputs,
                  timer.seconds(), manifest_out);
}

// ---------------------------------------------------------------------------
// subcommand argument parsing

int cmd_simulate(const std::vector<std::string>& args) {
    po::options_description opts("simulate: generate a cascade trajectory dataset");
    opts.add(common_options());
    opts.add_options()
        ("grid", po::value<std::string>()->required(), "grid case file")
        ("capacity-scale", po::value<double>()->default_value(1.0), "global capacity factor")
        ("variant", po::value<std::string>()->default_value("D1"), "D1 (all) or D2 (propagating)")
        ("m", po::value<int>()->required(), "trajectories to accept")
        ("p-f", po::value<double>()->default_value(-1.0), "seed failure probability (default 2.5/L)")
        ("data-out", po::value<std::string>(), "dataset path (default <out>/dataset_<variant>.jsonl)");
    const po::variables_map vm = parse_args(opts, args);
    if (vm.count("help")) {
        std::cout << opts << '\n';
        return 0;
    }

    SimulateSpec spec;
    spec.grid_path = vm["grid"].as<std::string>();
    spec.capacity_scale = vm["capacity-scale"].as<double>();
    spec.variant = variant_from_name(vm["variant"].as<std::string>());
    spec.m = vm["m"].as<int>();
    require_positive(spec.m, "--m");
    spec.p_f = vm["p-f"].as<double>();
    spec.seed = effective_seed(vm["seed"].as<std::uint64_t>());
    spec.jobs = vm["jobs"].as<int>();
    require_positive(spec.jobs, "--jobs");

    const fs::path out_dir = vm["out"].as<std::string>();
    const fs::path data_out = vm.count("data-out")
        ? fs::path(vm["data-out"].as<std::string>())
        : out_dir / ("dataset_" + variant_name(spec.variant) + ".jsonl");
    const fs::path manifest =
        out_dir / ("manifest_simulate_" + variant_name(spec.variant) + ".json");
    const Dataset d = run_simulate(spec, data_out, manifest);
    std::cout << "wrote " << data_out.string() << " (" << d.trajectories.size()
              << " trajectories, propagation " << d.propagation_fraction() << ")\n";
    return 0;
}

int cmd_learn(const std::string& kind, const std::vector<std::string>& args) {
    po::options_description opts("learn-" + kind + ": fit the " + kind + " interaction model");
    opts.add(common_options());
    opts.add_options()
        ("grid", po::value<std::string>()->required(), "grid case file")
        ("capacity-scale", po::value<double>()->default_value(1.0), "global capacity factor")
        ("data", po::value<std::string>()->required(), "trajectory dataset")
        ("lambda", po::value<double>()->default_value(-1.0),
         "l1 strength (default 1e-4 for D1, 5e-4 for D2)")
        ("delta", po::value<double>()->default_value(0.1), "support threshold")
        ("tol", po::value<double>()->default_value(1e-8), "relative objective tolerance")
        ("max-iters", po::value<int>()->default_value(10000), "iteration cap per line")
        ("model-out", po::value<std::string>(), "model path (default <out>/model_<kind>.json)");
    const po::variables_map vm = parse_args(opts, args);
    if (vm.count("help")) {
        std::cout << opts << '\n';
        return 0;
    }

    LearnSpec spec;
    spec.grid_path = vm["grid"].as<std::string>();
    spec.capacity_scale = vm["capacity-scale"].as<double>();
    spec.data_path = vm["data"].as<std::string>();
    spec.kind = kind;
    spec.lambda = vm["lambda"].as<double>();
    spec.delta = vm["delta"].as<double>();
    spec.tol = vm["tol"].as<double>();
    spec.max_iters = vm["max-iters"].as<int>();
    require_positive(spec.max_iters, "--max-iters");
    spec.jobs = vm["jobs"].as<int>();
    require_positive(spec.jobs, "--jobs");
    if (spec.delta < 0.0) throw InvariantError("--delta must be non-negative");
    if (!(spec.tol > 0.0)) throw InvariantError("--tol must be positive");

    const fs::path out_dir = vm["out"].as<std::string>();
    const fs::path model_out = vm.count("model-out")
        ? fs::path(vm["model-out"].as<std::string>())
        : out_dir / ("model_" + kind + ".json");
    const fs::path manifest = out_dir / ("manifest_learn_" + kind + ".json");
    const InteractionModel model = run_learn(spec, model_out, manifest);
    std::cout << "wrote " << model_out.string() << " (sparsity " << model.sparsity() << ")\n";
    return 0;
}

int cmd_sample(const std::vector<std::string>& args) {
    po::options_description opts("sample: draw steady states from a static model");
    opts.add(common_options());
    opts.add_options()
        ("model", po::value<std::string>()->required(), "interaction model file")
        ("n", po::value<int>()->required(), "samples to draw")
        ("warmup", po::value<std::uint64_t>()->default_value(0), "updates before sampling (default 10^3 L)")
        ("stride", po::value<std::uint64_t>()->default_value(0), "updates between samples (default 20 L)")
        ("chains", po::value<int>()->default_value(1), "independent chains")
        ("samples-out", po::value<std::string>(), "samples path (default <out>/samples.jsonl)")
        ("stats-out", po::value<std::string>(), "stats path (default <out>/size_stats.csv)");
    const po::variables_map vm = parse_args(opts, args);
    if (vm.count("help")) {
        std::cout << opts << '\n';
        return 0;
    }

    SampleSpec spec;
    spec.model_path = vm["model"].as<std::string>();
    spec.n_samples = vm["n"].as<int>();
    require_positive(spec.n_samples, "--n");
    spec.warmup = vm["warmup"].as<std::uint64_t>();
    spec.stride = vm["stride"].as<std::uint64_t>();
    spec.chains = vm["chains"].as<int>();
    require_positive(spec.chains, "--chains");
    spec.seed = effective_seed(vm["seed"].as<std::uint64_t>());
    spec.jobs = vm["jobs"].as<int>();
    require_positive(spec.jobs, "--jobs");

    const fs::path out_dir = vm["out"].as<std::string>();
    const fs::path samples_out = vm.count("samples-out")
        ? fs::path(vm["samples-out"].as<std::string>()) : out_dir / "samples.jsonl";
    const fs::path stats_out = vm.count("stats-out")
        ? fs::path(vm["stats-out"].as<std::string>()) : out_dir / "size_stats.csv";
    run_sample(spec, samples_out, stats_out, out_dir / "manifest_sample.json");
    std::cout << "wrote " << samples_out.string() << " and " << stats_out.string() << '\n';
    return 0;
}

int cmd_cluster(const std::vector<std::string>& args) {
    po::options_description opts("cluster: map-equation clusters and co-susceptibility");
    opts.add(common_options());
    opts.add_options()
        ("model", po::value<std::string>()->required(), "interaction model file")
        ("grid", po::value<std::string>()->required(), "grid case file")
        ("capacity-scale", po::value<double>()->default_value(1.0), "global capacity factor")
        ("data", po::value<std::string>()->required(), "trajectory dataset (for gamma)")
        ("teleport", po::value<double>()->default_value(0.15), "random-walk teleport probability")
        ("n-null", po::value<int>()->default_value(200), "null cluster draws per cluster")
        ("min-size", po::value<int>()->default_value(5), "smallest cluster scored by gamma");
    const po::variables_map vm = parse_args(opts, args);
    if (vm.count("help")) {
        std::cout << opts << '\n';
        return 0;
    }

    ClusterSpec spec;
    spec.model_path = vm["model"].as<std::string>();
    spec.grid_path = vm["grid"].as<std::string>();
    spec.capacity_scale = vm["capacity-scale"].as<double>();
    spec.data_path = vm["data"].as<std::string>();
    spec.teleport = vm["teleport"].as<double>();
    if (!(spec.teleport > 0.0 && spec.teleport < 1.0)) {
        throw InvariantError("--teleport must lie in (0, 1)");
    }
    spec.n_null = vm["n-null"].as<int>();
    require_positive(spec.n_null, "--n-null");
    spec.min_size = vm["min-size"].as<int>();
    require_positive(spec.min_size, "--min-size");
    spec.seed = effective_seed(vm["seed"].as<std::uint64_t>());
    spec.jobs = vm["jobs"].as<int>();
    require_positive(spec.jobs, "--jobs");

    const fs::path out_dir = vm["out"].as<std::string>();
    const ClusterAssignment a =
        run_cluster(spec, out_dir / "clusters.csv", out_dir / "cluster_matrix.csv",
                    out_dir / "gamma.csv", out_dir / "manifest_cluster.json");
    std::cout << "found " << a.n_clusters() << " clusters (codelength " << a.codelength
              << " bits)\n";
    return 0;
}

int cmd_evaluate(const std::vector<std::string>& args) {
    po::options_description opts("evaluate: ROC curves for a learned model");
    opts.add(common_options());
    opts.add_options()
        ("model", po::value<std::string>()->required(), "interaction model file")
        ("grid", po::value<std::string>()->required(), "grid case file")
        ("capacity-scale", po::value<double>()->default_value(1.0), "global capacity factor")
        ("m", po::value<int>()->default_value(0),
         "fresh evaluation trajectories (default 5000 static, 1000 kinetic)")
        ("flips", po::value<int>()->default_value(2), "neighbor flips in the perturbed static run")
        ("p-f", po::value<double>()->default_value(-1.0), "seed failure probability (default 2.5/L)")
        ("mode", po::value<std::string>(),
         "kinetic rollout mode (matched-horizon | until-fixed-point | long-only; default all)");
    const po::variables_map vm = parse_args(opts, args);
    if (vm.count("help")) {
        std::cout << opts << '\n';
        return 0;
    }

    EvaluateSpec spec;
    spec.model_path = vm["model"].as<std::string>();
    spec.grid_path = vm["grid"].as<std::string>();
    spec.capacity_scale = vm["capacity-scale"].as<double>();
    spec.m = vm["m"].as<int>();
    spec.flips = vm["flips"].as<int>();
    if (spec.flips < 0) throw InvariantError("--flips must be non-negative");
    spec.p_f = vm["p-f"].as<double>();
    spec.seed = effective_seed(vm["seed"].as<std::uint64_t>());
    spec.jobs = vm["jobs"].as<int>();
    require_positive(spec.jobs, "--jobs");
    if (vm.count("mode")) spec.mode = rollout_mode_from_name(vm["mode"].as<std::string>());

    const fs::path out_dir = vm["out"].as<std::string>();
    run_evaluate(spec, out_dir, "roc", out_dir / "manifest_evaluate.json");
    std::cout << "wrote ROC curves under " << out_dir.string() << '\n';
    return 0;
}

int cmd_metrics(const std::vector<std::string>& args) {
    po::options_description opts("metrics: edge distances, LODF, failure correlations");
    opts.add(common_options());
    opts.add_options()
        ("grid", po::value<std::string>()->required(), "grid case file")
        ("capacity-scale", po::value<double>()->default_value(1.0), "global capacity factor")
        ("data", po::value<std::string>(), "trajectory dataset (enables correlations)");
    const po::variables_map vm = parse_args(opts, args);
    if (vm.count("help")) {
        std::cout << opts << '\n';
        return 0;
    }

    Stopwatch timer;
    const fs::path grid_path = vm["grid"].as<std::string>();
    const double capacity_scale = vm["capacity-scale"].as<double>();
    const Grid grid = load_grid(grid_path, "case", capacity_scale);
    const fs::path out_dir = vm["out"].as<std::string>();
    const std::uint64_t seed = effective_seed(vm["seed"].as<std::uint64_t>());

    const auto d = edge_distance(grid);
    std::vector<std::vector<std::string>> rows;
    for (int e = 0; e < grid.n_lines(); ++e) {
        std::vector<std::string> row{std::to_string(e)};
        for (int f = 0; f < grid.n_lines(); ++f) {
            row.push_back(std::to_string(d[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)]));
        }
        rows.push_back(std::move(row));
    }
    std::vector<std::string> header{"line"};
    for (int f = 0; f < grid.n_lines(); ++f) header.push_back(std::to_string(f));
    const fs::path dist_path = out_dir / "edge_distance.csv";
    write_csv(dist_path, header, rows);

    rows.clear();
    for (int e = 0; e < grid.n_lines(); ++e) {
        std::vector<std::string> row{std::to_string(e)};
        for (int f = 0; f < grid.n_lines(); ++f) {
            if (e == f) {
                row.push_back("");
                continue;
            }
            try {
                row.push_back(format_double(lodf(grid, e, f)));
            } catch (const std::runtime_error&) {
                row.push_back("");  // bridge or zero-flow line: LODF undefined
            }
        }
        rows.push_back(std::move(row));
    }
    const fs::path lodf_path = out_dir / "lodf.csv";
    write_csv(lodf_path, header, rows);

    std::vector<std::pair<std::string, fs::path>> inputs{{"grid", grid_path}};
    std::vector<std::pair<std::string, fs::path>> outputs{{"edge_distance", dist_path},
                                                          {"lodf", lodf_path}};
    json cfg = {{"grid", grid_path.string()}, {"capacity_scale", capacity_scale}};

    if (vm.count("data")) {
        const fs::path data_path = vm["data"].as<std::string>();
        const Dataset dataset = load_dataset(data_path);
        std::vector<NetworkState> finals;
        for (const Trajectory& t : dataset.trajectories) finals.push_back(t.final_state());
        rows.clear();
        for (int i = 0; i < grid.n_lines(); ++i) {
            for (int j = i + 1; j < grid.n_lines(); ++j) {
                try {
                    rows.push_back({std::to_string(i), std::to_string(j),
                                    format_double(pearson(finals, i, j))});
                } catch (const ZeroVarianceError&) {
                    // constant line state: correlation undefined, skip the pair
                }
            }
        }
        const fs::path corr_path = out_dir / "correlations.csv";
        write_csv(corr_path, {"i", "j", "pearson"}, rows);
        inputs.emplace_back("dataset", data_path);
        outputs.emplace_back("correlations", corr_path);
        cfg["data"] = data_path.string();
    }
    emit_manifest("metrics", cfg, seed, inputs, outputs, timer.seconds(),
                  out_dir / "manifest_metrics.json");
    std::cout << "wrote metrics under " << out_dir.string() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// figures: named chains over cached intermediates

struct FigureContext {
    fs::path grid_path;
    double capacity_scale = 1.0;
    fs::path out_dir;
    fs::path cache_dir;
    int m = 20000;
    int n_samples = 20000;
    int eval_m = 5000;
    int rollout_m = 1000;
    std::uint64_t seed = 1;
    int jobs = 1;
};

fs::path cached_dataset(const FigureContext& ctx, Variant variant) {
    const fs::path path = ctx.cache_dir / ("dataset_" + variant_name(variant) + ".jsonl");
    if (!fs::exists(path)) {
        SimulateSpec spec;
        spec.grid_path = ctx.grid_path;
        spec.capacity_scale = ctx.capacity_scale;
        spec.variant = variant;
        spec.m = ctx.m;
        spec.seed = ctx.seed;
        spec.jobs = ctx.jobs;
        run_simulate(spec, path,
                     ctx.cache_dir / ("manifest_simulate_" + variant_name(variant) + ".json"));
    }
    return path;
}

fs::path cached_model(const FigureContext& ctx, const std::string& kind, Variant variant) {
    const fs::path path =
        ctx.cache_dir / ("model_" + kind + "_" + variant_name(variant) + ".json");
    if (!fs::exists(path)) {
        LearnSpec spec;
        spec.grid_path = ctx.grid_path;
        spec.capacity_scale = ctx.capacity_scale;
        spec.data_path = cached_dataset(ctx, variant);
        spec.kind = kind;
        spec.jobs = ctx.jobs;
        run_learn(spec, path,
                  ctx.cache_dir /
                      ("manifest_learn_" + kind + "_" + variant_name(variant) + ".json"));
    }
    return path;
}

fs::path cached_samples(const FigureContext& ctx, Variant variant) {
    const fs::path path = ctx.cache_dir / ("samples_" + variant_name(variant) + ".jsonl");
    if (!fs::exists(path)) {
        SampleSpec spec;
        spec.model_path = cached_model(ctx, "static", variant);
        spec.n_samples = ctx.n_samples;
        spec.seed = ctx.seed;
        spec.jobs = ctx.jobs;
        run_sample(spec, path,
                   ctx.cache_dir / ("size_stats_" + variant_name(variant) + ".csv"),
                   ctx.cache_dir / ("manifest_sample_" + variant_name(variant) + ".json"));
    }
    return path;
}

int line_or_throw(const Grid& grid, int bus_a, int bus_b) {
    const int e = grid.line_between(bus_a, bus_b);
    if (e < 0) {
        throw InvariantError("no line joins buses " + std::to_string(bus_a) + " and " +
                             std::to_string(bus_b));
    }
    return e;
}

std::string join_failures(const NetworkState& state) {
    std::string out;
    for (std::size_t e = 0; e < state.size(); ++e) {
        if (state[e] != 1) continue;
        if (!out.empty()) out += ';';
        out += std::to_string(e);
    }
    return out;
}

void figure_triplet_correlations(const FigureContext& ctx, const Grid& grid,
                                 std::vector<std::pair<std::string, fs::path>>& outputs) {
    const Dataset dataset = load_dataset(cached_dataset(ctx, Variant::D2));
    std::vector<NetworkState> finals;
    for (const Trajectory& t : dataset.trajectories) finals.push_back(t.final_state());
    const int i = line_or_throw(grid, 3, 5);
    const int j = line_or_throw(grid, 7, 12);
    const int k = line_or_throw(grid, 5, 6);
    std::vector<std::vector<std::string>> rows = {
        {"C_ik", std::to_string(i), std::to_string(k), format_double(pearson(finals, i, k))},
        {"C_ij", std::to_string(i), std::to_string(j), format_double(pearson(finals, i, j))},
        {"C_kj", std::to_string(k), std::to_string(j), format_double(pearson(finals, k, j))}};
    const fs::path path = ctx.out_dir / "fig1a.csv";
    write_csv(path, {"name", "line_a", "line_b", "pearson"}, rows);
    outputs.emplace_back("fig1a", path);
}

void figure_intervention(const FigureContext& ctx, const Grid& grid,
                         std::vector<std::pair<std::string, fs::path>>& outputs) {
    const int i = line_or_throw(grid, 26, 25);
    const int kp = line_or_throw(grid, 18, 19);
    const Trajectory solo = run_trajectory(grid, {i});
    const Trajectory paired = run_trajectory(grid, {i, kp});
    std::vector<std::vector<std::string>> rows;
    for (std::size_t t = 0; t < solo.states.size(); ++t) {
        rows.push_back({"initial_i", std::to_string(t),
                        std::to_string(cascade_size(solo.states[t])),
                        join_failures(solo.states[t])});
    }
    for (std::size_t t = 0; t < paired.states.size(); ++t) {
        rows.push_back({"initial_i_kprime", std::to_string(t),
                        std::to_string(cascade_size(paired.states[t])),
                        join_failures(paired.states[t])});
    }
    const fs::path path = ctx.out_dir / "fig1b.csv";
    write_csv(path, {"scenario", "t", "failed", "failed_lines"}, rows);
    outputs.emplace_back("fig1b", path);
}

void write_moment_csv(const MomentReport& report, const fs::path& path) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < report.si_data.size(); ++i) {
        rows.push_back({"si", std::to_string(i), "", format_double(report.si_data[i]),
                        format_double(report.si_model[i])});
    }
    for (const auto& p : report.pairs) {
        rows.push_back({"sisj", std::to_string(p.i), std::to_string(p.j),
                        format_double(p.data), format_double(p.model)});
    }
    write_csv(path, {"kind", "i", "j", "data", "model"}, rows);
}

void figure_static_reconstruction(const FigureContext& ctx, Variant variant,
                                  const std::string& name,
                                  std::vector<std::pair<std::string, fs::path>>& outputs) {
    const Dataset dataset = load_dataset(cached_dataset(ctx, variant));
    const InteractionModel model = load_model(cached_model(ctx, "static", variant));
    const MomentReport report = moment_report(model, dedup_final_states(dataset));
    const fs::path path = ctx.out_dir / (name + ".csv");
    write_moment_csv(report, path);
    outputs.emplace_back(name, path);
}

void figure_mc_moments(const FigureContext& ctx, Variant variant, const std::string& name,
                       std::vector<std::pair<std::string, fs::path>>& outputs) {
    const Dataset dataset = load_dataset(cached_dataset(ctx, variant));
    const std::vector<NetworkState> samples = load_states(cached_samples(ctx, variant));
    const std::vector<NetworkState> finals = dedup_final_states(dataset);

    const int L = static_cast<int>(samples.front().size());
    auto first_moments = [L](const std::vector<NetworkState>& states) {
        std::vector<double> m(static_cast<std::size_t>(L), 0.0);
        for (const NetworkState& s : states) {
            for (int e = 0; e < L; ++e) m[static_cast<std::size_t>(e)] += s[static_cast<std::size_t>(e)];
        }
        for (double& v : m) v /= static_cast<double>(states.size());
        return m;
    };
    auto second_moment = [L](const std::vector<NetworkState>& states, int i, int j) {
        double m = 0.0;
        for (const NetworkState& s : states) {
            m += s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)];
        }
        return m / static_cast<double>(states.size());
    };

    const auto si_data = first_moments(finals);
    const auto si_mc = first_moments(samples);
    std::vector<std::vector<std::string>> rows;
    for (int e = 0; e < L; ++e) {
        rows.push_back({"si", std::to_string(e), "", format_double(si_data[static_cast<std::size_t>(e)]),
                        format_double(si_mc[static_cast<std::size_t>(e)])});
    }
    for (int i = 0; i < L; ++i) {
        for (int j = i + 1; j < L; ++j) {
            rows.push_back({"sisj", std::to_string(i), std::to_string(j),
                            format_double(second_moment(finals, i, j)),
                            format_double(second_moment(samples, i, j))});
        }
    }
    const fs::path path = ctx.out_dir / (name + ".csv");
    write_csv(path, {"kind", "i", "j", "data", "mc"}, rows);
    outputs.emplace_back(name, path);
}

void figure_size_stats(const FigureContext& ctx, Variant variant, const std::string& name,
                       std::vector<std::pair<std::string, fs::path>>& outputs) {
    const Dataset dataset = load_dataset(cached_dataset(ctx, variant));
    const std::vector<NetworkState> samples = load_states(cached_samples(ctx, variant));
    std::vector<int> data_sizes;
    for (const Trajectory& t : dataset.trajectories) {
        data_sizes.push_back(cascade_size(t.final_state()));
    }
    const SizeStats data_stats = cascade_size_stats(data_sizes);
    // MC sizes binned with the data's bin width so the inset overlays
    const SizeStats mc_stats = cascade_size_stats(sizes_of(samples), data_stats.z_max);

    const fs::path data_path = ctx.out_dir / (name + "_data.csv");
    const fs::path mc_path = ctx.out_dir / (name + "_mc.csv");
    save_size_stats(data_stats, data_path);
    save_size_stats(mc_stats, mc_path);
    outputs.emplace_back(name + "_data", data_path);
    outputs.emplace_back(name + "_mc", mc_path);
}

void figure_static_roc(const FigureContext& ctx, Variant variant, const std::string& name,
                       std::vector<std::pair<std::string, fs::path>>& outputs) {
    EvaluateSpec spec;
    spec.model_path = cached_model(ctx, "static", variant);
    spec.grid_path = ctx.grid_path;
    spec.capacity_scale = ctx.capacity_scale;
    spec.m = ctx.eval_m;
    spec.seed = ctx.seed;
    spec.jobs = ctx.jobs;
    run_evaluate(spec, ctx.out_dir, name,
                 ctx.cache_dir / ("manifest_evaluate_" + name + ".json"));
    outputs.emplace_back(name + "_clean", ctx.out_dir / (name + "_clean.csv"));
    outputs.emplace_back(name + "_flip2", ctx.out_dir / (name + "_flip2.csv"));
}

void figure_influence(const FigureContext& ctx, const Grid& grid,
                      std::vector<std::pair<std::string, fs::path>>& outputs) {
    const InteractionModel model = load_model(cached_model(ctx, "static", Variant::D2));
    ClusterConfig config;
    config.seed = ctx.seed;
    const ClusterAssignment assignment = cluster_flow_graph(build_flow_graph(model), config);
    const std::vector<int> degree = influence_degree(model);

    std::vector<std::vector<std::string>> rows;
    for (int e = 0; e < grid.n_lines(); ++e) {
        const Line& line = grid.lines[static_cast<std::size_t>(e)];
        rows.push_back({std::to_string(e),
                        std::to_string(grid.buses[static_cast<std::size_t>(line.from)].id),
                        std::to_string(grid.buses[static_cast<std::size_t>(line.to)].id),
                        std::to_string(degree[static_cast<std::size_t>(e)]),
                        std::to_string(assignment.cluster_of[static_cast<std::size_t>(e)])});
    }
    const fs::path lines_path = ctx.out_dir / "fig5_lines.csv";
    write_csv(lines_path, {"line_index", "from_bus", "to_bus", "influence_degree", "cluster_id"},
              rows);

    rows.clear();
    for (const Bus& b : grid.buses) {
        rows.push_back({std::to_string(b.id), format_double(b.injection),
                        b.is_generator ? "1" : "0"});
    }
    const fs::path buses_path = ctx.out_dir / "fig5_buses.csv";
    write_csv(buses_path, {"bus", "injection", "is_generator"}, rows);
    outputs.emplace_back("fig5_lines", lines_path);
    outputs.emplace_back("fig5_buses", buses_path);
}

void figure_cluster_artifact(const FigureContext& ctx, Variant variant, bool matrix,
                             const std::string& name,
                             std::vector<std::pair<std::string, fs::path>>& outputs) {
    ClusterSpec spec;
    spec.model_path = cached_model(ctx, "static", variant);
    spec.grid_path = ctx.grid_path;
    spec.capacity_scale = ctx.capacity_scale;
    spec.data_path = cached_dataset(ctx, variant);
    spec.seed = ctx.seed;
    spec.jobs = ctx.jobs;
    const std::string v = variant_name(variant);
    const fs::path clusters_out = ctx.cache_dir / ("clusters_" + v + ".csv");
    const fs::path matrix_out = ctx.out_dir / (matrix ? name + ".csv" : "cluster_matrix_" + v + ".csv");
    const fs::path gamma_out = ctx.out_dir / (matrix ? "gamma_" + v + ".csv" : name + ".csv");
    run_cluster(spec, clusters_out, matrix_out, gamma_out,
                ctx.cache_dir / ("manifest_cluster_" + v + ".json"));
    outputs.emplace_back(name, matrix ? matrix_out : gamma_out);
}

void figure_kinetic_moments(const FigureContext& ctx, Variant variant, const std::string& name,
                            std::vector<std::pair<std::string, fs::path>>& outputs) {
    const Dataset dataset = load_dataset(cached_dataset(ctx, variant));
    const InteractionModel model = load_model(cached_model(ctx, "kinetic", variant));
    const KineticMomentReport report =
        kinetic_moment_report(model, build_transitions(dataset.trajectories));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < report.si_data.size(); ++i) {
        rows.push_back({"si", std::to_string(i), "", format_double(report.si_data[i]),
                        format_double(report.si_model[i])});
    }
    for (const auto& p : report.pairs) {
        rows.push_back({"sisj", std::to_string(p.i), std::to_string(p.j),
                        format_double(p.data), format_double(p.model)});
    }
    const fs::path path = ctx.out_dir / (name + ".csv");
    write_csv(path, {"kind", "i", "j", "data", "model"}, rows);
    outputs.emplace_back(name, path);
}

void figure_rollout_roc(const FigureContext& ctx, const std::vector<RolloutMode>& modes,
                        const std::string& name,
                        std::vector<std::pair<std::string, fs::path>>& outputs) {
    for (RolloutMode mode : modes) {
        EvaluateSpec spec;
        spec.model_path = cached_model(ctx, "kinetic", Variant::D2);
        spec.grid_path = ctx.grid_path;
        spec.capacity_scale = ctx.capacity_scale;
        spec.m = ctx.rollout_m;
        spec.seed = ctx.seed;
        spec.jobs = ctx.jobs;
        spec.mode = mode;
        run_evaluate(spec, ctx.out_dir, name,
                     ctx.cache_dir /
                         ("manifest_evaluate_" + name + "_" + rollout_mode_name(mode) + ".json"));
        outputs.emplace_back(name + "_" + rollout_mode_name(mode),
                             ctx.out_dir / (name + "_" + rollout_mode_name(mode) + ".csv"));
    }
}

int cmd_figures(const std::vector<std::string>& args) {
    po::options_description opts("figures: emit the plot data behind a named figure");
    opts.add(common_options());
    opts.add_options()
        ("name", po::value<std::string>()->required(),
         "fig1a fig1b fig3a-fig3d fig4a-fig4d fig5 fig6a-fig6d fig7a fig7b fig8a fig8b")
        ("grid", po::value<std::string>()->required(), "grid case file")
        ("capacity-scale", po::value<double>()->default_value(1.0), "global capacity factor")
        ("m", po::value<int>()->default_value(20000), "trajectories per cached dataset")
        ("n-samples", po::value<int>()->default_value(20000), "cached Glauber samples")
        ("eval-m", po::value<int>()->default_value(5000), "fresh trajectories for static ROC")
        ("rollout-m", po::value<int>()->default_value(1000), "fresh trajectories for rollout ROC");
    po::positional_options_description pos;
    pos.add("name", 1);
    po::variables_map vm;
    po::store(po::command_line_parser(args).options(opts).positional(pos).run(), vm);
    if (vm.count("help")) {
        std::cout << opts << '\n';
        return 0;
    }
    po::notify(vm);

    FigureContext ctx;
    ctx.grid_path = vm["grid"].as<std::string>();
    ctx.capacity_scale = vm["capacity-scale"].as<double>();
    ctx.out_dir = vm["out"].as<std::string>();
    ctx.cache_dir = ctx.out_dir / "cache";
    ctx.m = vm["m"].as<int>();
    require_positive(ctx.m, "--m");
    ctx.n_samples = vm["n-samples"].as<int>();
    require_positive(ctx.n_samples, "--n-samples");
    ctx.eval_m = vm["eval-m"].as<int>();
    require_positive(ctx.eval_m, "--eval-m");
    ctx.rollout_m = vm["rollout-m"].as<int>();
    require_positive(ctx.rollout_m, "--rollout-m");
    ctx.seed = effective_seed(vm["seed"].as<std::uint64_t>());
    ctx.jobs = vm["jobs"].as<int>();
    require_positive(ctx.jobs, "--jobs");
    fs::create_directories(ctx.cache_dir);

    const std::string name = vm["name"].as<std::string>();
    const Grid grid = load_grid(ctx.grid_path, "case", ctx.capacity_scale);

    Stopwatch timer;
    std::vector<std::pair<std::string, fs::path>> outputs;
    if (name == "fig1a") {
        figure_triplet_correlations(ctx, grid, outputs);
    } else if (name == "fig1b") {
        figure_intervention(ctx, grid, outputs);
    } else if (name == "fig3a") {
        figure_static_reconstruction(ctx, Variant::D1, name, outputs);
    } else if (name == "fig3b") {
        figure_mc_moments(ctx, Variant::D1, name, outputs);
    } else if (name == "fig3c") {
        figure_static_reconstruction(ctx, Variant::D2, name, outputs);
    } else if (name == "fig3d") {
        figure_mc_moments(ctx, Variant::D2, name, outputs);
    } else if (name == "fig4a") {
        figure_size_stats(ctx, Variant::D1, name, outputs);
    } else if (name == "fig4b") {
        figure_static_roc(ctx, Variant::D1, name, outputs);
    } else if (name == "fig4c") {
        figure_size_stats(ctx, Variant::D2, name, outputs);
    } else if (name == "fig4d") {
        figure_static_roc(ctx, Variant::D2, name, outputs);
    } else if (name == "fig5") {
        figure_influence(ctx, grid, outputs);
    } else if (name == "fig6a") {
        figure_cluster_artifact(ctx, Variant::D1, true, name, outputs);
    } else if (name == "fig6b") {
        figure_cluster_artifact(ctx, Variant::D2, true, name, outputs);
    } else if (name == "fig6c") {
        figure_cluster_artifact(ctx, Variant::D1, false, name, outputs);
    } else if (name == "fig6d") {
        figure_cluster_artifact(ctx, Variant::D2, false, name, outputs);
    } else if (name == "fig7a") {
        figure_kinetic_moments(ctx, Variant::D1, name, outputs);
    } else if (name == "fig7b") {
        figure_kinetic_moments(ctx, Variant::D2, name, outputs);
    } else if (name == "fig8a") {
        figure_rollout_roc(ctx, {RolloutMode::MatchedHorizon, RolloutMode::LongOnly}, name,
                           outputs);
    } else if (name == "fig8b") {
        figure_rollout_roc(ctx, {RolloutMode::UntilFixedPoint}, name, outputs);
    } else {
        throw InvariantError("unknown figure '" + name + "'");
    }

    const json cfg = {{"name", name},
                      {"grid", ctx.grid_path.string()},
                      {"capacity_scale", ctx.capacity_scale},
                      {"m", ctx.m},
                      {"n_samples", ctx.n_samples},
                      {"eval_m", ctx.eval_m},
                      {"rollout_m", ctx.rollout_m}};
    emit_manifest("figures", cfg, ctx.seed, {{"grid", ctx.grid_path}}, outputs, timer.seconds(),
                  ctx.out_dir / ("manifest_" + name + ".json"));
    std::cout << "wrote data for " << name << " under " << ctx.out_dir.string() << '\n';
    return 0;
}

void print_usage(std::ostream& out) {
    out << "usage: cascadelab <command> [options]\n\n"
        << "commands:\n"
        << "  simulate       generate a cascade trajectory dataset\n"
        << "  learn-static   fit the steady-state interaction model\n"
        << "  learn-kinetic  fit the transition interaction model\n"
        << "  sample         draw Glauber steady states and size statistics\n"
        << "  cluster        map-equation clusters and co-susceptibility\n"
        << "  evaluate       ROC curves for a learned model\n"
        << "  metrics        edge distances, LODF, failure correlations\n"
        << "  figures        emit the plot data behind a named figure\n\n"
        << "run 'cascadelab <command> --help' for the command's options\n";
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        print_usage(std::cerr);
        return kExitInvalidConfig;
    }
    const std::string command = argv[1];
    const std::vector<std::string> args(argv + 2, argv + argc);

    try {
        if (command == "simulate") return cmd_simulate(args);
        if (command == "learn-static") return cmd_learn("static", args);
        if (command == "learn-kinetic") return cmd_learn("kinetic", args);
        if (command == "sample") return cmd_sample(args);
        if (command == "cluster") return cmd_cluster(args);
        if (command == "evaluate") return cmd_evaluate(args);
        if (command == "metrics") return cmd_metrics(args);
        if (command == "figures") return cmd_figures(args);
        if (command == "--help" || command == "-h" || command == "help") {
            print_usage(std::cout);
            return 0;
        }
        std::cerr << "unknown command '" << command << "'\n";
        print_usage(std::cerr);
        return kExitInvalidConfig;
    } catch (const MissingInputError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitMissingInput;
    } catch (const po::error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitInvalidConfig;
    }
}
