#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstdint>

#include "cascadelab/cascade.hpp"
#include "cascadelab/evaluation.hpp"
#include "cascadelab/glauber.hpp"
#include "cascadelab/grid.hpp"
#include "cascadelab/inference.hpp"
#include "cascadelab/io.hpp"
#include "cascadelab/kinetic.hpp"
#include "cascadelab/metrics.hpp"
#include "cascadelab/model.hpp"
#include "cascadelab/static_learner.hpp"

namespace py = pybind11;
using namespace cascadelab;

namespace {

NetworkState to_state(const std::vector<int>& s) {
    NetworkState state;
    state.reserve(s.size());
    for (int v : s) state.push_back(static_cast<std::int8_t>(v));
    return state;
}

std::vector<int> from_state(const NetworkState& s) {
    return std::vector<int>(s.begin(), s.end());
}

std::vector<NetworkState> to_states(const std::vector<std::vector<int>>& raw) {
    std::vector<NetworkState> states;
    states.reserve(raw.size());
    for (const auto& s : raw) states.push_back(to_state(s));
    return states;
}

std::vector<std::vector<int>> from_states(const std::vector<NetworkState>& states) {
    std::vector<std::vector<int>> raw;
    raw.reserve(states.size());
    for (const auto& s : states) raw.push_back(from_state(s));
    return raw;
}

FitConfig make_fit_config(double lambda, double delta, double tol, int max_iters, int jobs) {
    FitConfig config;
    config.lambda = lambda;
    config.delta_m = delta;
    config.delta_p = delta;
    config.tol = tol;
    config.max_iters = max_iters;
    config.jobs = jobs;
    return config;
}

} // namespace

PYBIND11_MODULE(_cascadelab, m) {
    m.doc() = "cascade workbench core";

    py::class_<Grid>(m, "Grid")
        .def_property_readonly("n_buses", &Grid::n_buses)
        .def_property_readonly("n_lines", &Grid::n_lines)
        .def_property_readonly("slack_bus", [](const Grid& g) { return g.slack_bus; })
        .def("injections", &Grid::injections)
        .def("fingerprint", &Grid::fingerprint)
        .def("line_between", &Grid::line_between)
        .def("bus_index", &Grid::bus_index);

    m.def("load_grid",
          [](const std::string& path, double capacity_scale) {
              return load_grid(path, "case", capacity_scale);
          },
          py::arg("path"), py::arg("capacity_scale") = 1.0);
    m.def("parse_case", &parse_case, py::arg("text"), py::arg("capacity_scale") = 1.0);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("seed", &Trajectory::seed)
        .def_readonly("initial", &Trajectory::initial)
        .def_property_readonly("t_ss", &Trajectory::t_ss)
        .def_property_readonly("propagated", &Trajectory::propagated)
        .def_property_readonly("states",
                               [](const Trajectory& t) { return from_states(t.states); })
        .def_property_readonly("final_state",
                               [](const Trajectory& t) { return from_state(t.final_state()); });

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("variant",
                               [](const Dataset& ds) { return variant_name(ds.variant); })
        .def_readonly("grid_hash", &Dataset::grid_hash)
        .def_readonly("p_f", &Dataset::p_f)
        .def_readonly("seed", &Dataset::seed)
        .def_readonly("trajectories", &Dataset::trajectories)
        .def_readonly("draws", &Dataset::draws)
        .def_readonly("duplicates_skipped", &Dataset::duplicates_skipped)
        .def("propagation_fraction", &Dataset::propagation_fraction)
        .def("__len__", [](const Dataset& ds) { return ds.trajectories.size(); });

    m.def("run_trajectory",
          [](const Grid& g, const std::vector<int>& initial) {
              return run_trajectory(g, initial);
          },
          py::arg("grid"), py::arg("initial"));

    m.def("generate_dataset",
          [](const Grid& g, int m_target, double p_f, const std::string& variant,
             std::uint64_t seed, int jobs, bool eval_stream) {
              return generate_dataset(g, m_target, p_f, variant_from_name(variant), seed, jobs,
                                      eval_stream ? kStreamEval : kStreamTrain);
          },
          py::arg("grid"), py::arg("m_target"), py::arg("p_f"), py::arg("variant"),
          py::arg("seed"), py::arg("jobs") = 1, py::arg("eval_stream") = false);

    m.def("cascade_size",
          [](const std::vector<int>& s) { return cascade_size(to_state(s)); });

    m.def("save_dataset", [](const Dataset& ds, const std::filesystem::path& path) {
        save_dataset(ds, path);
    });
    m.def("load_dataset", [](const std::filesystem::path& path) { return load_dataset(path); });

    py::class_<InteractionModel>(m, "InteractionModel")
        .def_readonly("kind", &InteractionModel::kind)
        .def_readonly("n_lines", &InteractionModel::n_lines)
        .def_readonly("h", &InteractionModel::h)
        .def_readonly("support", &InteractionModel::support)
        .def_property_readonly("degenerate",
                               [](const InteractionModel& model) {
                                   return std::vector<int>(model.degenerate.begin(),
                                                           model.degenerate.end());
                               })
        .def("coupling", &InteractionModel::coupling)
        .def("couplings",
             [](const InteractionModel& model) {
                 std::vector<std::tuple<int, int, double>> triplets;
                 for (int i = 0; i < model.n_lines; ++i) {
                     for (const auto& [j, value] : model.J[static_cast<std::size_t>(i)]) {
                         triplets.emplace_back(i, j, value);
                     }
                 }
                 return triplets;
             })
        .def("local_field",
             [](const InteractionModel& model, const std::vector<int>& s, int i) {
                 return model.local_field(i, to_state(s));
             })
        .def("nonzeros", &InteractionModel::nonzeros)
        .def("sparsity", &InteractionModel::sparsity)
        .def_property_readonly("meta", [](const InteractionModel& model) {
            py::dict meta;
            meta["lambda"] = model.meta.lambda;
            meta["delta_m"] = model.meta.delta_m;
            meta["delta_p"] = model.meta.delta_p;
            meta["samples"] = model.meta.samples;
            meta["dataset_hash"] = model.meta.dataset_hash;
            return meta;
        });

    m.def("activation_probability", &activation_probability);
    m.def("dedup_final_states",
          [](const Dataset& ds) { return from_states(dedup_final_states(ds)); });

    m.def("fit_static",
          [](const std::vector<std::vector<int>>& states,
             const std::vector<std::vector<int>>& distances, double lambda, double delta,
             double tol, int max_iters, int jobs, const std::string& dataset_hash) {
              return fit_static_model(to_states(states), distances,
                                      make_fit_config(lambda, delta, tol, max_iters, jobs),
                                      dataset_hash);
          },
          py::arg("states"), py::arg("distances"), py::arg("lambda_") = -1.0,
          py::arg("delta") = 0.1, py::arg("tol") = 1e-8, py::arg("max_iters") = 10000,
          py::arg("jobs") = 1, py::arg("dataset_hash") = "");

    m.def("fit_kinetic",
          [](const std::vector<Trajectory>& trajectories,
             const std::vector<std::vector<int>>& distances, double lambda, double delta,
             double tol, int max_iters, int jobs, const std::string& dataset_hash) {
              return fit_kinetic_model(trajectories, distances,
                                       make_fit_config(lambda, delta, tol, max_iters, jobs),
                                       dataset_hash);
          },
          py::arg("trajectories"), py::arg("distances"), py::arg("lambda_") = -1.0,
          py::arg("delta") = 0.1, py::arg("tol") = 1e-8, py::arg("max_iters") = 10000,
          py::arg("jobs") = 1, py::arg("dataset_hash") = "");

    m.def("save_model", [](const InteractionModel& model, const std::filesystem::path& path) {
        save_model(model, path);
    });
    m.def("load_model", [](const std::filesystem::path& path) { return load_model(path); });

    m.def("moment_report",
          [](const InteractionModel& model, const std::vector<std::vector<int>>& states) {
              const MomentReport report = moment_report(model, to_states(states));
              std::vector<std::tuple<int, int, double, double>> pairs;
              pairs.reserve(report.pairs.size());
              for (const auto& p : report.pairs) pairs.emplace_back(p.i, p.j, p.data, p.model);
              py::dict out;
              out["si_data"] = report.si_data;
              out["si_model"] = report.si_model;
              out["pairs"] = pairs;
              return out;
          });

    m.def("sample_steady_states",
          [](const InteractionModel& model, int n_samples, std::uint64_t seed,
             std::int64_t warmup, std::int64_t stride, int chains, int jobs) {
              SamplerConfig config = default_sampler_config(model.n_lines, n_samples, seed);
              if (warmup >= 0) config.warmup = static_cast<std::uint64_t>(warmup);
              if (stride > 0) config.stride = static_cast<std::uint64_t>(stride);
              config.n_chains = chains;
              return from_states(sample_steady_states(model, config, jobs));
          },
          py::arg("model"), py::arg("n_samples"), py::arg("seed"), py::arg("warmup") = -1,
          py::arg("stride") = 0, py::arg("chains") = 1, py::arg("jobs") = 1);

    py::class_<SizeStats>(m, "SizeStats")
        .def_readonly("cdf", &SizeStats::cdf)
        .def_readonly("pdf", &SizeStats::pdf)
        .def_readonly("delta_z", &SizeStats::delta_z)
        .def_readonly("z_max", &SizeStats::z_max)
        .def_readonly("span_decades", &SizeStats::span_decades);

    m.def("cascade_size_stats", &cascade_size_stats, py::arg("sizes"),
          py::arg("bin_z_max") = -1);

    m.def("edge_distance", &edge_distance);
    m.def("lodf", &lodf, py::arg("grid"), py::arg("e"), py::arg("ehat"));
    m.def("influence_degree", &influence_degree);

    py::class_<ClusterAssignment>(m, "ClusterAssignment")
        .def_readonly("cluster_of", &ClusterAssignment::cluster_of)
        .def_readonly("clusters", &ClusterAssignment::clusters)
        .def_readonly("codelength", &ClusterAssignment::codelength)
        .def_property_readonly("n_clusters", &ClusterAssignment::n_clusters);

    m.def("cluster_lines",
          [](const InteractionModel& model, double teleport, std::uint64_t seed) {
              ClusterConfig config;
              config.teleport = teleport;
              config.seed = seed;
              return cluster_flow_graph(build_flow_graph(model), config);
          },
          py::arg("model"), py::arg("teleport") = 0.15, py::arg("seed") = 0);

    m.def("gamma_report",
          [](const ClusterAssignment& assignment, const std::vector<std::vector<int>>& finals,
             int n_null, std::uint64_t seed, int min_size, int jobs) {
              const GammaReport report =
                  gamma_report(assignment, to_states(finals), n_null, seed, min_size, jobs);
              py::list entries;
              for (const auto& entry : report.clusters) {
                  py::dict row;
                  row["cluster_id"] = entry.cluster_id;
                  row["members"] = entry.members;
                  row["conditional_mean"] = entry.conditional_mean;
                  row["gamma"] = entry.gamma;
                  row["mean"] = entry.mean;
                  row["median"] = entry.median;
                  entries.append(row);
              }
              return entries;
          },
          py::arg("assignment"), py::arg("finals"), py::arg("n_null") = 200, py::arg("seed") = 0,
          py::arg("min_size") = 5, py::arg("jobs") = 1);

    py::class_<RocCurve>(m, "RocCurve")
        .def_readonly("auc", &RocCurve::auc)
        .def_property_readonly("points", [](const RocCurve& curve) {
            std::vector<std::tuple<double, double, double>> rows;
            rows.reserve(curve.points.size());
            for (const auto& p : curve.points) rows.emplace_back(p.threshold, p.fpr, p.tpr);
            return rows;
        });

    m.def("predict_line",
          [](const InteractionModel& model, const std::vector<int>& state, int i) {
              return predict_line(model, to_state(state), i);
          });

    m.def("static_prediction_experiment",
          [](const Grid& grid, const InteractionModel& model,
             const std::vector<Trajectory>& fresh, int flip_neighbors, std::uint64_t seed,
             int jobs) {
              return static_prediction_experiment(grid, model, fresh, flip_neighbors, seed, jobs);
          },
          py::arg("grid"), py::arg("model"), py::arg("fresh"), py::arg("flip_neighbors") = 0,
          py::arg("seed") = 0, py::arg("jobs") = 1);

    m.def("rollout_roc",
          [](const InteractionModel& model, const std::vector<Trajectory>& test,
             const std::string& mode, int jobs) {
              return rollout_roc(model, test, rollout_mode_from_name(mode), jobs);
          },
          py::arg("model"), py::arg("test"), py::arg("mode") = "matched-horizon",
          py::arg("jobs") = 1);
}
