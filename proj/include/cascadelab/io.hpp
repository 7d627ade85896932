#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cascadelab/cascade.hpp"
#include "cascadelab/evaluation.hpp"
#include "cascadelab/glauber.hpp"
#include "cascadelab/inference.hpp"
#include "cascadelab/model.hpp"

namespace cascadelab {

/// Line-delimited records: a header object {grid_hash, m, p_f, seed, variant,
/// draws, propagating_draws, duplicates_skipped} followed by one object per
/// trajectory {seed, initial, states} with states as failed-index lists.
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

/// Single JSON document {kind, n_lines, h, J (row-major triplets), support,
/// degenerate, meta}. Keys are emitted sorted, so bytes are reproducible.
void save_model(const InteractionModel& model, const std::filesystem::path& path);
InteractionModel load_model(const std::filesystem::path& path);

/// Sampler output in the dataset's record shape: a header object then one
/// {state} failed-index record per sample.
void save_states(const std::vector<NetworkState>& states, int n_lines,
                 const std::string& model_hash, const SamplerConfig& config,
                 const std::filesystem::path& path);
std::vector<NetworkState> load_states(const std::filesystem::path& path);

/// One row per value; every cell formatted via format_double for stable bytes.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void save_roc(const RocCurve& curve, const std::filesystem::path& path);
void save_size_stats(const SizeStats& stats, const std::filesystem::path& path);
void save_clusters(const Grid& grid, const ClusterAssignment& assignment,
                   const std::filesystem::path& path);
/// Coupling matrix with rows/columns permuted to cluster order, for heat maps.
void save_cluster_matrix(const InteractionModel& model, const ClusterAssignment& assignment,
                         const std::filesystem::path& path);
void save_gamma(const GammaReport& report, const std::filesystem::path& path);

struct Manifest {
    std::string command;
    std::string config_json;   ///< serialized config object
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> input_hashes;
    std::vector<std::pair<std::string, std::string>> output_hashes;
    double wall_time_s = 0.0;
};

/// JSON {command, config, seed, input_hashes, output_hashes, wall_time_s}.
/// The wall time is informational; artifact identity rests on the hashes.
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

} // namespace cascadelab
