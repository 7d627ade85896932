#pragma once

#include <cstdint>
#include <vector>

#include "cascadelab/cascade.hpp"
#include "cascadelab/model.hpp"
#include "cascadelab/rng.hpp"

namespace cascadelab {

struct SamplerConfig {
    std::uint64_t warmup = 0;  ///< single-spin updates discarded up front
    std::uint64_t stride = 1;  ///< updates between consecutive samples
    int n_samples = 0;
    std::uint64_t seed = 0;
    int n_chains = 1;  ///< samples split over independent chains
};

/// Defaults: warmup 10^3 L, stride 20 L.
SamplerConfig default_sampler_config(int n_lines, int n_samples, std::uint64_t seed);

/// Resamples coordinate i from Pr(s_i=+1) = 1/(1+exp(-2 H_i(s))).
void glauber_update(const InteractionModel& model, NetworkState& state, int i, Rng& rng);

/// Uniform random start per chain, then warmup and stride as configured.
/// Chain c uses a stream derived from (seed, c); output is chain-ordered and
/// deterministic for a fixed config regardless of thread count.
std::vector<NetworkState> sample_steady_states(const InteractionModel& model,
                                               const SamplerConfig& config,
                                               int jobs = 1);

struct SizeStats {
    std::vector<std::pair<int, double>> cdf;  ///< (z, P(Z <= z)) at observed sizes
    double delta_z = 0.0;                     ///< bin width Z_max / 20
    std::vector<double> pdf;                  ///< 20 bin masses summing to 1
    int z_max = 0;
    double span_decades = 0.0;  ///< log10(max pdf / min nonzero pdf)
};

/// Bins with width z_max/20. `bin_z_max` anchors the bin width to a foreign
/// maximum (for overlaying sample stats on data stats); sizes past the last
/// bin clamp into it. z_max always reports the actual sample maximum.
SizeStats cascade_size_stats(const std::vector<int>& sizes, int bin_z_max = -1);

std::vector<int> sizes_of(const std::vector<NetworkState>& states);

} // namespace cascadelab
