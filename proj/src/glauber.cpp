#include "cascadelab/glauber.hpp"

#include <algorithm>
#include <cmath>

#include "cascadelab/error.hpp"
#include "cascadelab/parallel.hpp"

namespace cascadelab {

SamplerConfig default_sampler_config(int n_lines, int n_samples, std::uint64_t seed) {
    SamplerConfig config;
    config.warmup = 1000ULL * static_cast<std::uint64_t>(n_lines);
    config.stride = 20ULL * static_cast<std::uint64_t>(n_lines);
    config.n_samples = n_samples;
    config.seed = seed;
    return config;
}

void glauber_update(const InteractionModel& model, NetworkState& state, int i, Rng& rng) {
    const double p_plus = activation_probability(model.local_field(i, state));
    state[static_cast<std::size_t>(i)] = rng.uniform01() < p_plus ? 1 : -1;
}

std::vector<NetworkState> sample_steady_states(const InteractionModel& model,
                                               const SamplerConfig& config,
                                               int jobs) {
    if (config.stride < 1) throw InvariantError("stride must be >= 1");
    if (config.n_chains < 1) throw InvariantError("need at least one chain");
    if (config.n_samples < 0) throw InvariantError("negative sample count");
    const int L = model.n_lines;
    const int chains = std::min(config.n_chains, std::max(1, config.n_samples));
    std::vector<std::vector<NetworkState>> per_chain(static_cast<std::size_t>(chains));

    parallel_for(static_cast<std::size_t>(chains), jobs, [&](std::size_t c) {
        // Spread samples evenly; earlier chains take the remainder.
        const int base = config.n_samples / chains;
        const int quota = base + (static_cast<int>(c) < config.n_samples % chains ? 1 : 0);
        if (quota == 0) return;

        Rng rng(derive_stream(config.seed, kStreamGlauber, c));
        NetworkState state(static_cast<std::size_t>(L));
        for (auto& s : state) s = rng.uniform01() < 0.5 ? 1 : -1;
        auto run_updates = [&](std::uint64_t count) {
            for (std::uint64_t u = 0; u < count; ++u) {
                const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(L)));
                glauber_update(model, state, i, rng);
            }
        };
        run_updates(config.warmup);
        auto& out = per_chain[c];
        out.reserve(static_cast<std::size_t>(quota));
        for (int k = 0; k < quota; ++k) {
            run_updates(config.stride);
            out.push_back(state);
        }
    });

    std::vector<NetworkState> samples;
    samples.reserve(static_cast<std::size_t>(config.n_samples));
    for (auto& chain : per_chain) {
        for (auto& s : chain) samples.push_back(std::move(s));
    }
    return samples;
}

std::vector<int> sizes_of(const std::vector<NetworkState>& states) {
    std::vector<int> sizes;
    sizes.reserve(states.size());
    for (const NetworkState& s : states) sizes.push_back(cascade_size(s));
    return sizes;
}

SizeStats cascade_size_stats(const std::vector<int>& sizes, int bin_z_max) {
    if (sizes.empty()) throw InvariantError("no sizes to bin");
    SizeStats stats;
    stats.z_max = *std::max_element(sizes.begin(), sizes.end());
    const int anchor = bin_z_max >= 0 ? bin_z_max : stats.z_max;
    const double n = static_cast<double>(sizes.size());

    std::vector<int> sorted = sizes;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (k + 1 == sorted.size() || sorted[k + 1] != sorted[k]) {
            stats.cdf.emplace_back(sorted[k], static_cast<double>(k + 1) / n);
        }
    }

    if (anchor == 0) {
        stats.delta_z = 0.0;
        stats.pdf.assign(1, 1.0);
        return stats;
    }
    stats.delta_z = static_cast<double>(anchor) / 20.0;
    stats.pdf.assign(20, 0.0);
    for (int z : sizes) {
        const int bin = std::min(19, static_cast<int>(z / stats.delta_z));
        stats.pdf[static_cast<std::size_t>(bin)] += 1.0 / n;
    }
    double lo = 1.0, hi = 0.0;
    for (double mass : stats.pdf) {
        if (mass <= 0.0) continue;
        lo = std::min(lo, mass);
        hi = std::max(hi, mass);
    }
    stats.span_decades = hi > 0.0 ? std::log10(hi / lo) : 0.0;
    return stats;
}

} // namespace cascadelab
