#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cascadelab/cascade.hpp"

namespace cascadelab {

/// Pairwise model of line interactions: local fields h and a sparse,
/// zero-diagonal coupling matrix J stored by row.
struct InteractionModel {
    std::string kind = "static";  ///< "static" or "kinetic"
    int n_lines = 0;
    std::vector<double> h;
    std::vector<std::vector<std::pair<int, double>>> J;  ///< per row, sorted by column
    std::vector<std::vector<int>> support;               ///< thresholded neighbors per row
    std::vector<char> degenerate;                        ///< lines constant in the data

    struct FitMeta {
        double lambda = 0.0;
        double delta_m = 0.0;
        double delta_p = 0.0;
        int samples = 0;
        std::string dataset_hash;
        std::vector<double> objective;  ///< per-line final stage-2 objective
    } meta;

    double coupling(int i, int j) const;
    double local_field(int i, const NetworkState& s) const;
    int nonzeros() const;
    double sparsity() const;  ///< nonzeros / (L(L-1))
};

/// Pr(s_i = +1 | s) = 1 / (1 + exp(-2 H_i(s))).
double activation_probability(double local_field);

struct FitConfig {
    double lambda = -1.0;       ///< < 0 selects the default sample-size rule
    double lambda_scale = 1.0;  ///< scale factor in the default rule
    double eps = 0.01;          ///< confidence parameter in the default rule
    double delta_m = 0.1;
    double delta_p = 0.1;
    double tol = 1e-8;
    double stage2_tol = 1e-10;
    int max_iters = 10000;
    int jobs = 1;
};

} // namespace cascadelab
