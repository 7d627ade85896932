#include "cascadelab/model.hpp"

#include <algorithm>
#include <cmath>

#include "cascadelab/error.hpp"

namespace cascadelab {

double InteractionModel::coupling(int i, int j) const {
    const auto& row = J[static_cast<std::size_t>(i)];
    const auto it = std::lower_bound(row.begin(), row.end(), j,
                                     [](const auto& entry, int col) { return entry.first < col; });
    return it != row.end() && it->first == j ? it->second : 0.0;
}

double InteractionModel::local_field(int i, const NetworkState& s) const {
    if (static_cast<int>(s.size()) != n_lines) throw InvariantError("state size mismatch");
    double H = h[static_cast<std::size_t>(i)];
    for (const auto& [j, value] : J[static_cast<std::size_t>(i)]) {
        H += value * s[static_cast<std::size_t>(j)];
    }
    return H;
}

int InteractionModel::nonzeros() const {
    int count = 0;
    for (const auto& row : J) {
        for (const auto& [j, value] : row) {
            (void)j;
            if (value != 0.0) ++count;
        }
    }
    return count;
}

double InteractionModel::sparsity() const {
    const double denom = static_cast<double>(n_lines) * (n_lines - 1);
    return denom > 0.0 ? nonzeros() / denom : 0.0;
}

double activation_probability(double local_field) {
    return 1.0 / (1.0 + std::exp(-2.0 * local_field));
}

} // namespace cascadelab
