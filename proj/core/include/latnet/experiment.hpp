#pragma once

#include "latnet/ar_model.hpp"
#include "latnet/netgen.hpp"
#include "latnet/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace latnet {

struct ErrorSurfaceConfig {
    std::vector<Index> lengths;
    std::vector<int> taus;
    std::vector<std::uint64_t> seeds;
    int grid_size = kDefaultGridSize;
    std::optional<RegularizationConfig> reg;
    Index burn_in = 0;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;

    /// Throws InvalidArgument on empty lists or a cell with N <= tau.
    void validate() const;
};

struct ErrorSurfaceRow {
    Index length = 0;
    int tau = 0;
    std::uint64_t seed = 0;
    double hinf_error = 0.0;   ///< ||T_fit - T_true||_inf
    double coeff_error = 0.0;  ///< max |A_hat - A*|
    std::string error;         ///< nonempty when the cell failed
};

/// Seed used for one cell. Depends only on its coordinates, so results do not
/// depend on scheduling.
std::uint64_t cell_seed(std::uint64_t seed, Index length, int tau);

/// Simulate, fit and score every (N, tau, seed) cell against the true network.
/// Rows come back sorted by (N, tau, seed) in list order. Failing cells carry
/// a message in `error` instead of aborting the sweep.
std::vector<ErrorSurfaceRow> error_surface(const PartitionedNetwork& net,
                                           const ErrorSurfaceConfig& config);

struct BoundTableRow {
    int tau = 0;
    double optimal_error = 0.0;
    double gamma = 0.0;
    double bound = 0.0;
};

/// Optimal-AR truncation error next to the computable bound, tau = 1..tau_max.
std::vector<BoundTableRow> bound_table(const PartitionedNetwork& net,
                                       std::optional<double> rho_bar, int tau_max,
                                       int grid_size = kDefaultGridSize);

}  // namespace latnet
