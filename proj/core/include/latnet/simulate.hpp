#pragma once

#include "latnet/netgen.hpp"
#include "latnet/types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace latnet {

/// Manifest measurements y(1..N), one column per sample.
///
/// When `inputs` is present, column k holds u_m(k) (k = 0..N-1), the input
/// that produced output column k, i.e. y(k+1).
struct TimeSeriesData {
    Matrix outputs;
    std::optional<Matrix> inputs;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> dt_label;
    std::optional<std::string> rng_algorithm;

    Index n_manifest() const noexcept { return outputs.rows(); }
    Index length() const noexcept { return outputs.cols(); }

    /// Throws InvalidArgument on an empty or non-finite record, or on inputs of
    /// a different shape.
    void validate() const;

    /// Samples [first, first + count) as a new record (inputs sliced alongside).
    TimeSeriesData slice(Index first, Index count) const;
};

/// n_m x N matrix of i.i.d. standard normal draws, filled column by column.
Matrix gaussian_input(Index n_manifest, Index length, std::uint64_t seed);

struct SimulationOptions {
    /// Full initial state in partitioned order; zero when absent.
    std::optional<Vector> x0;
    /// Leading samples simulated and then discarded.
    Index burn_in = 0;
};

/// States larger than this in magnitude abort a simulation.
inline constexpr double kOverflowLimit = 1e100;

/// Drive the network with white Gaussian input on the manifest nodes; latent
/// nodes receive no input. Records y(k) = x_m(k) for k = 1..N together with
/// the inputs. Unstable networks produce a warning, not an error; a state
/// exceeding kOverflowLimit throws NumericOverflow.
TimeSeriesData simulate(const PartitionedNetwork& net, Index length, std::uint64_t seed,
                        const SimulationOptions& options = {});

/// The deterministic core: x(k+1) = A x(k) + [u(k); 0] for the columns u(k) of
/// `inputs`, returning x_m(1..N).
Matrix simulate_with_input(const PartitionedNetwork& net, const Matrix& inputs,
                           const std::optional<Vector>& x0 = std::nullopt);

}  // namespace latnet
