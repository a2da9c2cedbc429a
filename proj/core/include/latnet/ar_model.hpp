#pragma once

#include "latnet/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace latnet {

/// Exponential ridge penalty gamma * tr(A P P^T A^T) with
/// P = diag(1, rho0^-1, ..., rho0^-(tau-1)) (x) I.
struct RegularizationConfig {
    double gamma = 0.0;
    double rho0 = 1.0;

    void validate() const;
};

enum class Provenance { OptimalFromNetwork, Lsar, LsarRegularized };

std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);

/// x(k+1) = sum_{i<tau} mats[i] x(k-i) + u(k).
struct ARModel {
    std::vector<Matrix> mats;
    Provenance provenance = Provenance::Lsar;
    std::optional<RegularizationConfig> reg;
    /// Diagnostics attached by the estimator (ill-conditioning, min-norm branch).
    std::vector<std::string> notes;

    int order() const noexcept { return static_cast<int>(mats.size()); }
    Index n_manifest() const noexcept { return mats.empty() ? 0 : mats.front().rows(); }

    /// Throws InvalidArgument unless tau >= 1 and all blocks are equal-sized squares.
    void validate() const;

    /// [mats[0] mats[1] ... mats[tau-1]], n_m x (n_m tau).
    Matrix stacked() const;

    static ARModel from_stacked(const Matrix& stacked, int tau, Provenance provenance);
};

}  // namespace latnet
