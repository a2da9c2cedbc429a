#pragma once

#include "latnet/ar_model.hpp"
#include "latnet/netgen.hpp"
#include "latnet/simulate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace latnet {

/// Materialized regression y_vec = A_tau phi + e_vec.
///
/// Column k of `phi` stacks y(tau+k), y(tau+k-1), ..., y(k+1) top-down
/// (1-based samples), and column k of `y_vec` is y(tau+k+1).
struct RegressionData {
    Matrix y_vec;  ///< n_m x (N - tau)
    Matrix phi;    ///< n_m tau x (N - tau)
    int tau = 0;
    Index n_used = 0;
};

RegressionData build_regression(const TimeSeriesData& y, int tau);

/// Sufficient statistics of the regression, accumulated without forming phi.
struct NormalEquations {
    Matrix gram;   ///< phi phi^T
    Matrix cross;  ///< y_vec phi^T
    int tau = 0;
    Index columns = 0;  ///< N - tau
};

NormalEquations accumulate_normal_equations(const TimeSeriesData& y, int tau);

struct FitReport {
    int tau = 0;
    Index n_samples = 0;
    double condition_estimate = 0.0;  ///< of the (regularized) Gram matrix
    double residual_energy = 0.0;     ///< tr(e e^T)
    double objective = 0.0;           ///< residual energy plus the penalty, if any
    std::vector<double> block_norms;  ///< ||A_i||_2
    bool min_norm_branch = false;
    std::optional<RegularizationConfig> reg;
    std::vector<std::string> warnings;
};

struct LsarFit {
    ARModel model;
    FitReport report;
};

/// Condition numbers above this are reported and solved by pseudo-inverse.
inline constexpr double kIllConditioned = 1e14;

/// Least-squares AR fit, A = y_vec phi^T (phi phi^T)^+, with an optional
/// exponential penalty, A = y_vec phi^T (phi phi^T + gamma P P^T)^-1.
///
/// A Cholesky solve is tried first; rank-deficient, underdetermined or
/// ill-conditioned systems go through an eigen-decomposition pseudo-inverse
/// (singular values below 1e-12 sigma_1 dropped), giving the minimum-norm
/// solution.
LsarFit fit_ar(const TimeSeriesData& y, int tau,
               const std::optional<RegularizationConfig>& reg = std::nullopt);

ARModel lsar_fit(const TimeSeriesData& y, int tau);
ARModel lsar_fit_regularized(const TimeSeriesData& y, int tau, const RegularizationConfig& reg);

/// e(k) = y(k+1) - sum_i A_i y(k-i) for k = tau..N-1, one column each.
Matrix residuals(const TimeSeriesData& y, const ARModel& model);

/// tr(e e^T) + gamma tr(A P P^T A^T) evaluated for an arbitrary model.
double regularized_objective(const TimeSeriesData& y, const ARModel& model,
                             const RegularizationConfig& reg);

/// Held-out prediction fit, 1 - sum_k ||e(k)||^2 / sum_k ||y(k)||^2 over
/// k = tau..N'-1 of the holdout record. Throws UndefinedRatio when the
/// denominator vanishes.
double r_squared(const ARModel& model, const TimeSeriesData& holdout);

struct DecayRow {
    int tau = 0;
    double deviation = 0.0;  ///< max |A_hat - A*| over all blocks
};

/// Fits LSAR at each order and compares against optimal_ar(net, tau).
std::vector<DecayRow> empirical_decay_check(const TimeSeriesData& data,
                                            const PartitionedNetwork& net,
                                            const std::vector<int>& tau_list);

/// Largest absolute entrywise difference between two AR models of equal shape.
double coefficient_distance(const ARModel& a, const ARModel& b);

}  // namespace latnet
