#pragma once

#include "latnet/ar_model.hpp"
#include "latnet/netgen.hpp"
#include "latnet/types.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace latnet {

/// Frequency response from manifest inputs to manifest states, z = e^{j omega}.
///
/// Holds either the partitioned network itself,
///     T(w) = (zI - A11 - A12 (zI - A22)^-1 A21)^-1,
/// or an AR model,
///     T(w) = (zI - sum_i z^-i mats[i])^-1.
class TransferFn {
public:
    explicit TransferFn(PartitionedNetwork net) : source_(std::move(net)) {}
    explicit TransferFn(ARModel model);

    /// Throws SingularMatrix when an inverse does not exist at `omega`.
    ComplexMatrix evaluate(double omega) const;

    /// The matrix whose inverse is T(omega). Cheaper than evaluate() and
    /// still defined where T has a pole.
    ComplexMatrix inverse_at(double omega) const;

    Index n_manifest() const;

    bool is_network() const noexcept { return std::holds_alternative<PartitionedNetwork>(source_); }

private:
    std::variant<PartitionedNetwork, ARModel> source_;
};

TransferFn manifest_tf(const PartitionedNetwork& net);
TransferFn ar_tf(const ARModel& model);

/// The AR coefficients that reproduce the manifest dynamics up to order tau:
/// mats[0] = a11, mats[i] = a12 a22^(i-1) a21.
ARModel optimal_ar(const PartitionedNetwork& net, int tau);

inline constexpr int kDefaultGridSize = 4096;

/// Inverses whose reciprocal condition estimate falls below this are
/// treated as singular.
inline constexpr double kSingularRcond = 1e-14;

/// sup over omega in [-pi, pi] of the largest singular value.
///
/// Evaluated on `grid_size` uniform points including both endpoints, then
/// each of the strongest local maxima is polished by golden-section search.
/// The result is the largest value actually evaluated, so it never exceeds
/// the true supremum.
double hinf_norm(const TransferFn& t, int grid_size = kDefaultGridSize);

/// hinf_norm of t1 - t2.
double hinf_distance(const TransferFn& t1, const TransferFn& t2,
                     int grid_size = kDefaultGridSize);

/// Smallest kappa with ||a22^i|| <= kappa rho_bar^i for i = 0..horizon (2-norm).
///
/// The scan runs past `horizon` until the current term falls below 1e-3 of
/// the running maximum. The horizon defaults to max(n_l, 200).
double kappa_for(const Matrix& a22, double rho_bar, std::optional<int> horizon = std::nullopt);

struct TheoryBounds {
    double rho_bar = 0.0;
    double rho_latent = 0.0;
    double kappa = 0.0;
    double manifest_hinf = 0.0;  ///< ||T_{x_m u_m}||_inf
    double a12_norm = 0.0;
    double a21_norm = 0.0;
    std::vector<int> taus;
    std::vector<double> ar_hinf;    ///< ||T of optimal_ar(net, tau)||_inf
    std::vector<double> gamma_tau;
    std::vector<double> bound_tau;  ///< gamma_tau * rho_bar^tau
};

/// Default rho_bar: midway between rho(a22) and 1.
double default_rho_bar(const PartitionedNetwork& net);

/// Computable H-infinity bound on the optimal-AR truncation error,
///     gamma(tau) = kappa ||T|| ||a12|| ||a21|| ||T_tau|| / (rho_bar - rho_bar^2),
///     bound(tau) = gamma(tau) rho_bar^tau,
/// for tau = 1..tau_max. The norm of the order-tau AR transfer function is
/// evaluated per tau in place of a uniform constant.
TheoryBounds theory_bound(const PartitionedNetwork& net, std::optional<double> rho_bar,
                          int tau_max, int grid_size = kDefaultGridSize);

}  // namespace latnet
