#pragma once

#include "latnet/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace latnet {

/// Adjacency matrix of a network split into manifest (observed, actuated)
/// and latent (hidden, passive) blocks:
///
///     [x_m(k+1)]   [a11 a12] [x_m(k)]   [u_m(k)]
///     [x_l(k+1)] = [a21 a22] [x_l(k)] + [  0   ]
///
/// Entry (q, p) of any block is the weight of the edge p -> q.
/// Instances are validated on construction and immutable afterwards.
class PartitionedNetwork {
public:
    PartitionedNetwork(Matrix a11, Matrix a12, Matrix a21, Matrix a22,
                       std::vector<NodeId> manifest_labels,
                       std::vector<NodeId> latent_labels);

    const Matrix& a11() const noexcept { return a11_; }
    const Matrix& a12() const noexcept { return a12_; }
    const Matrix& a21() const noexcept { return a21_; }
    const Matrix& a22() const noexcept { return a22_; }
    const std::vector<NodeId>& manifest_labels() const noexcept { return manifest_labels_; }
    const std::vector<NodeId>& latent_labels() const noexcept { return latent_labels_; }

    Index n_manifest() const noexcept { return a11_.rows(); }
    Index n_latent() const noexcept { return a22_.rows(); }
    Index n_total() const noexcept { return n_manifest() + n_latent(); }

    /// Full matrix in partitioned order, [[a11, a12], [a21, a22]].
    Matrix assemble() const;

    /// Undo the relabeling: the adjacency in original node order. Requires the
    /// labels to be exactly {1, ..., n}.
    Matrix original_adjacency() const;

private:
    Matrix a11_, a12_, a21_, a22_;
    std::vector<NodeId> manifest_labels_;
    std::vector<NodeId> latent_labels_;
};

/// x(k+1) = sum_j coeffs[j] x(k-j) + u(k), with the first `manifest_count`
/// coordinates of x manifest.
struct HigherOrderNetwork {
    std::vector<Matrix> coeffs;
    Index manifest_count = 0;

    int order() const noexcept { return static_cast<int>(coeffs.size()); }
    Index dimension() const noexcept { return coeffs.empty() ? 0 : coeffs.front().rows(); }

    /// Throws InvalidArgument when the coefficient list is empty, the matrices
    /// are not square of one size, or manifest_count is out of range.
    void validate() const;
};

struct StabilityReport {
    double rho_full = 0.0;
    double rho_latent = 0.0;
    bool stable = true;
    bool latent_stable = true;
};

/// Blocks of P A P^T where P moves `manifest` (1-based ids, in the given order)
/// to the front; remaining nodes keep their original relative order.
PartitionedNetwork partition(const Matrix& a, std::span<const NodeId> manifest);

/// Largest eigenvalue modulus.
///
/// The matrix is first split into the diagonal blocks of its strongly
/// connected components (its Frobenius normal form); each block is solved
/// with a dense nonsymmetric eigensolver. This keeps triangular and
/// chain-like blocks exact, where a direct QR iteration would lose accuracy
/// to their defective eigenvalues.
double spectral_radius(const Matrix& m);

StabilityReport stability_report(const PartitionedNetwork& net);

inline constexpr double kDefaultNilpotencyTolerance = 1e-12;

/// Smallest k in 1..n_l with max|a22^k| <= tol, or nullopt. A nilpotent
/// matrix reaches zero by its dimension, so the search stops there.
std::optional<int> latent_acyclicity_index(const Matrix& a22,
                                           double tol = kDefaultNilpotencyTolerance);

/// First-order form of a higher-order network: manifest state x_m(k), latent
/// state (x_l(k), x_m(k-1), x_l(k-1), ..., x_m(k-nu+1), x_l(k-nu+1)).
PartitionedNetwork lift_higher_order(const HigherOrderNetwork& hon);

/// Directed ring i -> i+1 (mod n), nodes 1..n, with optional self-loops.
Matrix ring_adjacency(int n, double edge_weight, double self_loop);

PartitionedNetwork gen_ring(int n, double edge_weight, double self_loop,
                            std::span<const NodeId> manifest);

struct ErdosRenyiParams {
    int n = 10;
    double p = 0.35;
    double w_min = 0.1;
    double w_max = 0.35;
    int n_manifest = 5;
    std::uint64_t seed = 0;
};

/// Each unordered pair {i, j} independently carries both directed edges with
/// probability p; the two weights are drawn independently from (w_min, w_max).
/// The manifest set is drawn from the same seeded stream, so the whole network
/// is a function of the parameters alone.
PartitionedNetwork gen_erdos_renyi(const ErdosRenyiParams& params);

/// Helper for 1..n label lists.
std::vector<NodeId> node_range(int first, int last);

}  // namespace latnet
