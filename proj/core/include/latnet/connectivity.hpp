#pragma once

#include "latnet/ar_model.hpp"
#include "latnet/netgen.hpp"
#include "latnet/types.hpp"

#include <optional>
#include <vector>

namespace latnet {

/// How the edge threshold is chosen.
struct ClassifyOptions {
    /// Proportional threshold: theta = alpha * max |A_i(q, p)| over all blocks.
    double alpha = 0.0;
    /// Absolute cutoff for the direct block A_0. When set, A_0 is thresholded
    /// at this value and only the lag blocks use the proportional theta.
    std::optional<double> direct_cutoff;
    /// Leave the diagonal out of the normalizing maximum (self-loops often
    /// dominate). Self-loops are still reported.
    bool exclude_diagonal_from_max = false;
    /// Caller's knowledge that the generating latent subnetwork is acyclic;
    /// only then is a minimal order an exact latent-node count.
    bool latent_acyclic = false;
};

/// Manifest interaction graph read off AR coefficient blocks. Pair (q, p)
/// refers to the influence p -> q, with positions 0-based in manifest order.
struct ManifestGraph {
    Index n_m = 0;
    std::vector<NodeId> labels;
    Matrix direct;  ///< thresholded A_0; zero where no edge
    /// indirect_orders[q * n_m + p]: sorted lag orders i >= 1 above threshold.
    std::vector<std::vector<int>> indirect_orders;
    double threshold_used = 0.0;   ///< proportional theta, applied to the lag blocks
    double direct_threshold = 0.0; ///< threshold actually applied to A_0
    bool orders_exact = false;     ///< false: min orders are lower bounds on path length

    const std::vector<int>& orders(Index q, Index p) const {
        return indirect_orders[static_cast<std::size_t>(q * n_m + p)];
    }
    std::optional<int> min_order(Index q, Index p) const {
        const auto& o = orders(q, p);
        if (o.empty()) return std::nullopt;
        return o.front();
    }
    bool has_direct(Index q, Index p) const { return direct(q, p) != 0.0; }
};

/// Threshold every block of `model`. Labels default to 1..n_m.
ManifestGraph classify(const ARModel& model, const ClassifyOptions& options,
                       std::vector<NodeId> labels = {});

ManifestGraph classify(const ARModel& model, double alpha);

struct LatentPathOrder {
    int order = 0;
    /// True when the order counts the latent nodes on the shortest path
    /// exactly (acyclic latent subnetwork); otherwise a lower bound.
    bool exact = false;
};

/// Smallest i >= 1 with |A_i(q, p)| >= theta, for positions p != q.
std::optional<LatentPathOrder> min_latent_path(const ARModel& model, Index p, Index q,
                                               double alpha, bool latent_acyclic = false);

struct DetectionScore {
    double precision = 1.0;
    double recall = 1.0;
    double f1 = 1.0;
    Index true_positives = 0;
    Index false_positives = 0;
    Index false_negatives = 0;
};

struct GraphComparison {
    DetectionScore direct;
    DetectionScore indirect;
};

/// Scores an estimated graph against the support of a11 (direct) and against
/// structural reachability p -> latent path -> q (indirect). Empty predicted
/// sets count as precision 1; empty truth sets as recall 1.
GraphComparison compare_graphs(const ManifestGraph& estimated, const PartitionedNetwork& truth);

/// Boolean matrix: (q, p) true when some path p -> l_1 -> ... -> l_k -> q with
/// k >= 1 latent intermediates exists in the true network.
Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> latent_reachability(
    const PartitionedNetwork& net);

}  // namespace latnet
