#include "latnet/connectivity.hpp"

#include "latnet/errors.hpp"

#include <algorithm>
#include <cmath>

namespace latnet {

namespace {

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

double normalizing_max(const ARModel& model, bool exclude_diagonal) {
    double m = 0.0;
    for (const auto& block : model.mats) {
        for (Index p = 0; p < block.cols(); ++p)
            for (Index q = 0; q < block.rows(); ++q)
                if (!(exclude_diagonal && p == q)) m = std::max(m, std::abs(block(q, p)));
    }
    return m;
}

DetectionScore score(const BoolMatrix& predicted, const BoolMatrix& truth) {
    DetectionScore s;
    for (Index j = 0; j < truth.cols(); ++j) {
        for (Index i = 0; i < truth.rows(); ++i) {
            if (predicted(i, j) && truth(i, j)) ++s.true_positives;
            if (predicted(i, j) && !truth(i, j)) ++s.false_positives;
            if (!predicted(i, j) && truth(i, j)) ++s.false_negatives;
        }
    }
    const auto tp = static_cast<double>(s.true_positives);
    const Index predicted_count = s.true_positives + s.false_positives;
    const Index truth_count = s.true_positives + s.false_negatives;
    s.precision = predicted_count == 0 ? 1.0 : tp / static_cast<double>(predicted_count);
    s.recall = truth_count == 0 ? 1.0 : tp / static_cast<double>(truth_count);
    s.f1 = (s.precision + s.recall) > 0.0
               ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
               : 0.0;
    return s;
}

}  // namespace

ManifestGraph classify(const ARModel& model, const ClassifyOptions& options,
                       std::vector<NodeId> labels) {
    if (model.mats.empty()) throw InvalidArgument("cannot classify an empty AR model");
    model.validate();
    if (!(options.alpha >= 0.0 && options.alpha <= 1.0))
        throw InvalidArgument("alpha must lie in [0, 1]");
    if (options.direct_cutoff && !(*options.direct_cutoff >= 0.0))
        throw InvalidArgument("direct cutoff must be nonnegative");

    const Index nm = model.n_manifest();
    if (labels.empty()) labels = node_range(1, static_cast<int>(nm));
    if (static_cast<Index>(labels.size()) != nm)
        throw InvalidArgument("label count does not match the model dimension");

    ManifestGraph g;
    g.n_m = nm;
    g.labels = std::move(labels);
    g.threshold_used =
        options.alpha * normalizing_max(model, options.exclude_diagonal_from_max);
    g.direct_threshold = options.direct_cutoff.value_or(g.threshold_used);
    g.orders_exact = options.latent_acyclic;

    const Matrix& a0 = model.mats.front();
    g.direct = Matrix::Zero(nm, nm);
    for (Index p = 0; p < nm; ++p)
        for (Index q = 0; q < nm; ++q)
            if (a0(q, p) != 0.0 && std::abs(a0(q, p)) >= g.direct_threshold)
                g.direct(q, p) = a0(q, p);

    g.indirect_orders.assign(static_cast<std::size_t>(nm * nm), {});
    for (int i = 1; i < model.order(); ++i) {
        const Matrix& block = model.mats[i];
        for (Index p = 0; p < nm; ++p)
            for (Index q = 0; q < nm; ++q)
                if (block(q, p) != 0.0 && std::abs(block(q, p)) >= g.threshold_used)
                    g.indirect_orders[static_cast<std::size_t>(q * nm + p)].push_back(i);
    }
    return g;
}

ManifestGraph classify(const ARModel& model, double alpha) {
    ClassifyOptions options;
    options.alpha = alpha;
    return classify(model, options);
}

std::optional<LatentPathOrder> min_latent_path(const ARModel& model, Index p, Index q,
                                               double alpha, bool latent_acyclic) {
    const Index nm = model.n_manifest();
    if (p < 0 || q < 0 || p >= nm || q >= nm) throw InvalidArgument("node position out of range");
    if (p == q) throw InvalidArgument("min_latent_path needs two distinct nodes");
    ClassifyOptions options;
    options.alpha = alpha;
    options.latent_acyclic = latent_acyclic;
    const ManifestGraph g = classify(model, options);
    const auto order = g.min_order(q, p);
    if (!order) return std::nullopt;
    return LatentPathOrder{*order, latent_acyclic};
}

BoolMatrix latent_reachability(const PartitionedNetwork& net) {
    const Index nm = net.n_manifest();
    const Index nl = net.n_latent();
    BoolMatrix result = BoolMatrix::Constant(nm, nm, false);
    if (nl == 0) return result;

    // Transitive closure of the latent subgraph, including empty paths.
    BoolMatrix closure = BoolMatrix::Constant(nl, nl, false);
    for (Index i = 0; i < nl; ++i) closure(i, i) = true;
    for (Index j = 0; j < nl; ++j)
        for (Index i = 0; i < nl; ++i)
            if (net.a22()(i, j) != 0.0) closure(i, j) = true;
    for (Index k = 0; k < nl; ++k)
        for (Index j = 0; j < nl; ++j)
            if (closure(k, j))
                for (Index i = 0; i < nl; ++i)
                    if (closure(i, k)) closure(i, j) = true;

    for (Index p = 0; p < nm; ++p) {
        for (Index entry = 0; entry < nl; ++entry) {
            if (net.a21()(entry, p) == 0.0) continue;
            for (Index exit = 0; exit < nl; ++exit) {
                if (!closure(exit, entry)) continue;
                for (Index q = 0; q < nm; ++q)
                    if (net.a12()(q, exit) != 0.0) result(q, p) = true;
            }
        }
    }
    return result;
}

GraphComparison compare_graphs(const ManifestGraph& estimated, const PartitionedNetwork& truth) {
    const Index nm = truth.n_manifest();
    if (estimated.n_m != nm)
        throw InvalidArgument("estimated graph and network have different manifest counts");

    BoolMatrix direct_pred(nm, nm), direct_true(nm, nm), indirect_pred(nm, nm);
    for (Index p = 0; p < nm; ++p) {
        for (Index q = 0; q < nm; ++q) {
            direct_pred(q, p) = estimated.has_direct(q, p);
            direct_true(q, p) = truth.a11()(q, p) != 0.0;
            indirect_pred(q, p) = !estimated.orders(q, p).empty();
        }
    }
    GraphComparison c;
    c.direct = score(direct_pred, direct_true);
    c.indirect = score(indirect_pred, latent_reachability(truth));
    return c;
}

}  // namespace latnet
