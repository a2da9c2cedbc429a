#include "latnet/netgen.hpp"

#include "latnet/errors.hpp"
#include "latnet/rng.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace latnet {

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

PartitionedNetwork::PartitionedNetwork(Matrix a11, Matrix a12, Matrix a21, Matrix a22,
                                       std::vector<NodeId> manifest_labels,
                                       std::vector<NodeId> latent_labels)
    : a11_(std::move(a11)),
      a12_(std::move(a12)),
      a21_(std::move(a21)),
      a22_(std::move(a22)),
      manifest_labels_(std::move(manifest_labels)),
      latent_labels_(std::move(latent_labels)) {
    const Index nm = a11_.rows();
    const Index nl = a22_.rows();
    if (a11_.cols() != nm) throw InvalidArgument("a11 must be square");
    if (a22_.cols() != nl) throw InvalidArgument("a22 must be square");
    if (a12_.rows() != nm || a12_.cols() != nl)
        throw InvalidArgument("a12 must be n_m x n_l");
    if (a21_.rows() != nl || a21_.cols() != nm)
        throw InvalidArgument("a21 must be n_l x n_m");
    if (static_cast<Index>(manifest_labels_.size()) != nm ||
        static_cast<Index>(latent_labels_.size()) != nl)
        throw InvalidArgument("label counts do not match block sizes");

    std::set<NodeId> seen;
    for (const auto& l : manifest_labels_) seen.insert(l);
    for (const auto& l : latent_labels_) seen.insert(l);
    if (static_cast<Index>(seen.size()) != nm + nl)
        throw InvalidArgument("node labels must be distinct");

    for (const Matrix* m : {&a11_, &a12_, &a21_, &a22_})
        if (!m->allFinite()) throw InvalidArgument("adjacency entries must be finite");
}

Matrix PartitionedNetwork::assemble() const {
    const Index nm = n_manifest();
    const Index nl = n_latent();
    Matrix full(nm + nl, nm + nl);
    full.topLeftCorner(nm, nm) = a11_;
    full.topRightCorner(nm, nl) = a12_;
    full.bottomLeftCorner(nl, nm) = a21_;
    full.bottomRightCorner(nl, nl) = a22_;
    return full;
}

Matrix PartitionedNetwork::original_adjacency() const {
    const Index n = n_total();
    std::vector<Index> position;  // partitioned index -> original index
    position.reserve(n);
    for (const auto& l : manifest_labels_) position.push_back(l.value - 1);
    for (const auto& l : latent_labels_) position.push_back(l.value - 1);
    for (Index p : position)
        if (p < 0 || p >= n)
            throw InvalidArgument("labels are not a permutation of 1..n");

    const Matrix full = assemble();
    Matrix original(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) original(position[i], position[j]) = full(i, j);
    return original;
}

void HigherOrderNetwork::validate() const {
    if (coeffs.empty()) throw InvalidArgument("higher-order network needs at least one coefficient");
    const Index n = coeffs.front().rows();
    for (const auto& c : coeffs)
        if (c.rows() != n || c.cols() != n)
            throw InvalidArgument("higher-order coefficients must all be n x n");
    if (manifest_count < 0 || manifest_count > n)
        throw InvalidArgument("manifest_count must lie in 0..n");
}

PartitionedNetwork partition(const Matrix& a, std::span<const NodeId> manifest) {
    if (a.rows() != a.cols()) throw InvalidArgument("adjacency matrix must be square");
    const Index n = a.rows();
    if (manifest.empty()) throw InvalidArgument("manifest index set must be nonempty");

    std::vector<bool> is_manifest(static_cast<std::size_t>(n), false);
    for (const auto& id : manifest) {
        if (id.value < 1 || id.value > n)
            throw InvalidArgument("manifest index " + std::to_string(id.value) +
                                  " out of range 1.." + std::to_string(n));
        const auto slot = static_cast<std::size_t>(id.value - 1);
        if (is_manifest[slot])
            throw InvalidArgument("duplicate manifest index " + std::to_string(id.value));
        is_manifest[slot] = true;
    }

    std::vector<Index> order;
    std::vector<NodeId> manifest_labels(manifest.begin(), manifest.end());
    std::vector<NodeId> latent_labels;
    for (const auto& id : manifest) order.push_back(id.value - 1);
    for (Index i = 0; i < n; ++i) {
        if (!is_manifest[static_cast<std::size_t>(i)]) {
            order.push_back(i);
            latent_labels.push_back(NodeId{static_cast<int>(i + 1)});
        }
    }

    Matrix permuted(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) permuted(i, j) = a(order[i], order[j]);

    const Index nm = static_cast<Index>(manifest.size());
    const Index nl = n - nm;
    return PartitionedNetwork(permuted.topLeftCorner(nm, nm), permuted.topRightCorner(nm, nl),
                              permuted.bottomLeftCorner(nl, nm),
                              permuted.bottomRightCorner(nl, nl), std::move(manifest_labels),
                              std::move(latent_labels));
}

namespace {

// Tarjan's algorithm on the sparsity graph i -> j iff m(i, j) != 0.
class ComponentFinder {
public:
    explicit ComponentFinder(const Matrix& m)
        : m_(m), n_(m.rows()), index_(n_, -1), low_(n_, 0), on_stack_(n_, false) {}

    std::vector<std::vector<Index>> run() {
        for (Index v = 0; v < n_; ++v)
            if (index_[v] < 0) visit(v);
        return components_;
    }

private:
    void visit(Index v) {
        index_[v] = low_[v] = counter_++;
        stack_.push_back(v);
        on_stack_[v] = true;
        for (Index w = 0; w < n_; ++w) {
            if (w == v || m_(v, w) == 0.0) continue;
            if (index_[w] < 0) {
                visit(w);
                low_[v] = std::min(low_[v], low_[w]);
            } else if (on_stack_[w]) {
                low_[v] = std::min(low_[v], index_[w]);
            }
        }
        if (low_[v] == index_[v]) {
            std::vector<Index> comp;
            Index w;
            do {
                w = stack_.back();
                stack_.pop_back();
                on_stack_[w] = false;
                comp.push_back(w);
            } while (w != v);
            components_.push_back(std::move(comp));
        }
    }

    const Matrix& m_;
    Index n_;
    std::vector<Index> index_, low_;
    std::vector<bool> on_stack_;
    std::vector<Index> stack_;
    Index counter_ = 0;
    std::vector<std::vector<Index>> components_;
};

}  // namespace

double spectral_radius(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("spectral_radius needs a square matrix");
    if (m.size() == 0) return 0.0;

    double rho = 0.0;
    for (const auto& comp : ComponentFinder(m).run()) {
        const Index k = static_cast<Index>(comp.size());
        if (k == 1) {
            rho = std::max(rho, std::abs(m(comp[0], comp[0])));
            continue;
        }
        Matrix block(k, k);
        for (Index j = 0; j < k; ++j)
            for (Index i = 0; i < k; ++i) block(i, j) = m(comp[i], comp[j]);
        Eigen::EigenSolver<Matrix> solver(block, /*computeEigenvectors=*/false);
        if (solver.info() != Eigen::Success)
            throw Error("eigenvalue iteration did not converge");
        rho = std::max(rho, solver.eigenvalues().cwiseAbs().maxCoeff());
    }
    return rho;
}

StabilityReport stability_report(const PartitionedNetwork& net) {
    StabilityReport r;
    r.rho_full = spectral_radius(net.assemble());
    r.rho_latent = spectral_radius(net.a22());
    r.stable = r.rho_full < 1.0;
    r.latent_stable = r.rho_latent < 1.0;
    return r;
}

std::optional<int> latent_acyclicity_index(const Matrix& a22, double tol) {
    if (tol < 0) throw InvalidArgument("tolerance must be nonnegative");
    if (a22.rows() != a22.cols()) throw InvalidArgument("a22 must be square");
    const Index nl = a22.rows();
    if (nl == 0) return 1;
    Matrix power = a22;
    for (Index k = 1; k <= nl; ++k) {
        if (max_abs(power) <= tol) return static_cast<int>(k);
        power = power * a22;
    }
    return std::nullopt;
}

PartitionedNetwork lift_higher_order(const HigherOrderNetwork& hon) {
    hon.validate();
    const Index n = hon.dimension();
    const int nu = hon.order();
    if (hon.manifest_count < 1) throw InvalidArgument("at least one manifest node is required");

    // Block companion form over xi = [x(k); x(k-1); ...; x(k-nu+1)]. Moving
    // x_m(k) to the front leaves the latent state in exactly the stacked
    // order (x_l(k), x_m(k-1), x_l(k-1), ...).
    const Index dim = n * nu;
    Matrix companion = Matrix::Zero(dim, dim);
    for (int j = 0; j < nu; ++j) companion.block(0, j * n, n, n) = hon.coeffs[j];
    for (int j = 1; j < nu; ++j)
        companion.block(j * n, (j - 1) * n, n, n).setIdentity();

    return partition(companion, node_range(1, static_cast<int>(hon.manifest_count)));
}

Matrix ring_adjacency(int n, double edge_weight, double self_loop) {
    if (n < 2) throw InvalidArgument("a ring needs at least two nodes");
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        a((i + 1) % n, i) = edge_weight;
        if (self_loop != 0.0) a(i, i) = self_loop;
    }
    return a;
}

PartitionedNetwork gen_ring(int n, double edge_weight, double self_loop,
                            std::span<const NodeId> manifest) {
    return partition(ring_adjacency(n, edge_weight, self_loop), manifest);
}

PartitionedNetwork gen_erdos_renyi(const ErdosRenyiParams& params) {
    if (params.n < 1) throw InvalidArgument("n must be positive");
    if (!(params.p >= 0.0 && params.p <= 1.0)) throw InvalidArgument("p must lie in [0, 1]");
    if (!(params.w_min <= params.w_max)) throw InvalidArgument("w_min must not exceed w_max");
    if (params.n_manifest < 1 || params.n_manifest > params.n)
        throw InvalidArgument("n_manifest must lie in 1..n");

    RandomStream rng(params.seed);
    const int n = params.n;
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.uniform_open() >= params.p) continue;
            a(j, i) = rng.uniform(params.w_min, params.w_max);
            a(i, j) = rng.uniform(params.w_min, params.w_max);
        }
    }

    // Partial Fisher-Yates; the chosen set is reported in ascending order.
    std::vector<int> nodes(static_cast<std::size_t>(n));
    std::iota(nodes.begin(), nodes.end(), 1);
    for (int i = 0; i < params.n_manifest; ++i) {
        const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(nodes[i], nodes[j]);
    }
    std::sort(nodes.begin(), nodes.begin() + params.n_manifest);
    std::vector<NodeId> manifest;
    for (int i = 0; i < params.n_manifest; ++i) manifest.push_back(NodeId{nodes[i]});
    return partition(a, manifest);
}

std::vector<NodeId> node_range(int first, int last) {
    std::vector<NodeId> ids;
    for (int i = first; i <= last; ++i) ids.push_back(NodeId{i});
    return ids;
}

}  // namespace latnet
