#include "latnet/simulate.hpp"

#include "latnet/errors.hpp"
#include "latnet/rng.hpp"

#include <Eigen/SparseCore>

#include <cmath>
#include <string>

namespace latnet {

void TimeSeriesData::validate() const {
    if (outputs.rows() < 1 || outputs.cols() < 1)
        throw InvalidArgument("time series must have at least one channel and one sample");
    if (!outputs.allFinite()) throw InvalidArgument("time series contains non-finite values");
    if (inputs) {
        if (inputs->rows() != outputs.rows() || inputs->cols() != outputs.cols())
            throw InvalidArgument("inputs must have the same shape as outputs");
        if (!inputs->allFinite()) throw InvalidArgument("inputs contain non-finite values");
    }
}

TimeSeriesData TimeSeriesData::slice(Index first, Index count) const {
    if (first < 0 || count < 1 || first + count > length())
        throw InvalidArgument("slice out of range");
    TimeSeriesData out;
    out.outputs = outputs.middleCols(first, count);
    if (inputs) out.inputs = inputs->middleCols(first, count);
    out.seed = seed;
    out.dt_label = dt_label;
    out.rng_algorithm = rng_algorithm;
    return out;
}

Matrix gaussian_input(Index n_manifest, Index length, std::uint64_t seed) {
    if (n_manifest < 1 || length < 1)
        throw InvalidArgument("gaussian_input needs positive dimensions");
    RandomStream rng(seed);
    Matrix u(n_manifest, length);
    double* data = u.data();  // column-major: column k is u(k)
    for (Index i = 0; i < u.size(); ++i) data[i] = rng.normal();
    return u;
}

namespace {

template <typename Op>
Matrix run_recursion(const Op& a, Index n, Index nm, const Matrix& inputs, Vector x) {
    const Index steps = inputs.cols();
    Matrix y(nm, steps);
    Vector next(n);
    for (Index k = 0; k < steps; ++k) {
        next.noalias() = a * x;
        next.head(nm) += inputs.col(k);
        x.swap(next);
        const double peak = x.cwiseAbs().maxCoeff();
        if (!(peak <= kOverflowLimit))
            throw NumericOverflow("state diverged at step " + std::to_string(k + 1),
                                  static_cast<std::size_t>(k + 1));
        y.col(k) = x.head(nm);
    }
    return y;
}

}  // namespace

Matrix simulate_with_input(const PartitionedNetwork& net, const Matrix& inputs,
                           const std::optional<Vector>& x0) {
    const Index n = net.n_total();
    const Index nm = net.n_manifest();
    if (inputs.rows() != nm) throw InvalidArgument("input rows must equal n_m");
    Vector x = Vector::Zero(n);
    if (x0) {
        if (x0->size() != n) throw InvalidArgument("x0 must have length n");
        x = *x0;
    }

    const Matrix a = net.assemble();
    const Index nnz = (a.array() != 0.0).count();
    // Sparse products pay off for ring-like networks; both paths are
    // deterministic for a given matrix.
    if (n >= 16 && nnz * 4 < a.size()) {
        Eigen::SparseMatrix<double, Eigen::RowMajor> sparse = a.sparseView();
        return run_recursion(sparse, n, nm, inputs, std::move(x));
    }
    return run_recursion(a, n, nm, inputs, std::move(x));
}

TimeSeriesData simulate(const PartitionedNetwork& net, Index length, std::uint64_t seed,
                        const SimulationOptions& options) {
    if (length < 1) throw InvalidArgument("simulation length must be positive");
    if (options.burn_in < 0) throw InvalidArgument("burn-in must be nonnegative");

    const auto report = stability_report(net);
    if (!report.stable)
        warn("simulating an unstable network (spectral radius " +
             std::to_string(report.rho_full) + ")");

    const Index total = length + options.burn_in;
    const Matrix u = gaussian_input(net.n_manifest(), total, seed);
    const Matrix y = simulate_with_input(net, u, options.x0);

    TimeSeriesData data;
    data.outputs = y.rightCols(length);
    data.inputs = u.rightCols(length);
    data.seed = seed;
    data.rng_algorithm = std::string(kRngAlgorithm);
    return data;
}

}  // namespace latnet
