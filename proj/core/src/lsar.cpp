#include "latnet/lsar.hpp"

#include "latnet/errors.hpp"
#include "latnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace latnet {

namespace {

constexpr Index kChunkColumns = 4096;

void check_order(const TimeSeriesData& y, int tau) {
    y.validate();
    if (tau < 1) throw InvalidArgument("AR order must be at least 1");
    if (tau >= y.length())
        throw InvalidArgument("AR order " + std::to_string(tau) +
                              " must be smaller than the record length " +
                              std::to_string(y.length()));
}

// Rows [i n_m, (i+1) n_m) of phi over columns [first, first + count).
void fill_phi(const Matrix& samples, int tau, Index first, Index count, Matrix& phi) {
    const Index nm = samples.rows();
    for (int i = 0; i < tau; ++i)
        phi.middleRows(i * nm, nm) = samples.middleCols(tau - 1 - i + first, count);
}

Vector penalty_weights(int tau, Index nm, double rho0) {
    Vector w(nm * tau);
    for (int i = 0; i < tau; ++i) w.segment(i * nm, nm).setConstant(std::pow(rho0, -2.0 * i));
    return w;
}

double residual_energy(const TimeSeriesData& y, const ARModel& model) {
    const int tau = model.order();
    const Index cols = y.length() - tau;
    const Matrix stacked = model.stacked();
    Matrix phi(y.n_manifest() * tau, std::min(cols, kChunkColumns));
    double energy = 0.0;
    for (Index first = 0; first < cols; first += kChunkColumns) {
        const Index count = std::min(kChunkColumns, cols - first);
        phi.resize(Eigen::NoChange, count);
        fill_phi(y.outputs, tau, first, count, phi);
        energy += (y.outputs.middleCols(tau + first, count) - stacked * phi).squaredNorm();
    }
    return energy;
}

double penalty(const ARModel& model, const RegularizationConfig& reg) {
    double total = 0.0;
    for (int i = 0; i < model.order(); ++i)
        total += std::pow(reg.rho0, -2.0 * i) * model.mats[i].squaredNorm();
    return reg.gamma * total;
}

}  // namespace

RegressionData build_regression(const TimeSeriesData& y, int tau) {
    check_order(y, tau);
    RegressionData r;
    r.tau = tau;
    r.n_used = y.length();
    const Index cols = y.length() - tau;
    r.y_vec = y.outputs.middleCols(tau, cols);
    r.phi.resize(y.n_manifest() * tau, cols);
    fill_phi(y.outputs, tau, 0, cols, r.phi);
    return r;
}

NormalEquations accumulate_normal_equations(const TimeSeriesData& y, int tau) {
    check_order(y, tau);
    const Index nm = y.n_manifest();
    const Index dim = nm * tau;
    const Index cols = y.length() - tau;

    NormalEquations eq;
    eq.tau = tau;
    eq.columns = cols;
    eq.gram = Matrix::Zero(dim, dim);
    eq.cross = Matrix::Zero(nm, dim);

    Matrix phi(dim, std::min(cols, kChunkColumns));
    for (Index first = 0; first < cols; first += kChunkColumns) {
        const Index count = std::min(kChunkColumns, cols - first);
        phi.resize(Eigen::NoChange, count);
        fill_phi(y.outputs, tau, first, count, phi);
        eq.gram.selfadjointView<Eigen::Lower>().rankUpdate(phi);
        eq.cross.noalias() += y.outputs.middleCols(tau + first, count) * phi.transpose();
    }
    eq.gram = eq.gram.selfadjointView<Eigen::Lower>();
    return eq;
}

LsarFit fit_ar(const TimeSeriesData& y, int tau, const std::optional<RegularizationConfig>& reg) {
    if (reg) reg->validate();
    const NormalEquations eq = accumulate_normal_equations(y, tau);
    const Index nm = y.n_manifest();
    const Index dim = nm * tau;
    const bool penalized = reg && reg->gamma > 0.0;

    Matrix system = eq.gram;
    if (penalized) system.diagonal() += reg->gamma * penalty_weights(tau, nm, reg->rho0);

    LsarFit out;
    FitReport& rep = out.report;
    rep.tau = tau;
    rep.n_samples = y.length();
    if (penalized) rep.reg = reg;

    // For a symmetric positive semi-definite matrix this is also its SVD.
    Eigen::SelfAdjointEigenSolver<Matrix> eig(system);
    const Vector& lambda = eig.eigenvalues();
    const double top = lambda(dim - 1);
    const double bottom = lambda(0);
    rep.condition_estimate =
        bottom > 0.0 ? top / bottom : std::numeric_limits<double>::infinity();

    bool use_pinv = false;
    if (eq.columns < dim) {
        rep.warnings.push_back("fewer regression columns (" + std::to_string(eq.columns) +
                               ") than parameters per row (" + std::to_string(dim) +
                               "); using the minimum-norm solution");
        use_pinv = !penalized;
    }
    if (rep.condition_estimate > kIllConditioned) {
        rep.warnings.push_back("Gram matrix condition estimate " +
                               std::to_string(rep.condition_estimate) + " exceeds 1e14");
        use_pinv = use_pinv || !penalized;
    }

    Matrix solution_t;  // A^T, (n_m tau) x n_m
    if (!use_pinv) {
        Eigen::LLT<Matrix> llt(system);
        if (llt.info() == Eigen::Success) {
            solution_t = llt.solve(eq.cross.transpose());
        } else {
            rep.warnings.push_back("Cholesky factorization failed; using the pseudo-inverse");
            use_pinv = true;
        }
    }
    if (use_pinv) {
        rep.min_norm_branch = true;
        const double cutoff = 1e-12 * std::max(top, 0.0);
        Vector inv = Vector::Zero(dim);
        for (Index i = 0; i < dim; ++i)
            if (lambda(i) > cutoff && lambda(i) > 0.0) inv(i) = 1.0 / lambda(i);
        const Matrix& v = eig.eigenvectors();
        solution_t = v * inv.asDiagonal() * (v.transpose() * eq.cross.transpose());
    }

    out.model = ARModel::from_stacked(solution_t.transpose(), tau,
                                      penalized ? Provenance::LsarRegularized : Provenance::Lsar);
    if (penalized) out.model.reg = reg;
    out.model.notes = rep.warnings;

    rep.residual_energy = residual_energy(y, out.model);
    rep.objective = rep.residual_energy + (penalized ? penalty(out.model, *reg) : 0.0);
    for (const auto& m : out.model.mats) rep.block_norms.push_back(spectral_norm(m));
    for (const auto& w : rep.warnings) warn(w);
    return out;
}

ARModel lsar_fit(const TimeSeriesData& y, int tau) { return fit_ar(y, tau).model; }

ARModel lsar_fit_regularized(const TimeSeriesData& y, int tau, const RegularizationConfig& reg) {
    return fit_ar(y, tau, reg).model;
}

Matrix residuals(const TimeSeriesData& y, const ARModel& model) {
    model.validate();
    if (model.n_manifest() != y.n_manifest())
        throw InvalidArgument("model and data have different numbers of channels");
    const int tau = model.order();
    check_order(y, tau);
    const Index cols = y.length() - tau;
    Matrix e = y.outputs.middleCols(tau, cols);
    for (int i = 0; i < tau; ++i)
        e.noalias() -= model.mats[i] * y.outputs.middleCols(tau - 1 - i, cols);
    return e;
}

double regularized_objective(const TimeSeriesData& y, const ARModel& model,
                             const RegularizationConfig& reg) {
    reg.validate();
    model.validate();
    if (model.n_manifest() != y.n_manifest())
        throw InvalidArgument("model and data have different numbers of channels");
    check_order(y, model.order());
    return residual_energy(y, model) + penalty(model, reg);
}

double r_squared(const ARModel& model, const TimeSeriesData& holdout) {
    const Matrix e = residuals(holdout, model);
    const int tau = model.order();
    const Index cols = holdout.length() - tau;
    const double denom = holdout.outputs.middleCols(tau - 1, cols).squaredNorm();
    if (!(denom > 0.0)) throw UndefinedRatio("R^2 is undefined for an all-zero holdout record");
    return 1.0 - e.squaredNorm() / denom;
}

double coefficient_distance(const ARModel& a, const ARModel& b) {
    if (a.order() != b.order() || a.n_manifest() != b.n_manifest())
        throw InvalidArgument("AR models have different shapes");
    double d = 0.0;
    for (int i = 0; i < a.order(); ++i) d = std::max(d, max_abs(a.mats[i] - b.mats[i]));
    return d;
}

std::vector<DecayRow> empirical_decay_check(const TimeSeriesData& data,
                                            const PartitionedNetwork& net,
                                            const std::vector<int>& tau_list) {
    if (data.n_manifest() != net.n_manifest())
        throw InvalidArgument("data and network have different numbers of manifest nodes");
    std::vector<DecayRow> rows;
    for (int tau : tau_list) {
        const ARModel fit = lsar_fit(data, tau);
        rows.push_back({tau, coefficient_distance(fit, optimal_ar(net, tau))});
    }
    return rows;
}

}  // namespace latnet
