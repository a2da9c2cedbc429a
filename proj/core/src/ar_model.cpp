#include "latnet/ar_model.hpp"

#include "latnet/errors.hpp"

#include <string>

namespace latnet {

void RegularizationConfig::validate() const {
    if (!(gamma >= 0.0)) throw InvalidArgument("regularization gamma must be nonnegative");
    if (!(rho0 > 0.0 && rho0 <= 1.0)) throw InvalidArgument("rho0 must lie in (0, 1]");
}

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::OptimalFromNetwork: return "optimal-from-network";
        case Provenance::Lsar: return "lsar";
        case Provenance::LsarRegularized: return "lsar-regularized";
    }
    return "lsar";
}

Provenance provenance_from_string(std::string_view s) {
    if (s == "optimal-from-network") return Provenance::OptimalFromNetwork;
    if (s == "lsar") return Provenance::Lsar;
    if (s == "lsar-regularized") return Provenance::LsarRegularized;
    throw InvalidArgument("unknown provenance '" + std::string(s) + "'");
}

void ARModel::validate() const {
    if (mats.empty()) throw InvalidArgument("AR model must have order >= 1");
    const Index n = mats.front().rows();
    if (n < 1) throw InvalidArgument("AR model blocks must be nonempty");
    for (const auto& m : mats)
        if (m.rows() != n || m.cols() != n)
            throw InvalidArgument("AR model blocks must be square and of equal size");
    if (reg) reg->validate();
}

Matrix ARModel::stacked() const {
    const Index n = n_manifest();
    Matrix s(n, n * order());
    for (int i = 0; i < order(); ++i) s.middleCols(i * n, n) = mats[i];
    return s;
}

ARModel ARModel::from_stacked(const Matrix& stacked, int tau, Provenance provenance) {
    const Index n = stacked.rows();
    if (tau < 1 || stacked.cols() != n * tau)
        throw InvalidArgument("stacked AR matrix must be n_m x (n_m tau)");
    ARModel model;
    model.provenance = provenance;
    for (int i = 0; i < tau; ++i) model.mats.push_back(stacked.middleCols(i * n, n));
    return model;
}

}  // namespace latnet
