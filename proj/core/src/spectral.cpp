#include "latnet/spectral.hpp"

#include "latnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace latnet {

namespace {

ComplexMatrix checked_solve(const ComplexMatrix& m, const ComplexMatrix& rhs, double omega,
                            const char* what) {
    Eigen::PartialPivLU<ComplexMatrix> lu(m);
    if (!(lu.rcond() >= kSingularRcond))
        throw SingularMatrix(std::string(what) + " is singular at omega = " +
                                 std::to_string(omega),
                             omega);
    return lu.solve(rhs);
}

ComplexMatrix network_inverse(const PartitionedNetwork& net, double omega) {
    const Complex z = std::polar(1.0, omega);
    const Index nl = net.n_latent();
    ComplexMatrix m = -net.a11().cast<Complex>();
    m.diagonal().array() += z;
    if (nl > 0 && net.a12().size() > 0) {
        ComplexMatrix inner = -net.a22().cast<Complex>();
        inner.diagonal().array() += z;
        const ComplexMatrix relay =
            checked_solve(inner, net.a21().cast<Complex>(), omega, "zI - A22");
        m.noalias() -= net.a12().cast<Complex>() * relay;
    }
    return m;
}

ComplexMatrix ar_inverse(const ARModel& model, double omega) {
    const Complex z = std::polar(1.0, omega);
    const Index nm = model.n_manifest();
    ComplexMatrix m = ComplexMatrix::Zero(nm, nm);
    m.diagonal().array() += z;
    Complex zpow = 1.0;  // z^-i
    const Complex zinv = 1.0 / z;
    for (const auto& a : model.mats) {
        m -= zpow * a.cast<Complex>();
        zpow *= zinv;
    }
    return m;
}

double largest_singular_value(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

using GainFn = std::function<double(double)>;

double golden_max(const GainFn& gain, double lo, double hi, double best) {
    constexpr double inv_phi = 0.6180339887498949;
    // Bracket widths below this change the peak value by far less than 1e-6 relative.
    constexpr double tol = 1e-9;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = gain(c), fd = gain(d);
    best = std::max({best, fc, fd});
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = gain(c);
            best = std::max(best, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = gain(d);
            best = std::max(best, fd);
        }
    }
    return best;
}

double peak_gain(const GainFn& gain, int grid_size) {
    if (grid_size < 2) throw InvalidArgument("frequency grid needs at least two points");
    const double pi = std::numbers::pi;
    const double step = 2.0 * pi / (grid_size - 1);
    std::vector<double> values(static_cast<std::size_t>(grid_size));
    for (int j = 0; j < grid_size; ++j) values[j] = gain(-pi + step * j);

    // Local maxima of the periodic response; the endpoints coincide.
    std::vector<int> peaks;
    const int last = grid_size - 1;
    for (int j = 0; j < grid_size; ++j) {
        const double left = values[j == 0 ? last - 1 : j - 1];
        const double right = values[j == last ? 1 : j + 1];
        if (values[j] >= left && values[j] >= right) peaks.push_back(j);
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [&](int x, int y) { return values[x] > values[y]; });

    double best = *std::max_element(values.begin(), values.end());
    constexpr std::size_t kRefinedPeaks = 3;
    for (std::size_t p = 0; p < std::min(kRefinedPeaks, peaks.size()); ++p) {
        const double center = -pi + step * peaks[p];
        best = golden_max(gain, center - step, center + step, best);
    }
    return best;
}

}  // namespace

TransferFn::TransferFn(ARModel model) : source_(std::move(model)) {
    std::get<ARModel>(source_).validate();
}

ComplexMatrix TransferFn::inverse_at(double omega) const {
    if (const auto* net = std::get_if<PartitionedNetwork>(&source_))
        return network_inverse(*net, omega);
    return ar_inverse(std::get<ARModel>(source_), omega);
}

ComplexMatrix TransferFn::evaluate(double omega) const {
    const ComplexMatrix m = inverse_at(omega);
    return checked_solve(m, ComplexMatrix::Identity(m.rows(), m.cols()), omega,
                         "transfer function inverse");
}

Index TransferFn::n_manifest() const {
    if (const auto* net = std::get_if<PartitionedNetwork>(&source_)) return net->n_manifest();
    return std::get<ARModel>(source_).n_manifest();
}

TransferFn manifest_tf(const PartitionedNetwork& net) { return TransferFn(net); }

TransferFn ar_tf(const ARModel& model) { return TransferFn(model); }

ARModel optimal_ar(const PartitionedNetwork& net, int tau) {
    if (tau < 1) throw InvalidArgument("AR order must be at least 1");
    ARModel model;
    model.provenance = Provenance::OptimalFromNetwork;
    model.mats.reserve(static_cast<std::size_t>(tau));
    model.mats.push_back(net.a11());
    Matrix relay = net.a21();  // a22^(i-1) a21
    for (int i = 1; i < tau; ++i) {
        model.mats.push_back(net.a12() * relay);
        relay = net.a22() * relay;
    }
    return model;
}

double hinf_norm(const TransferFn& t, int grid_size) {
    return peak_gain([&](double w) { return largest_singular_value(t.evaluate(w)); },
                     grid_size);
}

double hinf_distance(const TransferFn& t1, const TransferFn& t2, int grid_size) {
    if (t1.n_manifest() != t2.n_manifest())
        throw InvalidArgument("transfer functions have different dimensions");
    return peak_gain(
        [&](double w) { return largest_singular_value(t1.evaluate(w) - t2.evaluate(w)); },
        grid_size);
}

double kappa_for(const Matrix& a22, double rho_bar, std::optional<int> horizon) {
    if (a22.rows() != a22.cols()) throw InvalidArgument("a22 must be square");
    const Index nl = a22.rows();
    if (!(rho_bar < 1.0)) throw InvalidArgument("rho_bar must be below 1");
    const double rho = spectral_radius(a22);
    if (!(rho_bar > rho))
        throw InvalidArgument("rho_bar must exceed the spectral radius of a22 (" +
                              std::to_string(rho) + ")");
    const int min_horizon = horizon.value_or(std::max<int>(static_cast<int>(nl), 200));
    if (min_horizon < nl) throw InvalidArgument("kappa horizon must be at least n_l");
    if (nl == 0) return 1.0;

    const Matrix scaled = a22 / rho_bar;
    Matrix power = Matrix::Identity(nl, nl);
    double kappa = 1.0;
    constexpr int kHardCap = 1'000'000;
    for (int i = 1; i <= kHardCap; ++i) {
        power = power * scaled;
        const double term = spectral_norm(power);
        kappa = std::max(kappa, term);
        if (i >= min_horizon && term < 1e-3 * kappa) return kappa;
    }
    warn("kappa_for: tail did not decay within the iteration cap");
    return kappa;
}

double default_rho_bar(const PartitionedNetwork& net) {
    return 0.5 * (spectral_radius(net.a22()) + 1.0);
}

TheoryBounds theory_bound(const PartitionedNetwork& net, std::optional<double> rho_bar,
                          int tau_max, int grid_size) {
    if (tau_max < 1) throw InvalidArgument("tau_max must be at least 1");
    TheoryBounds b;
    b.rho_latent = spectral_radius(net.a22());
    b.rho_bar = rho_bar.value_or(0.5 * (b.rho_latent + 1.0));
    b.kappa = kappa_for(net.a22(), b.rho_bar);
    b.manifest_hinf = hinf_norm(manifest_tf(net), grid_size);
    b.a12_norm = spectral_norm(net.a12());
    b.a21_norm = spectral_norm(net.a21());

    const double prefactor = b.kappa * b.manifest_hinf * b.a12_norm * b.a21_norm /
                             (b.rho_bar - b.rho_bar * b.rho_bar);
    for (int tau = 1; tau <= tau_max; ++tau) {
        const double ar_norm = hinf_norm(ar_tf(optimal_ar(net, tau)), grid_size);
        const double gamma = prefactor * ar_norm;
        b.taus.push_back(tau);
        b.ar_hinf.push_back(ar_norm);
        b.gamma_tau.push_back(gamma);
        b.bound_tau.push_back(gamma * std::pow(b.rho_bar, tau));
    }
    return b;
}

}  // namespace latnet
