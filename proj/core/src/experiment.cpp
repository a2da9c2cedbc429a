#include "latnet/experiment.hpp"

#include "latnet/errors.hpp"
#include "latnet/lsar.hpp"
#include "latnet/rng.hpp"
#include "latnet/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <tuple>

namespace latnet {

void ErrorSurfaceConfig::validate() const {
    if (lengths.empty() || taus.empty() || seeds.empty())
        throw InvalidArgument("error surface needs nonempty N, tau and seed lists");
    if (grid_size < 2) throw InvalidArgument("grid size must be at least 2");
    for (int tau : taus)
        if (tau < 1) throw InvalidArgument("tau values must be at least 1");
    const int max_tau = *std::max_element(taus.begin(), taus.end());
    for (Index n : lengths)
        if (n <= max_tau)
            throw InvalidArgument("every N must exceed the largest tau (" +
                                  std::to_string(max_tau) + ")");
    if (reg) reg->validate();
}

std::uint64_t cell_seed(std::uint64_t seed, Index length, int tau) {
    return derive_seed(seed, {static_cast<std::uint64_t>(length), static_cast<std::uint64_t>(tau)});
}

std::vector<ErrorSurfaceRow> error_surface(const PartitionedNetwork& net,
                                           const ErrorSurfaceConfig& config) {
    config.validate();
    std::vector<ErrorSurfaceRow> rows;
    for (Index n : config.lengths)
        for (int tau : config.taus)
            for (std::uint64_t seed : config.seeds) rows.push_back({n, tau, seed, 0.0, 0.0, {}});

    const TransferFn truth = manifest_tf(net);
    auto run_cell = [&](ErrorSurfaceRow& row) {
        try {
            SimulationOptions sim;
            sim.burn_in = config.burn_in;
            const auto data = simulate(net, row.length, cell_seed(row.seed, row.length, row.tau), sim);
            const ARModel fit = fit_ar(data, row.tau, config.reg).model;
            row.coeff_error = coefficient_distance(fit, optimal_ar(net, row.tau));
            row.hinf_error = hinf_distance(ar_tf(fit), truth, config.grid_size);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    unsigned workers = config.threads ? config.threads : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(rows.size()));
    if (workers == 1) {
        for (auto& row : rows) run_cell(row);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < rows.size(); i = next++) run_cell(rows[i]);
            });
        }
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return std::tie(a.length, a.tau, a.seed) < std::tie(b.length, b.tau, b.seed);
    });
    return rows;
}

std::vector<BoundTableRow> bound_table(const PartitionedNetwork& net,
                                       std::optional<double> rho_bar, int tau_max,
                                       int grid_size) {
    const TheoryBounds bounds = theory_bound(net, rho_bar, tau_max, grid_size);
    const TransferFn truth = manifest_tf(net);
    std::vector<BoundTableRow> rows;
    for (std::size_t i = 0; i < bounds.taus.size(); ++i) {
        const int tau = bounds.taus[i];
        BoundTableRow r;
        r.tau = tau;
        r.optimal_error = hinf_distance(ar_tf(optimal_ar(net, tau)), truth, grid_size);
        r.gamma = bounds.gamma_tau[i];
        r.bound = bounds.bound_tau[i];
        rows.push_back(r);
    }
    return rows;
}

}  // namespace latnet
