#include "latnet/errors.hpp"
#include "latnet/experiment.hpp"
#include "latnet/netgen.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace latnet;
using latnet::testing::ids;

namespace {

bool same_rows(const std::vector<ErrorSurfaceRow>& a, const std::vector<ErrorSurfaceRow>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].length != b[i].length || a[i].tau != b[i].tau || a[i].seed != b[i].seed ||
            a[i].hinf_error != b[i].hinf_error || a[i].coeff_error != b[i].coeff_error ||
            a[i].error != b[i].error)
            return false;
    }
    return true;
}

}  // namespace

TEST(ErrorSurface, SingleCell) {
    ErrorSurfaceConfig cfg;
    cfg.lengths = {500};
    cfg.taus = {2};
    cfg.seeds = {3};
    cfg.grid_size = 256;
    const auto rows = error_surface(latnet::testing::four_ring(0.4), cfg);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_TRUE(rows[0].error.empty());
    EXPECT_GT(rows[0].hinf_error, 0.0);
    EXPECT_GT(rows[0].coeff_error, 0.0);
}

TEST(ErrorSurface, SortedAndIndependentOfThreads) {
    ErrorSurfaceConfig cfg;
    cfg.lengths = {2000, 500};
    cfg.taus = {3, 1};
    cfg.seeds = {2, 1};
    cfg.grid_size = 128;
    cfg.threads = 1;
    const auto net = latnet::testing::four_ring(0.4);
    const auto serial = error_surface(net, cfg);
    cfg.threads = 3;
    const auto parallel = error_surface(net, cfg);
    EXPECT_TRUE(same_rows(serial, parallel));
    ASSERT_EQ(serial.size(), 8u);
    EXPECT_EQ(serial.front().length, 500);
    EXPECT_EQ(serial.front().tau, 1);
    EXPECT_EQ(serial.front().seed, 1u);
    for (std::size_t i = 1; i < serial.size(); ++i) {
        const auto& a = serial[i - 1];
        const auto& b = serial[i];
        EXPECT_TRUE(std::tie(a.length, a.tau, a.seed) < std::tie(b.length, b.tau, b.seed));
    }
}

TEST(ErrorSurface, UnstableCellRecordsError) {
    Matrix a(2, 2);
    a << 3.0, 0.0, 1.0, 0.0;
    ErrorSurfaceConfig cfg;
    cfg.lengths = {2000};
    cfg.taus = {1};
    cfg.seeds = {1};
    cfg.grid_size = 64;
    const auto saved = set_warning_handler({});
    const auto rows = error_surface(partition(a, ids({1})), cfg);
    set_warning_handler(saved);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_FALSE(rows[0].error.empty());
}

TEST(ErrorSurface, ValidatesConfig) {
    ErrorSurfaceConfig cfg;
    cfg.lengths = {10};
    cfg.taus = {10};
    cfg.seeds = {1};
    EXPECT_THROW(cfg.validate(), InvalidArgument);
    cfg.taus = {};
    EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(BoundTable, NilpotentLatentHitsZero) {
    Matrix b = Matrix::Zero(5, 5);
    b(0, 0) = 0.3;
    b(2, 0) = 0.4;
    b(3, 2) = 0.5;
    b(1, 3) = 0.6;
    b(4, 1) = 0.3;
    b(0, 4) = 0.5;
    const auto net = partition(b, ids({1, 2}));
    const int t22 = *latent_acyclicity_index(net.a22());
    const auto rows = bound_table(net, std::nullopt, 6, 1024);
    for (const auto& r : rows) {
        if (r.tau >= t22 + 1)
            EXPECT_LE(r.optimal_error, 1e-9) << "tau = " << r.tau;
        else
            EXPECT_GT(r.optimal_error, 1e-9) << "tau = " << r.tau;
    }
}

TEST(BoundTable, LatentFreeIsExact) {
    Matrix a(2, 2);
    a << 0.3, 0.1, -0.2, 0.4;
    for (const auto& r : bound_table(partition(a, ids({1, 2})), std::nullopt, 5, 512))
        EXPECT_LE(r.optimal_error, 1e-12);
}

TEST(BoundTable, RingBoundDominates) {
    const auto net = gen_ring(10, 0.25, 0.25, ids({1, 4, 7}));
    const auto rows = bound_table(net, std::nullopt, 20);
    ASSERT_EQ(rows.size(), 20u);
    for (const auto& r : rows) EXPECT_GE(r.bound, r.optimal_error) << "tau = " << r.tau;
    EXPECT_THROW(bound_table(net, 0.25, 5), InvalidArgument);
}
