#include "latnet/errors.hpp"
#include "latnet/netgen.hpp"
#include "latnet/rng.hpp"
#include "latnet/simulate.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace latnet;
using latnet::testing::ids;

namespace {

// Collects warnings for the duration of a test.
class WarningCapture {
public:
    WarningCapture() {
        previous_ = set_warning_handler([this](std::string_view m) { messages.emplace_back(m); });
    }
    ~WarningCapture() { set_warning_handler(std::move(previous_)); }

    std::vector<std::string> messages;

private:
    WarningHandler previous_;
};

}  // namespace

TEST(Rng, DeriveSeedSeparatesCells) {
    EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
    EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
    EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(2, {2, 3}));
}

TEST(Rng, BelowStaysInRange) {
    RandomStream rng(4);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) ++counts[static_cast<std::size_t>(rng.below(7))];
    for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(GaussianInput, MomentsAtOneMillion) {
    const Matrix u = gaussian_input(3, 1'000'000, 12345);
    const Vector mean = u.rowwise().mean();
    for (Index i = 0; i < 3; ++i) EXPECT_LT(std::abs(mean(i)), 0.01);
    const Matrix centered = u.colwise() - mean;
    const Matrix cov = centered * centered.transpose() / static_cast<double>(u.cols() - 1);
    EXPECT_LE(max_abs(cov - Matrix::Identity(3, 3)), 0.01);
}

TEST(GaussianInput, Deterministic) {
    EXPECT_EQ(gaussian_input(2, 500, 8), gaussian_input(2, 500, 8));
    EXPECT_NE(gaussian_input(2, 500, 8), gaussian_input(2, 500, 9));
}

TEST(Simulate, ZeroNetworkPassesInputThrough) {
    const auto net = partition(Matrix::Zero(4, 4), ids({1, 2}));
    const auto data = simulate(net, 200, 5);
    ASSERT_TRUE(data.inputs.has_value());
    // y(k) = u(k-1): output column c is driven by input column c.
    EXPECT_EQ(data.outputs, *data.inputs);
    EXPECT_EQ(data.seed, 5u);
    EXPECT_EQ(data.rng_algorithm, std::string(kRngAlgorithm));
}

TEST(Simulate, ScalarGeometricDecay) {
    Matrix a(1, 1);
    a << 0.5;
    const auto net = partition(a, ids({1}));
    Matrix u = Matrix::Zero(1, 30);
    u(0, 0) = 1.0;
    const Matrix y = simulate_with_input(net, u);
    for (Index k = 1; k <= 30; ++k) EXPECT_DOUBLE_EQ(y(0, k - 1), std::pow(0.5, static_cast<double>(k - 1)));
}

TEST(Simulate, MatchesStepByStepOracle) {
    const auto net = gen_ring(40, 0.25, 0.25, ids({5, 23, 33, 34, 36}));
    const auto data = simulate(net, 100'000, 21);
    const Matrix oracle = latnet::testing::naive_simulate(net.assemble(), 5, *data.inputs);
    EXPECT_LE(max_abs(data.outputs - oracle), 1e-12);

    // Finite, roughly stationary variance across the two halves.
    const Index half = data.length() / 2;
    for (Index i = 0; i < 5; ++i) {
        const double v1 = data.outputs.row(i).head(half).squaredNorm() / half;
        const double v2 = data.outputs.row(i).tail(half).squaredNorm() / half;
        EXPECT_TRUE(std::isfinite(v1));
        EXPECT_NEAR(v1 / v2, 1.0, 0.05);
    }
}

TEST(Simulate, DenseAndSparsePathsAgree) {
    ErdosRenyiParams p;
    p.n = 30;
    p.p = 0.05;
    p.n_manifest = 6;
    p.seed = 2;
    const auto net = gen_erdos_renyi(p);
    const Matrix u = gaussian_input(6, 2000, 3);
    EXPECT_LE(max_abs(simulate_with_input(net, u) -
                      latnet::testing::naive_simulate(net.assemble(), 6, u)),
              1e-12);
}

TEST(Simulate, Superposition) {
    RandomStream rng(31);
    const Matrix a = latnet::testing::random_with_radius(rng, 6, 0.8);
    const auto net = partition(a, ids({2, 5}));
    const Matrix u1 = gaussian_input(2, 500, 1);
    const Matrix u2 = gaussian_input(2, 500, 2);
    const Matrix y12 = simulate_with_input(net, u1 + u2);
    const Matrix sum = simulate_with_input(net, u1) + simulate_with_input(net, u2);
    EXPECT_LE(max_abs(y12 - sum), 1e-10 * std::max(1.0, max_abs(y12)));
}

TEST(Simulate, LatentRelabelingInvariance) {
    RandomStream rng(41);
    const Matrix a = latnet::testing::random_with_radius(rng, 7, 0.9);
    const auto net = partition(a, ids({1, 4}));
    // Reverse the latent order.
    const Index nl = net.n_latent();
    Eigen::PermutationMatrix<Eigen::Dynamic> p(nl);
    for (Index i = 0; i < nl; ++i) p.indices()(i) = static_cast<int>(nl - 1 - i);
    std::vector<NodeId> latent(net.latent_labels().rbegin(), net.latent_labels().rend());
    const PartitionedNetwork permuted(net.a11(), net.a12() * p.transpose(), p * net.a21(),
                                      p * net.a22() * p.transpose(), net.manifest_labels(), latent);
    const Matrix u = gaussian_input(2, 1000, 3);
    EXPECT_LE(max_abs(simulate_with_input(net, u) - simulate_with_input(permuted, u)), 1e-12);
}

TEST(Simulate, DeterministicPerSeed) {
    const auto net = latnet::testing::four_ring(0.4);
    const auto a = simulate(net, 1000, 77);
    const auto b = simulate(net, 1000, 77);
    EXPECT_EQ(a.outputs, b.outputs);
    EXPECT_NE(a.outputs, simulate(net, 1000, 78).outputs);
}

TEST(Simulate, BurnInKeepsTail) {
    const auto net = latnet::testing::four_ring(0.4);
    SimulationOptions opts;
    opts.burn_in = 100;
    const auto data = simulate(net, 500, 9, opts);
    EXPECT_EQ(data.length(), 500);
    const Matrix all_inputs = gaussian_input(2, 600, 9);
    const Matrix full = simulate_with_input(net, all_inputs);
    EXPECT_EQ(data.outputs, full.rightCols(500));
}

TEST(Simulate, InitialState) {
    Matrix a(2, 2);
    a << 0.5, 0.0, 1.0, 0.0;
    const auto net = partition(a, ids({1}));
    Vector x0(2);
    x0 << 2.0, 0.0;
    const Matrix y = simulate_with_input(net, Matrix::Zero(1, 3), x0);
    EXPECT_DOUBLE_EQ(y(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(y(0, 2), 0.25);
    EXPECT_THROW(simulate_with_input(net, Matrix::Zero(1, 3), Vector::Zero(3)), InvalidArgument);
}

TEST(Simulate, UnstableWarnsThenOverflows) {
    WarningCapture capture;
    Matrix a(1, 1);
    a << 2.0;
    const auto net = partition(a, ids({1}));
    try {
        simulate(net, 2000, 1);
        FAIL() << "expected overflow";
    } catch (const NumericOverflow& e) {
        EXPECT_GT(e.step(), 300u);
        EXPECT_LT(e.step(), 400u);
    }
    EXPECT_FALSE(capture.messages.empty());
}

TEST(TimeSeriesData, SliceAndValidate) {
    const auto net = latnet::testing::four_ring(0.4);
    const auto data = simulate(net, 100, 1);
    const auto tail = data.slice(80, 20);
    EXPECT_EQ(tail.outputs, data.outputs.rightCols(20));
    EXPECT_EQ(*tail.inputs, data.inputs->rightCols(20));
    EXPECT_THROW(data.slice(90, 20), InvalidArgument);

    TimeSeriesData bad;
    bad.outputs = Matrix::Zero(2, 0);
    EXPECT_THROW(bad.validate(), InvalidArgument);
    bad.outputs = Matrix::Constant(1, 2, std::nan(""));
    EXPECT_THROW(bad.validate(), InvalidArgument);
}
