#include "latnet/errors.hpp"
#include "latnet/io.hpp"
#include "latnet/lsar.hpp"
#include "latnet/spectral.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace latnet;
using latnet::testing::ids;

TEST(NetworkJson, RoundTripIsByteIdentical) {
    const auto net = gen_ring(40, 0.25, 0.25, ids({5, 23, 33, 34, 36}));
    const std::string first = io::dump(io::network_to_json(net));
    const auto back = io::network_from_json(io::json::parse(first));
    EXPECT_EQ(io::dump(io::network_to_json(back)), first);
    EXPECT_EQ(back.assemble(), net.assemble());
    EXPECT_EQ(back.manifest_labels(), net.manifest_labels());

    ErdosRenyiParams p;
    p.seed = 7;
    const auto er = gen_erdos_renyi(p);
    const std::string s = io::dump(io::network_to_json(er));
    EXPECT_EQ(io::dump(io::network_to_json(io::network_from_json(io::json::parse(s)))), s);
}

TEST(NetworkJson, RejectsMalformed) {
    auto j = io::network_to_json(latnet::testing::four_ring(0.3));
    auto missing = j;
    missing.erase("a12");
    EXPECT_THROW(io::network_from_json(missing), DataFormat);

    auto ragged = j;
    ragged["a21"][0] = io::json::array({1.0});
    try {
        io::network_from_json(ragged);
        FAIL();
    } catch (const DataFormat& e) {
        EXPECT_EQ(e.location(), "a21[0]");
    }

    auto dup = j;
    dup["latent_labels"] = io::json::array({1, 4});
    EXPECT_THROW(io::network_from_json(dup), DataFormat);
    EXPECT_THROW(io::network_from_json(io::json::array()), DataFormat);
}

TEST(HigherOrderJson, RoundTrip) {
    RandomStream rng(3);
    HigherOrderNetwork hon{{latnet::testing::random_matrix(rng, 3, 3), latnet::testing::random_matrix(rng, 3, 3)}, 2};
    const auto back = io::higher_order_from_json(io::higher_order_to_json(hon));
    EXPECT_EQ(back.coeffs[1], hon.coeffs[1]);
    EXPECT_EQ(back.manifest_count, 2);
}

TEST(ArModelJson, RoundTripKeepsProvenanceAndReg) {
    const auto y = simulate(latnet::testing::four_ring(0.4), 2000, 1);
    const auto model = lsar_fit_regularized(y, 3, {10.0, 0.9});
    const auto j = io::ar_model_to_json(model);
    EXPECT_EQ(j["provenance"], "lsar-regularized");
    const auto back = io::ar_model_from_json(j);
    EXPECT_EQ(back.provenance, Provenance::LsarRegularized);
    ASSERT_TRUE(back.reg.has_value());
    EXPECT_EQ(back.reg->rho0, 0.9);
    EXPECT_EQ(coefficient_distance(back, model), 0.0);
    EXPECT_EQ(io::dump(io::ar_model_to_json(back)), io::dump(j));

    auto bad = j;
    bad["provenance"] = "guess";
    EXPECT_THROW(io::ar_model_from_json(bad), DataFormat);
    bad = j;
    bad["tau"] = 4;
    EXPECT_THROW(io::ar_model_from_json(bad), DataFormat);
}

TEST(TimeseriesCsv, RoundTripIsExact) {
    auto data = simulate(latnet::testing::four_ring(0.4), 300, 42);
    data.dt_label = "4ms";
    std::ostringstream out;
    io::write_timeseries_csv(out, data);
    const std::string text = out.str();
    EXPECT_EQ(text.rfind("# latnet timeseries rng=mt19937_64+box-muller/v1 seed=42 dt=4ms\n", 0), 0u);

    std::istringstream in(text);
    const auto back = io::read_timeseries_csv(in);
    EXPECT_EQ(back.outputs, data.outputs);
    ASSERT_TRUE(back.inputs.has_value());
    EXPECT_EQ(*back.inputs, *data.inputs);
    EXPECT_EQ(back.seed, 42u);
    EXPECT_EQ(back.dt_label, std::string("4ms"));

    std::ostringstream again;
    io::write_timeseries_csv(again, back);
    EXPECT_EQ(again.str(), text);
}

TEST(TimeseriesCsv, ReadsPlainRecordings) {
    std::istringstream headerless("1.5,2\n-3,4e-1\n0,0\n");
    const auto a = io::read_timeseries_csv(headerless);
    EXPECT_EQ(a.n_manifest(), 2);
    EXPECT_EQ(a.length(), 3);
    EXPECT_EQ(a.outputs(1, 1), 0.4);
    EXPECT_FALSE(a.inputs.has_value());

    std::istringstream named("Fz,Cz,Pz\n1,2,3\n4,5,6\n");
    const auto b = io::read_timeseries_csv(named);
    EXPECT_EQ(b.n_manifest(), 3);
    EXPECT_EQ(b.outputs(2, 1), 6.0);
}

TEST(TimeseriesCsv, ReportsLineAndField) {
    std::istringstream bad_number("t,y1,y2\n1,0.5,0.25\n2,0.1,abc\n");
    try {
        io::read_timeseries_csv(bad_number);
        FAIL();
    } catch (const DataFormat& e) {
        EXPECT_EQ(e.location(), "line 3, field 3");
    }
    std::istringstream ragged("t,y1,y2\n1,0.5,0.25\n2,0.1\n");
    try {
        io::read_timeseries_csv(ragged);
        FAIL();
    } catch (const DataFormat& e) {
        EXPECT_EQ(e.location(), "line 3");
    }
    std::istringstream empty("# nothing\n");
    EXPECT_THROW(io::read_timeseries_csv(empty), DataFormat);
}

TEST(Tables, CsvHeaders) {
    std::ostringstream bt;
    io::write_bound_table_csv(bt, {{1, 0.5, 2.0, 1.0}});
    EXPECT_EQ(bt.str(),
              "tau,optimal_error,gamma,bound\n"
              "1,5.0000000000000000e-01,2.0000000000000000e+00,1.0000000000000000e+00\n");

    std::ostringstream es;
    io::write_error_surface_csv(es, {{1000, 2, 3, 0.25, 0.5, ""}, {1000, 3, 3, 0, 0, "boom, again"}});
    EXPECT_EQ(es.str(),
              "N,tau,seed,hinf_error,coeff_error,error\n"
              "1000,2,3,2.5000000000000000e-01,5.0000000000000000e-01,\n"
              "1000,3,3,,,boom  again\n");
}

TEST(GraphExport, JsonAndEdges) {
    const auto net = latnet::testing::four_ring(0.25);
    const auto g = classify(optimal_ar(net, 2), ClassifyOptions{0.5, std::nullopt, false, true},
                            net.manifest_labels());
    const auto j = io::graph_to_json(g);
    EXPECT_EQ(j["indirect"].size(), 2u);
    EXPECT_EQ(j["direct"].size(), 0u);
    EXPECT_EQ(j["orders_exact"], true);

    std::ostringstream csv;
    io::write_graph_edges_csv(csv, g);
    EXPECT_EQ(csv.str(), "src,dst,kind,weight_or_order\n3,1,indirect,1\n1,3,indirect,1\n");
}

TEST(FitReportJson, NamesObjective) {
    const auto y = simulate(latnet::testing::four_ring(0.4), 2000, 1);
    const auto plain = io::fit_report_to_json(fit_ar(y, 2).report);
    EXPECT_EQ(plain["objective_kind"], "residual_energy");
    const auto reg = io::fit_report_to_json(fit_ar(y, 2, RegularizationConfig{10.0, 0.9}).report);
    EXPECT_EQ(reg["objective_kind"], "residual_energy+exponential_penalty");
    EXPECT_EQ(reg["reg"]["gamma"], 10.0);
    EXPECT_GT(reg["objective"].get<double>(), reg["residual_energy"].get<double>());
}
