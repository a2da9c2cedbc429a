#include "commands.hpp"

#include "latnet/latnet.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace latnet::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 0;
    bool seed_given = false;
    int grid = kDefaultGridSize;
    std::string out;
};

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

// Primary artifact: the --out file when given, stdout otherwise. Secondary
// reports then take stdout if it is free, stderr if not.
void emit(const std::string& path, const std::string& contents, std::ostream& fallback) {
    if (path.empty())
        fallback << contents;
    else
        io::write_text_file(path, contents);
}

std::ostream& report_stream(const GlobalOptions& g, const Streams& s) {
    return g.out.empty() ? s.err : s.out;
}

std::optional<RegularizationConfig> make_reg(const std::optional<double>& gamma,
                                             const std::optional<double>& rho0) {
    if (!gamma) {
        if (rho0) throw InvalidArgument("--rho0 needs --gamma");
        return std::nullopt;
    }
    RegularizationConfig reg{*gamma, rho0.value_or(1.0)};
    reg.validate();
    return reg;
}

PartitionedNetwork load_network(const std::string& path) {
    return io::network_from_json(io::read_json_file(path));
}

TimeSeriesData load_timeseries(const std::string& path) {
    std::istringstream in(io::read_text_file(path));
    try {
        return io::read_timeseries_csv(in);
    } catch (const DataFormat& e) {
        throw DataFormat(e.what(), path);
    }
}

std::string network_document(const PartitionedNetwork& net) {
    return io::dump(io::network_to_json(net));
}

void report_stability(const PartitionedNetwork& net, const GlobalOptions& g, const Streams& s) {
    const StabilityReport r = stability_report(net);
    report_stream(g, s) << io::dump(io::stability_to_json(r));
    if (!r.stable) warn("network is not stable (spectral radius >= 1)");
}

// ---- generate ------------------------------------------------------------

struct RingArgs {
    int n = 0;
    double w = 0.25;
    double self = 0.25;
    std::vector<int> manifest;
};

struct ErArgs {
    ErdosRenyiParams params;
};

struct HigherOrderArgs {
    std::string in;
};

void add_generate(CLI::App& app, RingArgs& ring, ErArgs& er, HigherOrderArgs& hon) {
    auto* gen = app.add_subcommand("generate", "Build a network file");
    gen->require_subcommand(1);

    auto* r = gen->add_subcommand("ring", "Directed ring i -> i+1 with optional self-loops");
    r->add_option("--n", ring.n, "Number of nodes")->required();
    r->add_option("--w", ring.w, "Ring edge weight")->capture_default_str();
    r->add_option("--self", ring.self, "Self-loop weight")->capture_default_str();
    r->add_option("--manifest", ring.manifest, "Manifest node labels, 1-based")
        ->delimiter(',')
        ->required();

    auto* e = gen->add_subcommand("er", "Erdos-Renyi graph with uniform weights");
    e->add_option("--n", er.params.n, "Number of nodes")->capture_default_str();
    e->add_option("--p", er.params.p, "Edge probability per unordered pair")->capture_default_str();
    e->add_option("--wmin", er.params.w_min, "Smallest edge weight")->capture_default_str();
    e->add_option("--wmax", er.params.w_max, "Largest edge weight")->capture_default_str();
    e->add_option("--nm", er.params.n_manifest, "Number of manifest nodes")->capture_default_str();

    auto* h = gen->add_subcommand("from-higher-order", "Lift a higher-order network to first order");
    h->add_option("--in", hon.in, "Higher-order network JSON")->required();
}

int cmd_generate(CLI::App& gen, const RingArgs& ring, ErArgs er, const HigherOrderArgs& hon,
                 const GlobalOptions& g, const Streams& s) {
    std::optional<PartitionedNetwork> net;
    if (gen.got_subcommand("ring")) {
        std::vector<NodeId> manifest;
        for (int m : ring.manifest) manifest.push_back(NodeId{m});
        net = gen_ring(ring.n, ring.w, ring.self, manifest);
    } else if (gen.got_subcommand("er")) {
        er.params.seed = g.seed;
        net = gen_erdos_renyi(er.params);
    } else {
        net = lift_higher_order(io::higher_order_from_json(io::read_json_file(hon.in)));
    }
    emit(g.out, network_document(*net), s.out);
    report_stability(*net, g, s);
    return kOk;
}

// ---- simulate ------------------------------------------------------------

struct SimulateArgs {
    std::string net;
    Index length = 0;
    Index burn_in = 0;
    std::string dt;
};

int cmd_simulate(const SimulateArgs& a, const GlobalOptions& g, const Streams& s) {
    const PartitionedNetwork net = load_network(a.net);
    SimulationOptions opts;
    opts.burn_in = a.burn_in;
    TimeSeriesData data = simulate(net, a.length, g.seed, opts);
    if (!a.dt.empty()) data.dt_label = a.dt;
    std::ostringstream csv;
    io::write_timeseries_csv(csv, data);
    emit(g.out, csv.str(), s.out);
    return kOk;
}

// ---- fit -----------------------------------------------------------------

struct FitArgs {
    std::string data;
    int tau = 0;
    std::optional<double> gamma;
    std::optional<double> rho0;
    std::string report;
};

int cmd_fit(const FitArgs& a, const GlobalOptions& g, const Streams& s) {
    const auto reg = make_reg(a.gamma, a.rho0);
    const TimeSeriesData data = load_timeseries(a.data);
    const LsarFit fit = fit_ar(data, a.tau, reg);
    emit(g.out, io::dump(io::ar_model_to_json(fit.model)), s.out);
    const std::string report = io::dump(io::fit_report_to_json(fit.report));
    if (!a.report.empty())
        io::write_text_file(a.report, report);
    else
        report_stream(g, s) << report;
    return kOk;
}

// ---- classify ------------------------------------------------------------

struct ClassifyArgs {
    std::string model;
    double alpha = 0.1;
    std::optional<double> cutoff;
    bool exclude_diagonal = false;
    bool acyclic = false;
    std::string net;
    std::string edges;
};

int cmd_classify(const ClassifyArgs& a, const GlobalOptions& g, const Streams& s) {
    const ARModel model = io::ar_model_from_json(io::read_json_file(a.model));
    ClassifyOptions opts;
    opts.alpha = a.alpha;
    opts.direct_cutoff = a.cutoff;
    opts.exclude_diagonal_from_max = a.exclude_diagonal;
    opts.latent_acyclic = a.acyclic;

    std::optional<PartitionedNetwork> truth;
    std::vector<NodeId> labels;
    if (!a.net.empty()) {
        truth = load_network(a.net);
        if (truth->n_manifest() != model.n_manifest())
            throw InvalidArgument("network and model disagree on the number of manifest nodes");
        labels = truth->manifest_labels();
    }
    const ManifestGraph graph = classify(model, opts, labels);

    json doc = io::graph_to_json(graph);
    if (truth) {
        const GraphComparison cmp = compare_graphs(graph, *truth);
        auto score = [](const DetectionScore& d) {
            return json{{"precision", d.precision}, {"recall", d.recall}, {"f1", d.f1},
                        {"tp", d.true_positives}, {"fp", d.false_positives},
                        {"fn", d.false_negatives}};
        };
        doc["comparison"] = {{"direct", score(cmp.direct)}, {"indirect", score(cmp.indirect)}};
    }
    emit(g.out, io::dump(doc), s.out);

    if (!a.edges.empty()) {
        std::ostringstream csv;
        io::write_graph_edges_csv(csv, graph);
        io::write_text_file(a.edges, csv.str());
    }

    // Human-readable edge list.
    std::ostream& r = report_stream(g, s);
    for (Index q = 0; q < graph.n_m; ++q) {
        for (Index p = 0; p < graph.n_m; ++p) {
            const int src = graph.labels[static_cast<std::size_t>(p)].value;
            const int dst = graph.labels[static_cast<std::size_t>(q)].value;
            if (graph.has_direct(q, p))
                r << "direct   " << src << " -> " << dst << "  weight " << graph.direct(q, p) << '\n';
            if (const auto order = graph.min_order(q, p))
                r << "indirect " << src << " -> " << dst << "  order " << *order
                  << (graph.orders_exact ? "" : " (lower bound on path order)") << '\n';
        }
    }
    return kOk;
}

// ---- validate ------------------------------------------------------------

struct ValidateArgs {
    std::string data;
    int tau = 0;
    double split = 0.8;
    std::optional<double> gamma;
    std::optional<double> rho0;
};

int cmd_validate(const ValidateArgs& a, const GlobalOptions& g, const Streams& s) {
    if (!(a.split > 0.0 && a.split < 1.0)) throw InvalidArgument("--split must lie in (0, 1)");
    const auto reg = make_reg(a.gamma, a.rho0);
    const TimeSeriesData data = load_timeseries(a.data);
    const Index n = data.length();
    const auto n_train = static_cast<Index>(std::floor(a.split * static_cast<double>(n)));
    const Index n_holdout = n - n_train;
    if (n_train <= a.tau || n_holdout <= a.tau)
        throw InvalidArgument("both the training and the holdout segment must exceed tau samples");

    const LsarFit fit = fit_ar(data.slice(0, n_train), a.tau, reg);
    const double r2 = r_squared(fit.model, data.slice(n_train, n_holdout));

    json doc{{"tau", a.tau},
             {"split", a.split},
             {"n_train", n_train},
             {"n_holdout", n_holdout},
             {"r_squared", r2},
             {"fit", io::fit_report_to_json(fit.report)}};
    emit(g.out, io::dump(doc), s.out);
    report_stream(g, s) << "R^2 = " << io::format_double(r2) << '\n';
    return kOk;
}

// ---- error-surface -------------------------------------------------------

struct SurfaceArgs {
    std::string config;
    std::string net;
    std::vector<Index> lengths;
    std::vector<int> taus;
    std::vector<std::uint64_t> seeds;
    std::optional<double> gamma;
    std::optional<double> rho0;
    std::optional<double> alpha;
    std::optional<Index> burn_in;
    unsigned threads = 0;
};

template <class T>
T config_value(const json& cfg, const char* key, const T& fallback) {
    auto it = cfg.find(key);
    if (it == cfg.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw DataFormat("wrong type for config key", key);
    }
}

int cmd_error_surface(const CLI::App& cmd, const CLI::App& root, const SurfaceArgs& a,
                      const GlobalOptions& g, const Streams& s) {
    json cfg = json::object();
    fs::path base;
    if (!a.config.empty()) {
        cfg = io::read_json_file(a.config);
        if (!cfg.is_object()) throw DataFormat("config must be a JSON object", a.config);
        base = fs::path(a.config).parent_path();
    }

    // Network: flag path, else config path (relative to the config file) or inline object.
    json net_doc;
    if (!a.net.empty()) {
        net_doc = io::read_json_file(a.net);
    } else if (auto it = cfg.find("net"); it != cfg.end()) {
        if (it->is_string())
            net_doc = io::read_json_file(base / it->get<std::string>());
        else
            net_doc = *it;
    } else {
        throw InvalidArgument("error-surface needs a network (--net or \"net\" in the config)");
    }
    const PartitionedNetwork net = io::network_from_json(net_doc);

    ErrorSurfaceConfig sc;
    sc.lengths = cmd.count("--N-list") ? a.lengths : config_value(cfg, "N-list", std::vector<Index>{});
    sc.taus = cmd.count("--tau-list") ? a.taus : config_value(cfg, "tau-list", std::vector<int>{});
    if (cmd.count("--seeds"))
        sc.seeds = a.seeds;
    else if (g.seed_given)
        sc.seeds = {g.seed};
    else
        sc.seeds = config_value(cfg, "seeds", std::vector<std::uint64_t>{0});
    sc.grid_size = root.count("--grid") ? g.grid : config_value(cfg, "grid", g.grid);
    sc.burn_in = a.burn_in ? *a.burn_in : config_value<Index>(cfg, "burn-in", 0);
    sc.threads = a.threads;

    std::optional<double> gamma = a.gamma;
    std::optional<double> rho0 = a.rho0;
    if (!gamma && cfg.contains("gamma")) gamma = config_value<double>(cfg, "gamma", 0.0);
    if (!rho0 && cfg.contains("rho0")) rho0 = config_value<double>(cfg, "rho0", 1.0);
    sc.reg = make_reg(gamma, rho0);
    const double alpha = a.alpha ? *a.alpha : config_value(cfg, "alpha", 0.1);

    std::string out_dir = g.out;
    if (out_dir.empty()) {
        out_dir = config_value<std::string>(cfg, "out", "");
        if (!out_dir.empty() && fs::path(out_dir).is_relative())
            out_dir = (base / out_dir).lexically_normal().string();
    }

    sc.validate();
    const auto rows = error_surface(net, sc);
    std::ostringstream csv;
    io::write_error_surface_csv(csv, rows);

    if (out_dir.empty()) {
        s.out << csv.str();
    } else {
        json resolved{{"net", net_doc},
                      {"N-list", sc.lengths},
                      {"tau-list", sc.taus},
                      {"seeds", sc.seeds},
                      {"grid", sc.grid_size},
                      {"alpha", alpha},
                      {"burn-in", sc.burn_in},
                      {"out", out_dir}};
        if (sc.reg) {
            resolved["gamma"] = sc.reg->gamma;
            resolved["rho0"] = sc.reg->rho0;
        }
        io::write_text_file(fs::path(out_dir) / "config.json", io::dump(resolved));
        io::write_text_file(fs::path(out_dir) / "error_surface.csv", csv.str());
    }

    std::size_t failed = 0;
    for (const auto& r : rows)
        if (!r.error.empty()) ++failed;
    if (failed)
        s.err << "error-surface: " << failed << " of " << rows.size() << " cells failed\n";
    return kOk;
}

// ---- bound-table ---------------------------------------------------------

struct BoundArgs {
    std::string net;
    std::optional<double> rho_bar;
    int tau_max = 20;
};

int cmd_bound_table(const BoundArgs& a, const GlobalOptions& g, const Streams& s) {
    const PartitionedNetwork net = load_network(a.net);
    const auto rows = bound_table(net, a.rho_bar, a.tau_max, g.grid);
    std::ostringstream csv;
    io::write_bound_table_csv(csv, rows);
    emit(g.out, csv.str(), s.out);
    return kOk;
}

int dispatch(const std::vector<std::string>& args, const Streams& s) {
    CLI::App app{"Latent-node network identification from manifest time series", "latnet"};
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOptions g;
    auto* seed_opt = app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--grid", g.grid, "Frequency grid size for H-infinity evaluation")
        ->capture_default_str()
        ->check(CLI::Range(2, 1 << 24));
    app.add_option("--out", g.out, "Output file (directory for error-surface)");

    RingArgs ring;
    ErArgs er;
    HigherOrderArgs hon;
    add_generate(app, ring, er, hon);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Drive a network with white Gaussian input");
    sim_cmd->add_option("--net", sim.net, "Network JSON")->required();
    sim_cmd->add_option("--N", sim.length, "Number of samples")->required()->check(CLI::PositiveNumber);
    sim_cmd->add_option("--burn-in", sim.burn_in, "Samples discarded before recording")
        ->check(CLI::NonNegativeNumber);
    sim_cmd->add_option("--dt", sim.dt, "Sampling interval label stored with the data");

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "Least-squares AR fit of manifest data");
    fit_cmd->add_option("--data", fit.data, "Time-series CSV")->required();
    fit_cmd->add_option("--tau", fit.tau, "AR order")->required()->check(CLI::PositiveNumber);
    fit_cmd->add_option("--gamma", fit.gamma, "Exponential penalty weight");
    fit_cmd->add_option("--rho0", fit.rho0, "Penalty decay rate in (0, 1]");
    fit_cmd->add_option("--report", fit.report, "Fit report JSON");

    ClassifyArgs cls;
    auto* cls_cmd = app.add_subcommand("classify", "Threshold AR coefficients into a manifest graph");
    cls_cmd->add_option("--model", cls.model, "AR model JSON")->required();
    cls_cmd->add_option("--alpha", cls.alpha, "Proportional threshold")->capture_default_str();
    cls_cmd->add_option("--cutoff", cls.cutoff, "Absolute threshold for the direct block");
    cls_cmd->add_flag("--exclude-diagonal", cls.exclude_diagonal,
                      "Leave self-loops out of the normalizing maximum");
    cls_cmd->add_flag("--acyclic", cls.acyclic, "Latent subnetwork is known to be acyclic");
    cls_cmd->add_option("--net", cls.net, "Ground-truth network: supplies labels and scores");
    cls_cmd->add_option("--edges", cls.edges, "Edge CSV for plotting");

    ValidateArgs val;
    auto* val_cmd = app.add_subcommand("validate", "Holdout R^2 of an AR fit");
    val_cmd->add_option("--data", val.data, "Time-series CSV")->required();
    val_cmd->add_option("--tau", val.tau, "AR order")->required()->check(CLI::PositiveNumber);
    val_cmd->add_option("--split", val.split, "Training fraction")->capture_default_str();
    val_cmd->add_option("--gamma", val.gamma, "Exponential penalty weight");
    val_cmd->add_option("--rho0", val.rho0, "Penalty decay rate in (0, 1]");

    SurfaceArgs sur;
    auto* sur_cmd = app.add_subcommand("error-surface", "Sweep N, tau and seeds against a known network");
    sur_cmd->add_option("--config", sur.config, "JSON config; keys mirror the flag names");
    sur_cmd->add_option("--net", sur.net, "Network JSON");
    sur_cmd->add_option("--N-list", sur.lengths, "Data lengths")->delimiter(',');
    sur_cmd->add_option("--tau-list", sur.taus, "AR orders")->delimiter(',');
    sur_cmd->add_option("--seeds", sur.seeds, "Replicate seeds")->delimiter(',');
    sur_cmd->add_option("--gamma", sur.gamma, "Exponential penalty weight");
    sur_cmd->add_option("--rho0", sur.rho0, "Penalty decay rate in (0, 1]");
    sur_cmd->add_option("--alpha", sur.alpha, "Classification threshold recorded with the run");
    sur_cmd->add_option("--burn-in", sur.burn_in, "Samples discarded before recording");
    sur_cmd->add_option("--threads", sur.threads, "Worker threads (0: all cores)");

    BoundArgs bnd;
    auto* bnd_cmd = app.add_subcommand("bound-table", "Optimal-AR error next to the decay bound");
    bnd_cmd->add_option("--net", bnd.net, "Network JSON")->required();
    bnd_cmd->add_option("--rho-bar", bnd.rho_bar, "Decay rate, rho(a22) < rho_bar < 1");
    bnd_cmd->add_option("--tau-max", bnd.tau_max, "Largest order")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    // CLI11 consumes arguments from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            s.out << app.help();
            return kOk;
        }
        s.err << "latnet: " << e.what() << '\n';
        return kUsage;
    }
    g.seed_given = seed_opt->count() > 0;

    if (auto* gen = app.get_subcommand("generate"); gen->parsed())
        return cmd_generate(*gen, ring, er, hon, g, s);
    if (sim_cmd->parsed()) return cmd_simulate(sim, g, s);
    if (fit_cmd->parsed()) return cmd_fit(fit, g, s);
    if (cls_cmd->parsed()) return cmd_classify(cls, g, s);
    if (val_cmd->parsed()) return cmd_validate(val, g, s);
    if (sur_cmd->parsed()) return cmd_error_surface(*sur_cmd, app, sur, g, s);
    return cmd_bound_table(bnd, g, s);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const Streams s{out, err};
    WarningHandler previous =
        set_warning_handler([&err](std::string_view msg) { err << "latnet: warning: " << msg << '\n'; });
    int code = kFailure;
    try {
        code = dispatch(args, s);
    } catch (const InvalidArgument& e) {
        err << "latnet: invalid argument: " << e.what() << '\n';
        code = kUsage;
    } catch (const DataFormat& e) {
        err << "latnet: data format error: " << e.what() << '\n';
        code = kDataFormat;
    } catch (const SingularMatrix& e) {
        err << "latnet: numeric error: " << e.what() << '\n';
        code = kNumeric;
    } catch (const NumericOverflow& e) {
        err << "latnet: numeric error: " << e.what() << '\n';
        code = kNumeric;
    } catch (const UndefinedRatio& e) {
        err << "latnet: numeric error: " << e.what() << '\n';
        code = kNumeric;
    } catch (const json::exception& e) {
        err << "latnet: data format error: " << e.what() << '\n';
        code = kDataFormat;
    } catch (const std::exception& e) {
        err << "latnet: error: " << e.what() << '\n';
        code = kFailure;
    }
    set_warning_handler(std::move(previous));
    return code;
}

}  // namespace latnet::cli
