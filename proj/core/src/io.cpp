#include "latnet/io.hpp"

#include "latnet/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace latnet::io {

namespace {

const json& require(const json& j, const char* field) {
    if (!j.is_object()) throw DataFormat("expected a JSON object", field);
    auto it = j.find(field);
    if (it == j.end()) throw DataFormat("missing field", field);
    return *it;
}

Index require_size(const json& j, const char* field) {
    const json& v = require(j, field);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw DataFormat("expected a nonnegative integer", field);
    return static_cast<Index>(v.get<long long>());
}

double require_number(const json& j, const char* field) {
    const json& v = require(j, field);
    if (!v.is_number()) throw DataFormat("expected a number", field);
    return v.get<double>();
}

std::vector<NodeId> labels_from_json(const json& j, Index expected, const char* field) {
    const json& arr = require(j, field);
    if (!arr.is_array() || static_cast<Index>(arr.size()) != expected)
        throw DataFormat("expected an array of " + std::to_string(expected) + " labels", field);
    std::vector<NodeId> out;
    for (const auto& v : arr) {
        if (!v.is_number_integer()) throw DataFormat("labels must be integers", field);
        out.push_back(NodeId{v.get<int>()});
    }
    return out;
}

json labels_to_json(const std::vector<NodeId>& labels) {
    json arr = json::array();
    for (const auto& l : labels) arr.push_back(l.value);
    return arr;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, sep)) parts.push_back(cur);
    if (!line.empty() && line.back() == sep) parts.emplace_back();
    return parts;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    std::size_t used = 0;
    try {
        out = std::stod(t, &used);
    } catch (const std::exception&) {
        return false;
    }
    return used == t.size();
}

}  // namespace

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, Index rows, Index cols, const std::string& field) {
    if (!j.is_array() || static_cast<Index>(j.size()) != rows)
        throw DataFormat("expected " + std::to_string(rows) + " rows", field);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw DataFormat("expected " + std::to_string(cols) + " columns",
                             field + "[" + std::to_string(i) + "]");
        for (Index c = 0; c < cols; ++c) {
            const json& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number() || !std::isfinite(v.get<double>()))
                throw DataFormat("expected a finite number",
                                 field + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
            m(i, c) = v.get<double>();
        }
    }
    return m;
}

json network_to_json(const PartitionedNetwork& net) {
    json j;
    j["n_m"] = net.n_manifest();
    j["n_l"] = net.n_latent();
    j["a11"] = matrix_to_json(net.a11());
    j["a12"] = matrix_to_json(net.a12());
    j["a21"] = matrix_to_json(net.a21());
    j["a22"] = matrix_to_json(net.a22());
    j["manifest_labels"] = labels_to_json(net.manifest_labels());
    j["latent_labels"] = labels_to_json(net.latent_labels());
    return j;
}

PartitionedNetwork network_from_json(const json& j) {
    const Index nm = require_size(j, "n_m");
    const Index nl = require_size(j, "n_l");
    try {
        return PartitionedNetwork(matrix_from_json(require(j, "a11"), nm, nm, "a11"),
                                  matrix_from_json(require(j, "a12"), nm, nl, "a12"),
                                  matrix_from_json(require(j, "a21"), nl, nm, "a21"),
                                  matrix_from_json(require(j, "a22"), nl, nl, "a22"),
                                  labels_from_json(j, nm, "manifest_labels"),
                                  labels_from_json(j, nl, "latent_labels"));
    } catch (const InvalidArgument& e) {
        throw DataFormat(e.what(), "network");
    }
}

json higher_order_to_json(const HigherOrderNetwork& hon) {
    json j;
    j["nu"] = hon.order();
    json coeffs = json::array();
    for (const auto& c : hon.coeffs) coeffs.push_back(matrix_to_json(c));
    j["coeffs"] = std::move(coeffs);
    j["n_m"] = hon.manifest_count;
    return j;
}

HigherOrderNetwork higher_order_from_json(const json& j) {
    const Index nu = require_size(j, "nu");
    const json& coeffs = require(j, "coeffs");
    if (!coeffs.is_array() || static_cast<Index>(coeffs.size()) != nu || nu < 1)
        throw DataFormat("expected nu coefficient matrices", "coeffs");
    const Index n = coeffs[0].is_array() ? static_cast<Index>(coeffs[0].size()) : 0;
    HigherOrderNetwork hon;
    hon.manifest_count = require_size(j, "n_m");
    for (Index i = 0; i < nu; ++i)
        hon.coeffs.push_back(matrix_from_json(coeffs[static_cast<std::size_t>(i)], n, n,
                                              "coeffs[" + std::to_string(i) + "]"));
    try {
        hon.validate();
    } catch (const InvalidArgument& e) {
        throw DataFormat(e.what(), "higher-order network");
    }
    return hon;
}

json ar_model_to_json(const ARModel& model) {
    json j;
    j["n_m"] = model.n_manifest();
    j["tau"] = model.order();
    json mats = json::array();
    for (const auto& m : model.mats) mats.push_back(matrix_to_json(m));
    j["mats"] = std::move(mats);
    j["provenance"] = std::string(to_string(model.provenance));
    if (model.reg) j["reg"] = {{"gamma", model.reg->gamma}, {"rho0", model.reg->rho0}};
    if (!model.notes.empty()) j["notes"] = model.notes;
    return j;
}

ARModel ar_model_from_json(const json& j) {
    const Index nm = require_size(j, "n_m");
    const Index tau = require_size(j, "tau");
    const json& mats = require(j, "mats");
    if (!mats.is_array() || static_cast<Index>(mats.size()) != tau || tau < 1)
        throw DataFormat("expected tau coefficient matrices", "mats");
    ARModel model;
    for (Index i = 0; i < tau; ++i)
        model.mats.push_back(matrix_from_json(mats[static_cast<std::size_t>(i)], nm, nm,
                                              "mats[" + std::to_string(i) + "]"));
    const json& prov = require(j, "provenance");
    if (!prov.is_string()) throw DataFormat("expected a string", "provenance");
    try {
        model.provenance = provenance_from_string(prov.get<std::string>());
    } catch (const InvalidArgument& e) {
        throw DataFormat(e.what(), "provenance");
    }
    if (auto it = j.find("reg"); it != j.end()) {
        RegularizationConfig reg{require_number(*it, "gamma"), require_number(*it, "rho0")};
        try {
            reg.validate();
        } catch (const InvalidArgument& e) {
            throw DataFormat(e.what(), "reg");
        }
        model.reg = reg;
    }
    if (auto it = j.find("notes"); it != j.end() && it->is_array())
        for (const auto& n : *it)
            if (n.is_string()) model.notes.push_back(n.get<std::string>());
    try {
        model.validate();
    } catch (const InvalidArgument& e) {
        throw DataFormat(e.what(), "AR model");
    }
    return model;
}

json stability_to_json(const StabilityReport& r) {
    return {{"rho_full", r.rho_full},
            {"rho_latent", r.rho_latent},
            {"stable", r.stable},
            {"latent_stable", r.latent_stable}};
}

json fit_report_to_json(const FitReport& r) {
    json j;
    j["tau"] = r.tau;
    j["n_samples"] = r.n_samples;
    j["condition_estimate"] =
        std::isfinite(r.condition_estimate) ? json(r.condition_estimate) : json("inf");
    j["residual_energy"] = r.residual_energy;
    j["objective"] = r.objective;
    j["objective_kind"] = r.reg ? "residual_energy+exponential_penalty" : "residual_energy";
    j["block_norms"] = r.block_norms;
    j["min_norm_branch"] = r.min_norm_branch;
    if (r.reg) j["reg"] = {{"gamma", r.reg->gamma}, {"rho0", r.reg->rho0}};
    j["warnings"] = r.warnings;
    return j;
}

json graph_to_json(const ManifestGraph& g) {
    json j;
    j["n_m"] = g.n_m;
    j["labels"] = labels_to_json(g.labels);
    j["threshold"] = g.threshold_used;
    j["direct_threshold"] = g.direct_threshold;
    j["orders_exact"] = g.orders_exact;
    json direct = json::array();
    json indirect = json::array();
    for (Index q = 0; q < g.n_m; ++q) {
        for (Index p = 0; p < g.n_m; ++p) {
            if (g.has_direct(q, p))
                direct.push_back({{"src", g.labels[p].value},
                                  {"dst", g.labels[q].value},
                                  {"weight", g.direct(q, p)}});
            const auto& orders = g.orders(q, p);
            if (!orders.empty())
                indirect.push_back({{"src", g.labels[p].value},
                                    {"dst", g.labels[q].value},
                                    {"orders", orders},
                                    {"min_order", orders.front()}});
        }
    }
    j["direct"] = std::move(direct);
    j["indirect"] = std::move(indirect);
    return j;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_graph_edges_csv(std::ostream& out, const ManifestGraph& g) {
    out << "src,dst,kind,weight_or_order\n";
    for (Index q = 0; q < g.n_m; ++q) {
        for (Index p = 0; p < g.n_m; ++p) {
            if (g.has_direct(q, p))
                out << g.labels[p].value << ',' << g.labels[q].value << ",direct,"
                    << format_double(g.direct(q, p)) << '\n';
            if (auto order = g.min_order(q, p))
                out << g.labels[p].value << ',' << g.labels[q].value << ",indirect," << *order
                    << '\n';
        }
    }
}

void write_timeseries_csv(std::ostream& out, const TimeSeriesData& data) {
    data.validate();
    const Index nm = data.n_manifest();
    out << "# latnet timeseries";
    if (data.rng_algorithm) out << " rng=" << *data.rng_algorithm;
    if (data.seed) out << " seed=" << *data.seed;
    if (data.dt_label) out << " dt=" << *data.dt_label;
    out << '\n';
    out << 't';
    for (Index i = 1; i <= nm; ++i) out << ",y" << i;
    if (data.inputs)
        for (Index i = 1; i <= nm; ++i) out << ",u" << i;
    out << '\n';
    for (Index k = 0; k < data.length(); ++k) {
        out << (k + 1);
        for (Index i = 0; i < nm; ++i) out << ',' << format_double(data.outputs(i, k));
        if (data.inputs)
            for (Index i = 0; i < nm; ++i) out << ',' << format_double((*data.inputs)(i, k));
        out << '\n';
    }
}

TimeSeriesData read_timeseries_csv(std::istream& in) {
    TimeSeriesData data;
    std::string line;
    std::size_t line_no = 0;
    std::vector<int> output_cols, input_cols;
    bool have_layout = false;
    std::size_t width = 0;
    std::vector<std::vector<double>> outputs, inputs;

    auto parse_meta = [&](const std::string& comment) {
        std::istringstream ss(comment);
        std::string tok;
        while (ss >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
            if (key == "rng") data.rng_algorithm = value;
            if (key == "dt") data.dt_label = value;
            if (key == "seed") {
                try {
                    data.seed = std::stoull(value);
                } catch (const std::exception&) {
                    throw DataFormat("bad seed", "line " + std::to_string(line_no));
                }
            }
        }
    };

    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            parse_meta(t.substr(1));
            continue;
        }
        const auto cells = split(t, ',');
        if (!have_layout) {
            have_layout = true;
            width = cells.size();
            double probe;
            const bool numeric_row = parse_double(cells[0], probe);
            if (!numeric_row) {
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    const std::string name = trim(cells[c]);
                    if (c == 0 && name == "t") continue;
                    if (name.size() > 1 && name[0] == 'u' &&
                        name.find_first_not_of("0123456789", 1) == std::string::npos)
                        input_cols.push_back(static_cast<int>(c));
                    else
                        output_cols.push_back(static_cast<int>(c));
                }
                if (output_cols.empty())
                    throw DataFormat("no output columns in header", "line " + std::to_string(line_no));
                if (!input_cols.empty() && input_cols.size() != output_cols.size())
                    throw DataFormat("input and output column counts differ",
                                     "line " + std::to_string(line_no));
                continue;
            }
            for (std::size_t c = 0; c < cells.size(); ++c) output_cols.push_back(static_cast<int>(c));
        }
        if (cells.size() != width)
            throw DataFormat("expected " + std::to_string(width) + " fields",
                             "line " + std::to_string(line_no));
        std::vector<double> y, u;
        for (int c : output_cols) {
            double v;
            if (!parse_double(cells[c], v) || !std::isfinite(v))
                throw DataFormat("bad number '" + cells[c] + "'",
                                 "line " + std::to_string(line_no) + ", field " + std::to_string(c + 1));
            y.push_back(v);
        }
        for (int c : input_cols) {
            double v;
            if (!parse_double(cells[c], v) || !std::isfinite(v))
                throw DataFormat("bad number '" + cells[c] + "'",
                                 "line " + std::to_string(line_no) + ", field " + std::to_string(c + 1));
            u.push_back(v);
        }
        outputs.push_back(std::move(y));
        if (!input_cols.empty()) inputs.push_back(std::move(u));
    }
    if (outputs.empty()) throw DataFormat("no samples", "line " + std::to_string(line_no));

    const Index nm = static_cast<Index>(output_cols.size());
    const Index n = static_cast<Index>(outputs.size());
    data.outputs.resize(nm, n);
    for (Index k = 0; k < n; ++k)
        for (Index i = 0; i < nm; ++i) data.outputs(i, k) = outputs[k][i];
    if (!input_cols.empty()) {
        Matrix u(nm, n);
        for (Index k = 0; k < n; ++k)
            for (Index i = 0; i < nm; ++i) u(i, k) = inputs[k][i];
        data.inputs = std::move(u);
    }
    return data;
}

void write_bound_table_csv(std::ostream& out, const std::vector<BoundTableRow>& rows) {
    out << "tau,optimal_error,gamma,bound\n";
    for (const auto& r : rows)
        out << r.tau << ',' << format_double(r.optimal_error) << ',' << format_double(r.gamma)
            << ',' << format_double(r.bound) << '\n';
}

void write_error_surface_csv(std::ostream& out, const std::vector<ErrorSurfaceRow>& rows) {
    out << "N,tau,seed,hinf_error,coeff_error,error\n";
    for (const auto& r : rows) {
        out << r.length << ',' << r.tau << ',' << r.seed << ',';
        if (r.error.empty()) {
            out << format_double(r.hinf_error) << ',' << format_double(r.coeff_error) << ",\n";
        } else {
            std::string msg = r.error;
            for (char& c : msg)
                if (c == ',' || c == '\n' || c == '"') c = ' ';
            out << ",," << msg << '\n';
        }
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataFormat("cannot open file", path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file " + path.string());
    out << contents;
    if (!out) throw Error("failed writing file " + path.string());
}

json read_json_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataFormat(std::string("invalid JSON: ") + e.what(),
                         path.string() + " byte " + std::to_string(e.byte));
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace latnet::io
