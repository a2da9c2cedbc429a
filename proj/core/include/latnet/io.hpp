#pragma once

#include "latnet/ar_model.hpp"
#include "latnet/connectivity.hpp"
#include "latnet/experiment.hpp"
#include "latnet/lsar.hpp"
#include "latnet/netgen.hpp"
#include "latnet/simulate.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace latnet::io {

using nlohmann::json;

// Matrices are row-major nested arrays of finite doubles.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, Index rows, Index cols, const std::string& field);

/// {n_m, n_l, a11, a12, a21, a22, manifest_labels, latent_labels}
json network_to_json(const PartitionedNetwork& net);
PartitionedNetwork network_from_json(const json& j);

/// {nu, coeffs, n_m}
json higher_order_to_json(const HigherOrderNetwork& hon);
HigherOrderNetwork higher_order_from_json(const json& j);

/// {n_m, tau, mats, provenance[, reg: {gamma, rho0}][, notes]}
json ar_model_to_json(const ARModel& model);
ARModel ar_model_from_json(const json& j);

json stability_to_json(const StabilityReport& r);
json fit_report_to_json(const FitReport& r);

/// {n_m, labels, threshold, direct_threshold, orders_exact, direct: [...], indirect: [...]}
json graph_to_json(const ManifestGraph& g);

/// `src,dst,kind,weight_or_order` with kind in {direct, indirect}; indirect
/// rows carry the minimal lag order.
void write_graph_edges_csv(std::ostream& out, const ManifestGraph& g);

/// Header `t,y1..y{n_m}[,u1..u{n_m}]`, one row per sample k = 1..N. Row k
/// holds y(k) and, when present, the input u(k-1) that produced it. A leading
/// `#` comment records the seed and random-stream identity.
void write_timeseries_csv(std::ostream& out, const TimeSeriesData& data);

/// Accepts files written by write_timeseries_csv as well as plain recordings:
/// `#` lines are skipped, a `t` column is ignored, `u<k>` columns are inputs,
/// every other column is an output channel. A header row is optional.
TimeSeriesData read_timeseries_csv(std::istream& in);

void write_bound_table_csv(std::ostream& out, const std::vector<BoundTableRow>& rows);
void write_error_surface_csv(std::ostream& out, const std::vector<ErrorSurfaceRow>& rows);

/// Fixed-format double: full precision, scientific notation.
std::string format_double(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& contents);

/// Parses a JSON document; syntax errors become DataFormat errors naming the file.
json read_json_file(const std::filesystem::path& path);

/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

}  // namespace latnet::io
