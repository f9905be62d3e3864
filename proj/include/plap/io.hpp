#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "plap/cheeger.hpp"
#include "plap/continuation.hpp"
#include "plap/graph.hpp"
#include "plap/one_laplacian.hpp"
#include "plap/spectral.hpp"

namespace plap::io {

using nlohmann::json;

/// Parses JSON text; syntax errors become invalid_argument errors naming `source`, line and column.
json parse_json_text(std::string_view text, const std::string& source);
json read_json_file(const std::filesystem::path& path);

/// Graph file: {"vertices": [{"id", "mu"}], "edges": [{"u", "v", "w"}], "omega": [ids]}.
Domain parse_problem(const json& doc);
Domain load_problem(const std::filesystem::path& path);
json problem_to_json(const Domain& d);

/// Function file: {"values": {id: number}} with ids in Omega (missing ids read as 0), or any
/// object holding such a function under "u" (as written by the eigen command).
DirichletFunction parse_function(const Domain& d, const json& doc);
DirichletFunction load_function(const Domain& d, const std::filesystem::path& path);

json to_json(const Domain& d, const DirichletFunction& u);
json to_json(const Domain& d, const VertexSet& s);
json to_json(const Domain& d, const CheegerReport& report);
json to_json(const Domain& d, const Eigenpair& pair);
json to_json(const Domain& d, const Decomposition& dec);
json to_json(const Domain& d, const StructureReport& report);
json to_json(const Lambda11Check& check);
json to_json(const Domain& d, const SweepReport& report);

/// Rows (p, lambda, residual, u at each Omega vertex) with a header, numbers as %.17g.
std::string sweep_csv(const Domain& d, const SweepReport& report);

/// %.17g formatting.
std::string format_number(double x);

}  // namespace plap::io
