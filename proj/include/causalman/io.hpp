#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "causalman/line_builder.hpp"
#include "causalman/projection.hpp"
#include "causalman/sampling.hpp"
#include "causalman/scm.hpp"

namespace causalman::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

// Mechanisms refer to parents by name and table keys by value label, so the
// document survives reordering of nodes. Malformed documents throw
// ConfigError.
Json graph_to_json(const ScmGraph& graph);
ScmGraph graph_from_json(const Json& doc);

Json distribution_to_json(const Distribution& d);
Distribution distribution_from_json(const Json& doc);

Json config_to_json(const LineConfig& config);
LineConfig config_from_json(const Json& doc);

// {"batches": [{"batch_id", "n_samples", "parametrization": {node: value},
//               "interventions": [{"node", "value"} | {"node", "mechanism"}]}]}
Json schedule_to_json(const ScmGraph& graph, const std::vector<BatchConfig>& schedule);
std::vector<BatchConfig> schedule_from_json(const ScmGraph& graph, const Json& doc);

// FNV-1a 64 as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);
// Hash of the canonical graph JSON.
std::string fingerprint(const ScmGraph& graph);
std::string schedule_digest(const ScmGraph& graph, const std::vector<BatchConfig>& schedule);

// Header row of column names then batch_id; booleans as true/false,
// categoricals as labels, reals with 17 significant digits.
void write_csv(std::ostream& out, const Dataset& dataset);
// Columns are matched by name against `graph`; the last column must be
// batch_id.
Dataset read_csv(std::istream& in, const ScmGraph& graph);

// "continuous:N", "boolean", "discrete:4", "categorical:908|921|933".
std::string domain_token(const Domain& d);
Domain parse_domain_token(std::string_view token);

// `node <name> <domain> <visibility>` lines followed by `edge a -> b`.
std::string graph_text(const ScmGraph& graph);
// Same format for a projection, with `edge a <-> b` for bidirected pairs.
std::string admg_text(const Admg& admg, const ScmGraph& source);

struct EdgeList {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> directed;
  std::vector<std::pair<std::string, std::string>> bidirected;
};
EdgeList parse_edge_list(std::istream& in);

struct Manifest {
  std::string command;
  std::string graph_name;
  std::string graph_fingerprint;
  std::uint64_t seed = 0;
  std::string schedule_digest;
  std::size_t rows = 0;
  std::size_t columns = 0;
  bool observable_only = false;
  std::vector<BatchRecord> batches;  // only interventional batches are listed
  std::string timestamp;             // ISO 8601, UTC
};
Json manifest_to_json(const Manifest& m);
std::string utc_timestamp();

// Throw IoError when the file cannot be read or written.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
Json read_json_file(const std::string& path);

// A preset name ("small", "medium") or a path to a graph or line-config JSON
// document. Unreadable paths throw IoError.
ScmGraph load_graph(const std::string& spec);

}  // namespace causalman::io
