#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bgsp/pipeline.hpp"
#include "bgsp/synth.hpp"

namespace bgsp {

using Json = nlohmann::ordered_json;

enum class GraphFormat { EdgeList, DenseCsv };

// Edge-list format: comment lines start with '#'; a `# n=<N>` header is
// required before the first edge, `# systems=<s0,s1,...>` and
// `# labels=<l0,l1,...>` are optional. Each data row is
// `i<TAB>j<TAB>weight` with 0-based indices, one undirected edge per line.
// Dense CSV: N rows of N comma-separated reals (symmetry validated), with the
// same optional comment headers.
BrainGraph load_graph(const std::string& path, GraphFormat format);
void save_graph(const std::string& path, const BrainGraph& g,
                GraphFormat format);

// Signals CSV: first line `# TR=<seconds>`, then N rows of T comma-separated
// reals, serialized with 17 significant digits so load(save(X)) round-trips
// exactly.
GraphSignalMatrix load_signals(const std::string& path);
void save_signals(const std::string& path, const GraphSignalMatrix& X);

// Reports: flat JSON with a schema_version field, written with a trailing
// newline; identical content yields byte-identical files.
inline constexpr int kReportSchemaVersion = 1;

Json excursion_report_json(const ExcursionReport& report);
Json correlation_report_json(const CorrelationResult& corr,
                             const Vec& concentrations);
Json null_correlation_report_json(const NullCorrelationResult& result);
Json band_profile_report_json(const Mat& cells, const std::vector<Band>& bands,
                              const std::vector<int>& system_ids);
Json slepian_report_json(const SlepianBasis& basis);
Json slepian_profile_report_json(const Vec& per_node_pct,
                                 const std::vector<int>& systems,
                                 double alpha, int n_surrogates);

void save_report(const std::string& path, const Json& report);
Json load_json(const std::string& path);

// Minimal JSON-schema subset validator (type/required/properties/items/enum,
// const and exclusiveMinimum/minimum); enough to check the shipped report
// schemas. Returns true when `doc` conforms, else false with a diagnostic.
bool validate_against_schema(const Json& doc, const Json& schema,
                             std::string* error = nullptr);

// Run configuration shared by the CLI subcommands; JSON file overridable via
// --config or the BGSP_CONFIG environment variable, individual flags override
// file values.
struct RunConfig {
  ShiftVariant shift_variant = ShiftVariant::Laplacian;
  int K = 10;
  double alpha = 0.05;
  int n_surrogates_excursion = 1000;
  int n_surrogates_null = 100;
  int slepian_m = 80;
  double slepian_eps = 0.5;
  int gate_size = 10;
  std::vector<Band> bands;
  Norm norm = Norm::L2;
  ThresholdPooling pooling = ThresholdPooling::PerNode;
  int jobs = 1;
};

RunConfig config_from_json(const Json& j, RunConfig base = {});

// The CLI entry point (the installed binary forwards argv here). Returns the
// process exit code: 0 success, 1 usage error, 2 data error, 3 numerical
// failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace bgsp
