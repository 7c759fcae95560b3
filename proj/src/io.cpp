#include "bgsp/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bgsp/errors.hpp"

namespace bgsp {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& tok, int line_no) {
  const std::string t = trim(tok);
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw_error(Errc::ParseError,
                "line " + std::to_string(line_no) + ": bad number '" + t + "'");
  }
  if (pos != t.size())
    throw_error(Errc::ParseError,
                "line " + std::to_string(line_no) + ": bad number '" + t + "'");
  return v;
}

int parse_int(const std::string& tok, int line_no) {
  const double v = parse_double(tok, line_no);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw_error(Errc::ParseError, "line " + std::to_string(line_no) +
                ": expected integer, got '" + trim(tok) + "'");
  return i;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw_error(Errc::ParseError, "cannot open '" + path + "'");
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw_error(Errc::ParseError, "cannot write '" + path + "'");
  return f;
}

struct GraphHeaders {
  int n = -1;
  std::vector<int> systems;
  std::vector<std::string> labels;
};

// Parse a '#' comment line; recognized headers fill `h`, others are ignored.
void parse_comment(const std::string& line, int line_no, GraphHeaders& h) {
  const std::string body = trim(line.substr(1));
  if (body.rfind("n=", 0) == 0) {
    h.n = parse_int(body.substr(2), line_no);
  } else if (body.rfind("systems=", 0) == 0) {
    h.systems.clear();
    for (const std::string& tok : split(body.substr(8), ','))
      h.systems.push_back(parse_int(tok, line_no));
  } else if (body.rfind("labels=", 0) == 0) {
    h.labels.clear();
    for (const std::string& tok : split(body.substr(7), ','))
      h.labels.push_back(trim(tok));
  }
}

void warn_if_isolated(const BrainGraph& g) {
  const Vec d = degrees(g);
  for (int i = 0; i < g.n; ++i)
    if (d(i) == 0.0) {
      std::cerr << "warning: graph has isolated nodes (first: node " << i
                << ")\n";
      return;
    }
}

BrainGraph load_edge_list(const std::string& path) {
  std::ifstream f = open_in(path);
  GraphHeaders h;
  std::vector<Edge> edges;
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      parse_comment(t, line_no, h);
      continue;
    }
    if (h.n < 0)
      throw_error(Errc::ParseError, "line " + std::to_string(line_no) +
                  ": edge before the '# n=<N>' header");
    std::istringstream row(t);
    Edge e{};
    std::string wtok;
    if (!(row >> e.i >> e.j >> wtok))
      throw_error(Errc::ParseError, "line " + std::to_string(line_no) +
                  ": expected 'i<TAB>j<TAB>weight'");
    std::string extra;
    if (row >> extra)
      throw_error(Errc::ParseError, "line " + std::to_string(line_no) +
                  ": trailing token '" + extra + "'");
    e.w = parse_double(wtok, line_no);
    edges.push_back(e);
  }
  if (h.n < 0)
    throw_error(Errc::ParseError, "missing '# n=<N>' header in '" + path + "'");
  if (!h.systems.empty() && static_cast<int>(h.systems.size()) != h.n)
    throw_error(Errc::ParseError, "systems header lists " +
                std::to_string(h.systems.size()) + " entries for n=" +
                std::to_string(h.n));
  if (!h.labels.empty() && static_cast<int>(h.labels.size()) != h.n)
    throw_error(Errc::ParseError, "labels header lists " +
                std::to_string(h.labels.size()) + " entries for n=" +
                std::to_string(h.n));
  BrainGraph g = build_graph(edges, h.n, h.labels, h.systems);
  warn_if_isolated(g);
  return g;
}

BrainGraph load_dense_csv(const std::string& path) {
  std::ifstream f = open_in(path);
  GraphHeaders h;
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      parse_comment(t, line_no, h);
      continue;
    }
    std::vector<double> row;
    for (const std::string& tok : split(t, ','))
      row.push_back(parse_double(tok, line_no));
    if (!rows.empty() && row.size() != rows.front().size())
      throw_error(Errc::ParseError, "line " + std::to_string(line_no) +
                  ": row has " + std::to_string(row.size()) +
                  " columns, expected " + std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw_error(Errc::ParseError, "no data in '" + path + "'");
  const int n = static_cast<int>(rows.size());
  if (static_cast<int>(rows.front().size()) != n)
    throw_error(Errc::ParseError, "matrix in '" + path + "' is " +
                std::to_string(n) + "x" + std::to_string(rows.front().size()) +
                ", expected square");
  Mat W(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) W(i, j) = rows[i][j];
  BrainGraph g = graph_from_dense(W, h.labels, h.systems);
  warn_if_isolated(g);
  return g;
}

void write_optional_headers(std::ofstream& f, const BrainGraph& g) {
  if (g.has_systems()) {
    f << "# systems=";
    for (int i = 0; i < g.n; ++i) f << (i ? "," : "") << g.systems[i];
    f << "\n";
  }
  if (!g.labels.empty()) {
    f << "# labels=";
    for (int i = 0; i < g.n; ++i) f << (i ? "," : "") << g.labels[i];
    f << "\n";
  }
}

std::vector<double> to_std(const Vec& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Json system_map_json(const std::map<int, double>& m) {
  Json out = Json::object();
  for (const auto& [id, val] : m) out[std::to_string(id)] = val;
  return out;
}

}  // namespace

BrainGraph load_graph(const std::string& path, GraphFormat format) {
  return format == GraphFormat::EdgeList ? load_edge_list(path)
                                         : load_dense_csv(path);
}

void save_graph(const std::string& path, const BrainGraph& g,
                GraphFormat format) {
  std::ofstream f = open_out(path);
  if (format == GraphFormat::EdgeList) {
    f << "# brain graph edge list; 0-based node indices\n";
    f << "# n=" << g.n << "\n";
    write_optional_headers(f, g);
    for (int i = 0; i < g.n; ++i)
      for (int j = i + 1; j < g.n; ++j)
        if (g.W(i, j) != 0.0)
          f << i << "\t" << j << "\t" << fmt17(g.W(i, j)) << "\n";
  } else {
    f << "# dense adjacency matrix; 0-based node indices\n";
    write_optional_headers(f, g);
    for (int i = 0; i < g.n; ++i) {
      for (int j = 0; j < g.n; ++j) f << (j ? "," : "") << fmt17(g.W(i, j));
      f << "\n";
    }
  }
}

GraphSignalMatrix load_signals(const std::string& path) {
  std::ifstream f = open_in(path);
  std::string line;
  if (!std::getline(f, line) || trim(line).rfind("# TR=", 0) != 0)
    throw_error(Errc::MissingTRHeader,
                "first line of '" + path + "' must be '# TR=<seconds>'");
  GraphSignalMatrix out;
  out.tr = parse_double(trim(line).substr(5), 1);
  if (!(out.tr > 0.0))
    throw_error(Errc::ParseError, "TR must be positive, got " +
                fmt17(out.tr));
  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<double> row;
    for (const std::string& tok : split(t, ','))
      row.push_back(parse_double(tok, line_no));
    if (!rows.empty() && row.size() != rows.front().size())
      throw_error(Errc::RaggedRows, "row " + std::to_string(rows.size()) +
                  " has " + std::to_string(row.size()) +
                  " columns, expected " + std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw_error(Errc::ParseError, "no signal rows in '" + path + "'");
  out.values = Mat(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j)
      out.values(i, j) = rows[i][j];
  return out;
}

void save_signals(const std::string& path, const GraphSignalMatrix& X) {
  std::ofstream f = open_out(path);
  f << "# TR=" << fmt17(X.tr) << "\n";
  f << "# rows=nodes (0-based), cols=time points\n";
  for (int i = 0; i < X.n(); ++i) {
    for (int t = 0; t < X.t(); ++t)
      f << (t ? "," : "") << fmt17(X.values(i, t));
    f << "\n";
  }
}

Json excursion_report_json(const ExcursionReport& report) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "excursion";
  j["component"] = component_name(report.component);
  j["alpha"] = report.alpha;
  j["n_surrogates"] = report.n_surrogates;
  j["per_node_pct"] = to_std(report.per_node_pct);
  if (report.thresholds.size() > 0)
    j["thresholds"] = to_std(report.thresholds);
  if (!report.per_system_pct.empty())
    j["per_system_pct"] = system_map_json(report.per_system_pct);
  return j;
}

Json correlation_report_json(const CorrelationResult& corr,
                             const Vec& concentrations) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "correlation";
  j["rho"] = corr.rho;
  j["p_value"] = corr.p_value;
  j["n"] = corr.n;
  j["covariates"] = corr.covariate_names;
  j["concentrations"] = to_std(concentrations);
  return j;
}

Json null_correlation_report_json(const NullCorrelationResult& result) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "correlation-null";
  j["rho"] = result.real.corr.rho;
  j["p_value"] = result.real.corr.p_value;
  j["n"] = result.real.corr.n;
  j["covariates"] = result.real.corr.covariate_names;
  j["p_perm"] = result.p_perm;
  j["n_null"] = static_cast<int>(result.null_rhos.size());
  std::vector<double> sorted = to_std(result.null_rhos);
  std::sort(sorted.begin(), sorted.end());
  auto quant = [&](double q) {
    const double x = q * (sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(x);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (x - lo) * (sorted[hi] - sorted[lo]);
  };
  // box-plot data for the null distribution
  j["null_rho_quantiles"] = Json{{"min", sorted.front()},
                                 {"q25", quant(0.25)},
                                 {"median", quant(0.5)},
                                 {"q75", quant(0.75)},
                                 {"max", sorted.back()}};
  j["null_rhos"] = to_std(result.null_rhos);
  return j;
}

Json band_profile_report_json(const Mat& cells, const std::vector<Band>& bands,
                              const std::vector<int>& system_ids) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "band-profile";
  Json bj = Json::array();
  for (const Band& b : bands) bj.push_back(Json{{"f_lo", b.f_lo}, {"f_hi", b.f_hi}});
  j["bands"] = bj;
  j["systems"] = system_ids;
  Json rows = Json::array();
  for (int s = 0; s < cells.rows(); ++s) {
    Json row = Json::array();
    for (int b = 0; b < cells.cols(); ++b) row.push_back(cells(s, b));
    rows.push_back(row);
  }
  j["cells"] = rows;
  return j;
}

Json slepian_report_json(const SlepianBasis& basis) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "slepian";
  j["criterion"] = slepian_criterion_name(basis.criterion);
  j["n"] = basis.n();
  j["bandwidth"] = basis.bandwidth;
  std::vector<int> selected;
  for (int i = 0; i < basis.selector.n(); ++i)
    if (basis.selector.mask(i) != 0.0) selected.push_back(i);
  j["selected_nodes"] = selected;
  j["concentration"] = to_std(basis.concentration);
  if (basis.localized_freq)
    j["localized_freq"] = to_std(*basis.localized_freq);
  j["embedded_distance"] = to_std(basis.embedded_distance);
  Json vecs = Json::array();
  for (int i = 0; i < basis.vectors.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < basis.vectors.cols(); ++k)
      row.push_back(basis.vectors(i, k));
    vecs.push_back(row);
  }
  j["vectors"] = vecs;
  return j;
}

Json slepian_profile_report_json(const Vec& per_node_pct,
                                 const std::vector<int>& systems,
                                 double alpha, int n_surrogates) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "slepian-profile";
  j["alpha"] = alpha;
  j["n_surrogates"] = n_surrogates;
  j["per_node_pct"] = to_std(per_node_pct);
  j["per_system_pct"] = system_map_json(system_aggregate(per_node_pct, systems));
  return j;
}

void save_report(const std::string& path, const Json& report) {
  std::ofstream f = open_out(path);
  f << report.dump(2) << "\n";
}

Json load_json(const std::string& path) {
  std::ifstream f = open_in(path);
  Json j = Json::parse(f, nullptr, false);
  if (j.is_discarded())
    throw_error(Errc::ParseError, "invalid JSON in '" + path + "'");
  return j;
}

namespace {

bool type_matches(const Json& doc, const std::string& type) {
  if (type == "object") return doc.is_object();
  if (type == "array") return doc.is_array();
  if (type == "string") return doc.is_string();
  if (type == "number") return doc.is_number();
  if (type == "integer") return doc.is_number_integer();
  if (type == "boolean") return doc.is_boolean();
  if (type == "null") return doc.is_null();
  return false;
}

bool validate_node(const Json& doc, const Json& schema, const std::string& at,
                   std::string* error) {
  auto fail = [&](const std::string& why) {
    if (error) *error = at + ": " + why;
    return false;
  };
  if (schema.contains("type") &&
      !type_matches(doc, schema["type"].get<std::string>()))
    return fail("expected type " + schema["type"].get<std::string>());
  if (schema.contains("const") && doc != schema["const"])
    return fail("value differs from const");
  if (schema.contains("enum")) {
    bool any = false;
    for (const Json& v : schema["enum"])
      if (doc == v) { any = true; break; }
    if (!any) return fail("value not in enum");
  }
  if (doc.is_number()) {
    const double v = doc.get<double>();
    if (schema.contains("minimum") && v < schema["minimum"].get<double>())
      return fail("below minimum");
    if (schema.contains("exclusiveMinimum") &&
        v <= schema["exclusiveMinimum"].get<double>())
      return fail("not above exclusiveMinimum");
  }
  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const Json& key : schema["required"])
        if (!doc.contains(key.get<std::string>()))
          return fail("missing required key '" + key.get<std::string>() + "'");
    if (schema.contains("properties"))
      for (auto it = schema["properties"].begin();
           it != schema["properties"].end(); ++it)
        if (doc.contains(it.key()) &&
            !validate_node(doc[it.key()], it.value(), at + "." + it.key(),
                           error))
          return false;
  }
  if (doc.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < doc.size(); ++i)
      if (!validate_node(doc[i], schema["items"],
                         at + "[" + std::to_string(i) + "]", error))
        return false;
  }
  return true;
}

}  // namespace

bool validate_against_schema(const Json& doc, const Json& schema,
                             std::string* error) {
  return validate_node(doc, schema, "$", error);
}

namespace {

template <typename T>
T get_as(const Json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const std::exception&) {
    throw_error(Errc::InvalidParameter, "config key '" + key + "' has the wrong type");
  }
}

}  // namespace

RunConfig config_from_json(const Json& j, RunConfig base) {
  if (!j.is_object())
    throw_error(Errc::InvalidParameter, "config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "shift_variant")
      base.shift_variant = shift_variant_from_name(get_as<std::string>(j, key));
    else if (key == "K")
      base.K = get_as<int>(j, key);
    else if (key == "alpha")
      base.alpha = get_as<double>(j, key);
    else if (key == "n_surrogates_excursion")
      base.n_surrogates_excursion = get_as<int>(j, key);
    else if (key == "n_surrogates_null")
      base.n_surrogates_null = get_as<int>(j, key);
    else if (key == "slepian_m")
      base.slepian_m = get_as<int>(j, key);
    else if (key == "slepian_eps")
      base.slepian_eps = get_as<double>(j, key);
    else if (key == "gate_size")
      base.gate_size = get_as<int>(j, key);
    else if (key == "norm")
      base.norm = norm_from_name(get_as<std::string>(j, key));
    else if (key == "pooling")
      base.pooling = pooling_from_name(get_as<std::string>(j, key));
    else if (key == "jobs")
      base.jobs = get_as<int>(j, key);
    else if (key == "bands") {
      base.bands.clear();
      if (!it.value().is_array())
        throw_error(Errc::InvalidParameter,
                    "config key 'bands' must be an array of {f_lo, f_hi}");
      for (const Json& b : it.value()) {
        if (!b.is_object() || !b.contains("f_lo") || !b.contains("f_hi"))
          throw_error(Errc::InvalidParameter,
                      "each band needs f_lo and f_hi");
        base.bands.push_back(
            {b["f_lo"].get<double>(), b["f_hi"].get<double>()});
      }
    } else {
      throw_error(Errc::InvalidParameter, "unknown config key '" + key + "'");
    }
  }
  return base;
}

}  // namespace bgsp
