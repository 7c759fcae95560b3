#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bgsp/errors.hpp"
#include "bgsp/io.hpp"

namespace bgsp {

namespace {

namespace fs = std::filesystem;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

GraphFormat graph_format_from_name(const std::string& name) {
  if (name == "edge-list") return GraphFormat::EdgeList;
  if (name == "dense-csv") return GraphFormat::DenseCsv;
  throw_error(Errc::InvalidParameter, "unknown graph format '" + name + "'");
}

Component component_from_name(const std::string& name) {
  if (name == "aligned") return Component::Aligned;
  if (name == "liberal") return Component::Liberal;
  throw_error(Errc::InvalidParameter,
              "component must be 'aligned' or 'liberal', got '" + name + "'");
}

RunConfig load_run_config(const std::string& path) {
  RunConfig cfg;
  if (!path.empty()) cfg = config_from_json(load_json(path), cfg);
  return cfg;
}

void save_dense_matrix(const std::string& path, const Mat& M,
                       const std::string& comment) {
  std::ofstream f(path);
  if (!f) throw_error(Errc::ParseError, "cannot write '" + path + "'");
  f << "# " << comment << "\n";
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) f << (j ? "," : "") << fmt17(M(i, j));
    f << "\n";
  }
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw_error(Errc::InvalidParameter, "bad integer '" + tok + "'");
    }
  }
  return out;
}

std::vector<Band> parse_bands(const std::string& s) {
  std::vector<Band> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw_error(Errc::InvalidParameter,
                  "bands must be 'lo:hi,lo:hi,...', got '" + tok + "'");
    try {
      out.push_back({std::stod(tok.substr(0, colon)),
                     std::stod(tok.substr(colon + 1))});
    } catch (const std::exception&) {
      throw_error(Errc::InvalidParameter, "bad band '" + tok + "'");
    }
  }
  return out;
}

std::vector<std::string> parse_name_list(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

std::vector<SubjectRecord> load_cohort(const std::string& manifest_path) {
  const Json m = load_json(manifest_path);
  if (!m.is_object() || !m.contains("subjects") || !m["subjects"].is_array())
    throw_error(Errc::ParseError,
                "manifest must be an object with a 'subjects' array");
  const fs::path base = fs::path(manifest_path).parent_path();
  auto resolve = [&](const std::string& p) {
    const fs::path q(p);
    return (q.is_absolute() ? q : base / q).string();
  };
  std::vector<SubjectRecord> cohort;
  for (const Json& subj : m["subjects"]) {
    if (!subj.is_object() || !subj.contains("graph") ||
        !subj.contains("signals"))
      throw_error(Errc::ParseError,
                  "each subject needs 'graph' and 'signals' paths");
    SubjectRecord rec;
    const GraphFormat fmt = graph_format_from_name(
        subj.value("format", std::string("edge-list")));
    rec.graph = load_graph(resolve(subj["graph"].get<std::string>()), fmt);
    rec.signals = load_signals(resolve(subj["signals"].get<std::string>()));
    if (rec.signals.n() != rec.graph.n)
      throw_error(Errc::DimensionMismatch,
                  "subject signals have " + std::to_string(rec.signals.n()) +
                  " rows for a graph with " + std::to_string(rec.graph.n) +
                  " nodes");
    if (subj.contains("behavior"))
      for (auto it = subj["behavior"].begin(); it != subj["behavior"].end();
           ++it)
        rec.behavior[it.key()] = it.value().get<double>();
    if (subj.contains("covariates"))
      for (auto it = subj["covariates"].begin(); it != subj["covariates"].end();
           ++it)
        rec.covariates[it.key()] = it.value().get<double>();
    cohort.push_back(std::move(rec));
  }
  return cohort;
}

struct LoadedInput {
  BrainGraph graph;
  SpectralBasis basis;
};

LoadedInput load_input(const std::string& graph_path,
                       const std::string& format, ShiftVariant variant) {
  LoadedInput in;
  in.graph = load_graph(graph_path, graph_format_from_name(format));
  in.basis = eigendecompose(shift_operator(in.graph, variant));
  return in;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"graph signal processing toolkit for brain-connectome data"};
  app.require_subcommand(1);

  // shared state filled by the parsed subcommand's options
  std::string config_path, graph_path, format = "edge-list", signals_path;
  std::string out_path, out2_path, variant_str, mode_str = "graph";
  std::string component_str = "liberal", criterion_str = "modified";
  std::string nodes_str, bands_str, norm_str, pooling_str;
  std::string cohort_path, behavior = "score", covariates_str;
  std::string null_mode_str, model_str = "block", signal_str = "white";
  std::string modes_str;
  std::uint64_t seed = 0;
  int k = 0, m_bandwidth = 0, gate_size = 0, n_sur = 0, n_null = 0, jobs = 0;
  int index = 0, system_id = -1, nodes_n = 0, blocks = 4, t_points = 0;
  int radius = 1, burst_node = 0, burst_t0 = 0, burst_t1 = 0;
  int band_lo = -1, band_hi = -1;
  double alpha = 0.0, tau = 0.0, eps = 0.0, tr = 1.0, sigma = 1.0;
  double p_in = 0.4, p_out = 0.08, w_lo = 0.5, w_hi = 1.5, burst_amp = 0.0;
  std::string kind_str = "low";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run-config file")
        ->envname("BGSP_CONFIG");
    sub->add_option("--shift", variant_str,
                    "shift variant: adjacency|laplacian|"
                    "sym-normalized-laplacian|rw-normalized-laplacian");
  };
  auto add_graph_input = [&](CLI::App* sub) {
    sub->add_option("--graph", graph_path, "graph file")->required();
    sub->add_option("--format", format, "graph format: edge-list|dense-csv");
  };

  // Resolve the effective config: file/env first, then explicit flags.
  auto passed = [](CLI::App* sub, const std::string& name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  auto effective = [&](CLI::App* sub) {
    RunConfig cfg = load_run_config(config_path);
    if (passed(sub, "--shift")) cfg.shift_variant = shift_variant_from_name(variant_str);
    if (passed(sub, "--k")) cfg.K = k;
    if (passed(sub, "--alpha")) cfg.alpha = alpha;
    if (passed(sub, "--n-surrogates")) cfg.n_surrogates_excursion = n_sur;
    if (passed(sub, "--n-null")) cfg.n_surrogates_null = n_null;
    if (passed(sub, "--m")) cfg.slepian_m = m_bandwidth;
    if (passed(sub, "--eps")) cfg.slepian_eps = eps;
    if (passed(sub, "--gate-size")) cfg.gate_size = gate_size;
    if (passed(sub, "--bands")) cfg.bands = parse_bands(bands_str);
    if (passed(sub, "--norm")) cfg.norm = norm_from_name(norm_str);
    if (passed(sub, "--pooling")) cfg.pooling = pooling_from_name(pooling_str);
    if (passed(sub, "--jobs")) cfg.jobs = jobs;
    return cfg;
  };

  int exit_code = 0;

  // ---- shift ----
  CLI::App* shift_cmd =
      app.add_subcommand("shift", "build a shift operator and write it as CSV");
  add_common(shift_cmd);
  add_graph_input(shift_cmd);
  shift_cmd->add_option("--out", out_path, "output CSV")->required();
  shift_cmd->callback([&] {
    const RunConfig cfg = effective(shift_cmd);
    const BrainGraph g =
        load_graph(graph_path, graph_format_from_name(format));
    const ShiftOperator s = shift_operator(g, cfg.shift_variant);
    save_dense_matrix(out_path, s.matrix,
                      std::string(shift_variant_name(cfg.shift_variant)) +
                      " shift operator; 0-based node indices");
    std::cout << "shift: " << shift_variant_name(cfg.shift_variant)
              << " operator for " << g.n << " nodes -> " << out_path << "\n";
  });

  // ---- gft ----
  CLI::App* gft_cmd = app.add_subcommand(
      "gft", "graph Fourier transform of a signal matrix");
  add_common(gft_cmd);
  add_graph_input(gft_cmd);
  gft_cmd->add_option("--signals", signals_path, "signals CSV")->required();
  gft_cmd->add_option("--out", out_path, "coefficient CSV")->required();
  gft_cmd->add_option("--eigenvalues-out", out2_path,
                      "optional rank,eigenvalue CSV");
  gft_cmd->callback([&] {
    const RunConfig cfg = effective(gft_cmd);
    const LoadedInput in = load_input(graph_path, format, cfg.shift_variant);
    const GraphSignalMatrix X = load_signals(signals_path);
    const Mat coeffs = gft(in.basis, X.values);
    Mat ranked(coeffs.rows(), coeffs.cols());
    for (int r = 0; r < in.basis.n(); ++r)
      ranked.row(r) = coeffs.row(in.basis.ordering[r]);
    std::ofstream f(out_path);
    if (!f) throw_error(Errc::ParseError, "cannot write '" + out_path + "'");
    f << "# TR=" << fmt17(X.tr) << "\n";
    f << "# GFT coefficients; rows=frequency ranks (0-based), cols=time\n";
    for (int r = 0; r < ranked.rows(); ++r) {
      for (int t = 0; t < ranked.cols(); ++t)
        f << (t ? "," : "") << fmt17(ranked(r, t));
      f << "\n";
    }
    if (!out2_path.empty()) {
      std::ofstream ef(out2_path);
      if (!ef)
        throw_error(Errc::ParseError, "cannot write '" + out2_path + "'");
      ef << "# rank,eigenvalue (" << shift_variant_name(cfg.shift_variant)
         << ")\n";
      for (int r = 0; r < in.basis.n(); ++r)
        ef << r << ","
           << fmt17(in.basis.eigenvalues(in.basis.ordering[r])) << "\n";
    }
    std::cout << "gft: " << in.graph.n << " nodes x " << X.t()
              << " time points -> " << out_path << "\n";
  });

  // ---- filter ----
  CLI::App* filter_cmd =
      app.add_subcommand("filter", "apply a spectral filter to signals");
  add_common(filter_cmd);
  add_graph_input(filter_cmd);
  filter_cmd->add_option("--signals", signals_path, "signals CSV")->required();
  filter_cmd->add_option("--kind", kind_str,
                         "filter kind: low|high|band|diffusion");
  filter_cmd->add_option("--k", k, "band size for low/high");
  filter_cmd->add_option("--lo", band_lo, "first frequency rank (band)");
  filter_cmd->add_option("--hi", band_hi, "last frequency rank (band)");
  filter_cmd->add_option("--tau", tau, "diffusion time");
  filter_cmd->add_option("--out", out_path, "filtered signals CSV")->required();
  filter_cmd->callback([&] {
    const RunConfig cfg = effective(filter_cmd);
    const LoadedInput in = load_input(graph_path, format, cfg.shift_variant);
    const GraphSignalMatrix X = load_signals(signals_path);
    SpectralFilter filt;
    if (kind_str == "low") {
      filt = make_ideal_low(in.basis, cfg.K);
    } else if (kind_str == "high") {
      filt = make_ideal_high(in.basis, cfg.K);
    } else if (kind_str == "band") {
      if (band_lo < 0 || band_hi < band_lo)
        throw_error(Errc::InvalidParameter,
                    "band filters need --lo and --hi with lo <= hi");
      std::vector<int> ranks;
      for (int r = band_lo; r <= band_hi; ++r) ranks.push_back(r);
      filt = make_ideal_band(in.basis, ranks);
    } else if (kind_str == "diffusion") {
      if (!filter_cmd->count("--tau"))
        throw_error(Errc::InvalidParameter, "diffusion filters need --tau");
      filt = diffusion_filter(in.basis, tau);
    } else {
      throw_error(Errc::InvalidParameter, "unknown filter kind '" + kind_str + "'");
    }
    GraphSignalMatrix Y;
    Y.values = apply_spectral_filter(in.basis, filt, X.values);
    Y.tr = X.tr;
    save_signals(out_path, Y);
    std::cout << "filter: kind=" << kind_str << " -> " << out_path << "\n";
  });

  // ---- surrogate ----
  CLI::App* sur_cmd = app.add_subcommand(
      "surrogate", "write one surrogate realization of a signal matrix");
  add_common(sur_cmd);
  add_graph_input(sur_cmd);
  sur_cmd->add_option("--signals", signals_path, "signals CSV")->required();
  sur_cmd->add_option("--mode", mode_str,
                      "null model: graph|temporal|combined");
  sur_cmd->add_option("--seed", seed, "RNG seed")->required();
  sur_cmd->add_option("--index", index, "realization index (default 0)");
  sur_cmd->add_option("--out", out_path, "surrogate signals CSV")->required();
  sur_cmd->callback([&] {
    const RunConfig cfg = effective(sur_cmd);
    if (index < 0)
      throw_error(Errc::InvalidParameter, "realization index must be >= 0");
    const LoadedInput in = load_input(graph_path, format, cfg.shift_variant);
    const GraphSignalMatrix X = load_signals(signals_path);
    SurrogateSpec spec;
    spec.mode = surrogate_mode_from_name(mode_str);
    spec.count = index + 1;
    spec.seed = seed;
    const SurrogateEnsemble ensemble(spec, in.basis, X.values);
    GraphSignalMatrix Y;
    Y.values = ensemble.realization(index);
    Y.tr = X.tr;
    save_signals(out_path, Y);
    std::cout << "surrogate: mode=" << mode_str << " seed=" << seed
              << " index=" << index << " -> " << out_path << "\n";
  });

  // ---- slepian ----
  CLI::App* slep_cmd = app.add_subcommand(
      "slepian", "build a localized Slepian basis and write a report");
  add_common(slep_cmd);
  add_graph_input(slep_cmd);
  slep_cmd->add_option("--nodes", nodes_str, "selector nodes, e.g. 0,3,7");
  slep_cmd->add_option("--system", system_id,
                       "select all nodes of this system id");
  slep_cmd->add_option("--m", m_bandwidth, "bandwidth (default from config)");
  slep_cmd->add_option("--criterion", criterion_str,
                       "energy|modified (default modified)");
  slep_cmd->add_option("--out", out_path, "report JSON")->required();
  slep_cmd->callback([&] {
    const RunConfig cfg = effective(slep_cmd);
    const LoadedInput in = load_input(graph_path, format, cfg.shift_variant);
    if (slep_cmd->count("--nodes") && slep_cmd->count("--system"))
      throw_error(Errc::InvalidParameter, "--nodes and --system are exclusive");
    NodeSelector sel;
    if (slep_cmd->count("--nodes")) {
      sel = selector_from_nodes(in.graph.n, parse_int_list(nodes_str));
    } else if (slep_cmd->count("--system")) {
      std::vector<int> members;
      for (int i = 0; i < in.graph.n; ++i)
        if (in.graph.has_systems() && in.graph.systems[i] == system_id)
          members.push_back(i);
      sel = selector_from_nodes(in.graph.n, members);
    } else {
      sel = selector_all(in.graph.n);
    }
    const int M = std::min(cfg.slepian_m, in.graph.n);
    const SlepianBasis basis = slepian_basis(
        in.basis, sel, M, slepian_criterion_from_name(criterion_str));
    save_report(out_path, slepian_report_json(basis));
    std::cout << "slepian: criterion=" << criterion_str << " M=" << M
              << " |selector|=" << sel.selected_count() << " -> " << out_path
              << "\n";
  });

  // ---- excursion ----
  CLI::App* exc_cmd = app.add_subcommand(
      "excursion", "surrogate-thresholded excursion report for one component");
  add_common(exc_cmd);
  add_graph_input(exc_cmd);
  exc_cmd->add_option("--signals", signals_path, "signals CSV")->required();
  exc_cmd->add_option("--component", component_str, "aligned|liberal");
  exc_cmd->add_option("--k", k, "split size");
  exc_cmd->add_option("--mode", mode_str, "null model: graph|temporal|combined");
  exc_cmd->add_option("--n-surrogates", n_sur, "surrogate count");
  exc_cmd->add_option("--alpha", alpha, "threshold level");
  exc_cmd->add_option("--pooling", pooling_str, "per-node|per-node-time");
  exc_cmd->add_option("--jobs", jobs, "worker threads");
  exc_cmd->add_option("--seed", seed, "RNG seed")->required();
  exc_cmd->add_option("--out", out_path, "report JSON")->required();
  exc_cmd->callback([&] {
    const RunConfig cfg = effective(exc_cmd);
    const LoadedInput in = load_input(graph_path, format, cfg.shift_variant);
    const GraphSignalMatrix X = load_signals(signals_path);
    const Component comp = component_from_name(component_str);
    const SpectralFilter filt = comp == Component::Aligned
                                    ? make_ideal_low(in.basis, cfg.K)
                                    : make_ideal_high(in.basis, cfg.K);
    SurrogateSpec spec;
    spec.mode = surrogate_mode_from_name(mode_str);
    spec.count = cfg.n_surrogates_excursion;
    spec.seed = seed;
    spec.filter = filt;
    const Mat Y = apply_spectral_filter(in.basis, filt, X.values);
    const ExcursionReport report =
        excursion_detect(Y, in.basis, X.values, spec, cfg.alpha, comp,
                         in.graph.systems, cfg.pooling, cfg.jobs);
    save_report(out_path, excursion_report_json(report));
    std::cout << "excursion: component=" << component_str << " mean_pct="
              << report.per_node_pct.mean() << " -> " << out_path << "\n";
  });

  // ---- correlate ----
  CLI::App* corr_cmd = app.add_subcommand(
      "correlate",
      "cohort concentration vs behavior partial correlation (optional null)");
  add_common(corr_cmd);
  corr_cmd->add_option("--cohort", cohort_path, "cohort manifest JSON")
      ->required();
  corr_cmd->add_option("--behavior", behavior, "behavior key (default score)");
  corr_cmd->add_option("--covariates", covariates_str,
                       "comma-separated covariate keys");
  corr_cmd->add_option("--component", component_str, "aligned|liberal");
  corr_cmd->add_option("--k", k, "split size");
  corr_cmd->add_option("--norm", norm_str, "l1|l2");
  corr_cmd->add_option("--null-mode", null_mode_str,
                       "run the correlation null test with this surrogate mode");
  corr_cmd->add_option("--n-null", n_null, "null draw count");
  corr_cmd->add_option("--jobs", jobs, "worker threads");
  corr_cmd->add_option("--seed", seed, "RNG seed (required with --null-mode)");
  corr_cmd->add_option("--out", out_path, "report JSON")->required();
  corr_cmd->callback([&] {
    const RunConfig cfg = effective(corr_cmd);
    const std::vector<SubjectRecord> cohort = load_cohort(cohort_path);
    const Component comp = component_from_name(component_str);
    const std::vector<std::string> covariates = parse_name_list(covariates_str);
    if (null_mode_str.empty()) {
      const CohortResult res = cohort_concentration_correlation(
          cohort, cfg.shift_variant, cfg.K, comp, cfg.norm, behavior,
          covariates);
      save_report(out_path,
                  correlation_report_json(res.corr, res.concentrations));
      std::cout << "correlate: n=" << res.corr.n << " rho=" << res.corr.rho
                << " p=" << res.corr.p_value << " -> " << out_path << "\n";
    } else {
      if (!corr_cmd->count("--seed"))
        throw_error(Errc::InvalidParameter, "--null-mode requires --seed");
      const NullCorrelationResult res = null_correlation_test(
          cohort, cfg.shift_variant, cfg.K, comp, cfg.norm, behavior,
          covariates, surrogate_mode_from_name(null_mode_str),
          cfg.n_surrogates_null, seed, cfg.jobs);
      save_report(out_path, null_correlation_report_json(res));
      std::cout << "correlate: n=" << res.real.corr.n
                << " rho=" << res.real.corr.rho << " p_perm=" << res.p_perm
                << " -> " << out_path << "\n";
    }
  });

  // ---- bands ----
  CLI::App* bands_cmd = app.add_subcommand(
      "bands", "per-system temporal-band excursion profile");
  add_common(bands_cmd);
  add_graph_input(bands_cmd);
  bands_cmd->add_option("--signals", signals_path, "signals CSV")->required();
  bands_cmd->add_option("--component", component_str, "aligned|liberal");
  bands_cmd->add_option("--k", k, "split size");
  bands_cmd->add_option("--bands", bands_str,
                        "temporal bands 'lo:hi,lo:hi,...' in Hz");
  bands_cmd->add_option("--mode", mode_str, "null model: graph|temporal|combined");
  bands_cmd->add_option("--n-surrogates", n_sur, "surrogate count");
  bands_cmd->add_option("--alpha", alpha, "threshold level");
  bands_cmd->add_option("--jobs", jobs, "worker threads");
  bands_cmd->add_option("--seed", seed, "RNG seed")->required();
  bands_cmd->add_option("--out", out_path, "report JSON")->required();
  bands_cmd->callback([&] {
    const RunConfig cfg = effective(bands_cmd);
    if (cfg.bands.empty())
      throw_error(Errc::InvalidParameter,
                  "no bands given (flag --bands or config)");
    const LoadedInput in = load_input(graph_path, format, cfg.shift_variant);
    const GraphSignalMatrix X = load_signals(signals_path);
    SurrogateSpec spec;
    spec.mode = surrogate_mode_from_name(mode_str);
    spec.count = cfg.n_surrogates_excursion;
    spec.seed = seed;
    const Mat cells = band_excursion_profile(
        X, in.basis, cfg.K, component_from_name(component_str), cfg.bands,
        in.graph.systems, spec, cfg.alpha, cfg.jobs);
    std::vector<int> ids(in.graph.systems.begin(), in.graph.systems.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    save_report(out_path, band_profile_report_json(cells, cfg.bands, ids));
    std::cout << "bands: " << cells.rows() << " systems x " << cells.cols()
              << " bands -> " << out_path << "\n";
  });

  // ---- synth ----
  CLI::App* synth_cmd = app.add_subcommand(
      "synth", "generate a synthetic graph and optional signal matrix");
  add_common(synth_cmd);
  synth_cmd->add_option("--model", model_str, "graph model: block|ring|cycle");
  synth_cmd->add_option("--nodes", nodes_n, "node count")->required();
  synth_cmd->add_option("--blocks", blocks, "block count (block model)");
  synth_cmd->add_option("--p-in", p_in, "within-block edge probability");
  synth_cmd->add_option("--p-out", p_out, "between-block edge probability");
  synth_cmd->add_option("--w-lo", w_lo, "minimum edge weight");
  synth_cmd->add_option("--w-hi", w_hi, "maximum edge weight");
  synth_cmd->add_option("--radius", radius, "ring-lattice neighbor radius");
  synth_cmd->add_option("--t", t_points, "time points (for signals)");
  synth_cmd->add_option("--tr", tr, "sampling interval in seconds");
  synth_cmd->add_option("--signal", signal_str,
                        "signal model: band|white|burst");
  synth_cmd->add_option("--modes", modes_str,
                        "frequency ranks for the band model, e.g. 0,1,2");
  synth_cmd->add_option("--sigma", sigma, "coefficient/noise sd");
  synth_cmd->add_option("--burst-node", burst_node, "burst node");
  synth_cmd->add_option("--burst-t0", burst_t0, "burst start (inclusive)");
  synth_cmd->add_option("--burst-t1", burst_t1, "burst end (exclusive)");
  synth_cmd->add_option("--burst-amp", burst_amp, "burst amplitude");
  synth_cmd->add_option("--seed", seed, "RNG seed")->required();
  synth_cmd->add_option("--out-graph", out_path, "graph output path")
      ->required();
  synth_cmd->add_option("--format", format, "graph format: edge-list|dense-csv");
  synth_cmd->add_option("--out-signals", out2_path, "signals output path");
  synth_cmd->callback([&] {
    const RunConfig cfg = effective(synth_cmd);
    SynthSpec spec;
    if (model_str == "block") spec.graph_model = GraphModel::BlockModel;
    else if (model_str == "ring") spec.graph_model = GraphModel::RingLattice;
    else if (model_str == "cycle") spec.graph_model = GraphModel::CycleGraph;
    else throw_error(Errc::InvalidParameter, "unknown model '" + model_str + "'");
    spec.n_nodes = nodes_n;
    spec.blocks = blocks;
    spec.p_in = p_in;
    spec.p_out = p_out;
    spec.w_lo = w_lo;
    spec.w_hi = w_hi;
    spec.neighbor_radius = radius;
    spec.t_points = t_points;
    spec.tr = tr;
    spec.sigma = sigma;
    spec.seed = seed;
    const BrainGraph g = synth_graph(spec);
    save_graph(out_path, g, graph_format_from_name(format));
    std::string summary = "synth: model=" + model_str + " N=" +
                          std::to_string(g.n) + " -> " + out_path;
    if (!out2_path.empty()) {
      if (signal_str == "band") {
        spec.signal_model = SignalModel::BandLimited;
        spec.modes = parse_int_list(modes_str);
      } else if (signal_str == "white") {
        spec.signal_model = SignalModel::WhiteNoise;
      } else if (signal_str == "burst") {
        spec.signal_model = SignalModel::PlantedBurst;
        spec.burst_node = burst_node;
        spec.burst_t0 = burst_t0;
        spec.burst_t1 = burst_t1;
        spec.burst_amp = burst_amp;
      } else {
        throw_error(Errc::InvalidParameter,
                    "unknown signal model '" + signal_str + "'");
      }
      const SpectralBasis basis =
          eigendecompose(shift_operator(g, cfg.shift_variant));
      save_signals(out2_path, synth_signals(spec, basis));
      summary += ", " + out2_path;
    }
    std::cout << summary << "\n";
  });

  std::vector<std::string> argv_storage;
  argv_storage.push_back("bgsp");
  for (const std::string& a : args) argv_storage.push_back(a);
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return exit_code;
}

}  // namespace bgsp
