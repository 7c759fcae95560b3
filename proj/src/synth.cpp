#include "bgsp/synth.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "bgsp/errors.hpp"
#include "bgsp/filters.hpp"
#include "bgsp/rng.hpp"

namespace bgsp {

namespace {

int block_of(int i, int n, int k) {
  return static_cast<int>((static_cast<long long>(i) * k) / n);
}

BrainGraph block_model_attempt(const SynthSpec& spec, Rng& rng) {
  const int n = spec.n_nodes;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool same =
          block_of(i, n, spec.blocks) == block_of(j, n, spec.blocks);
      const double p = same ? spec.p_in : spec.p_out;
      if (rng.uniform01() < p)
        edges.push_back({i, j, rng.uniform(spec.w_lo, spec.w_hi)});
    }
  return build_graph(edges, n);
}

}  // namespace

BrainGraph synth_graph(const SynthSpec& spec) {
  if (spec.n_nodes < 2)
    throw_error(Errc::TooSmall, "need at least 2 nodes");
  switch (spec.graph_model) {
    case GraphModel::CycleGraph: {
      BrainGraph g = cycle_graph(spec.n_nodes);
      return g;
    }
    case GraphModel::RingLattice: {
      const int n = spec.n_nodes;
      const int r = spec.neighbor_radius;
      if (r < 1 || 2 * r >= n)
        throw_error(Errc::InvalidParameter,
                    "neighbor radius must satisfy 1 <= r < n/2");
      std::vector<Edge> edges;
      for (int i = 0; i < n; ++i)
        for (int d = 1; d <= r; ++d) {
          const int j = (i + d) % n;
          if (i < j) edges.push_back({i, j, 1.0});
          else edges.push_back({j, i, 1.0});
        }
      // the wrap-around pairs appear once from each side; dedupe
      std::vector<Edge> unique_edges;
      std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
      for (const Edge& e : edges) {
        if (seen[e.i][e.j]) continue;
        seen[e.i][e.j] = true;
        unique_edges.push_back(e);
      }
      return build_graph(unique_edges, n);
    }
    case GraphModel::BlockModel: {
      if (spec.blocks < 1 || spec.blocks > spec.n_nodes)
        throw_error(Errc::InvalidParameter, "block count out of range");
      if (!(spec.p_in >= 0.0 && spec.p_in <= 1.0 && spec.p_out >= 0.0 &&
            spec.p_out <= 1.0))
        throw_error(Errc::InvalidParameter,
                    "edge probabilities must lie in [0,1]");
      if (!(spec.w_lo > 0.0 && spec.w_hi >= spec.w_lo))
        throw_error(Errc::InvalidParameter,
                    "weight range must satisfy 0 < w_lo <= w_hi");
      for (int attempt = 0; attempt < 100; ++attempt) {
        Rng rng(spec.seed, 100 + static_cast<std::uint64_t>(attempt));
        BrainGraph g = block_model_attempt(spec, rng);
        if (is_connected(g)) {
          g.systems.resize(spec.n_nodes);
          for (int i = 0; i < spec.n_nodes; ++i)
            g.systems[i] = block_of(i, spec.n_nodes, spec.blocks);
          return g;
        }
      }
      throw_error(Errc::DisconnectedAfterRetries,
                  "no connected draw in 100 attempts");
    }
  }
  throw_error(Errc::InvalidParameter, "unknown graph model");
}

GraphSignalMatrix synth_signals(const SynthSpec& spec,
                                const SpectralBasis& basis) {
  const int N = basis.n();
  const int T = spec.t_points;
  if (T < 2) throw_error(Errc::TooShort, "need at least 2 time points");
  if (spec.n_nodes != 0 && spec.n_nodes != N)
    throw_error(Errc::DimensionMismatch,
                "spec node count disagrees with the basis");
  if (!(spec.tr > 0.0))
    throw_error(Errc::InvalidParameter, "tr must be positive");
  if (spec.sigma < 0.0)
    throw_error(Errc::InvalidParameter, "sigma must be non-negative");

  Rng rng(spec.seed, 0);
  GraphSignalMatrix out;
  out.tr = spec.tr;

  switch (spec.signal_model) {
    case SignalModel::BandLimited: {
      if (spec.modes.empty())
        throw_error(Errc::InvalidParameter, "band-limited model needs modes");
      Mat C = Mat::Zero(N, T);  // coefficients in storage order
      for (int rank : spec.modes) {
        if (rank < 0 || rank >= N)
          throw_error(Errc::ModeOutOfRange,
                      "frequency rank " + std::to_string(rank) +
                      " outside [0," + std::to_string(N) + ")");
        const int idx = basis.ordering[rank];
        for (int t = 0; t < T; ++t) C(idx, t) = spec.sigma * rng.normal();
      }
      out.values = basis.V * C;
      return out;
    }
    case SignalModel::WhiteNoise: {
      out.values = Mat(N, T);
      for (int t = 0; t < T; ++t)
        for (int i = 0; i < N; ++i) out.values(i, t) = spec.sigma * rng.normal();
      return out;
    }
    case SignalModel::PlantedBurst: {
      if (spec.burst_node < 0 || spec.burst_node >= N)
        throw_error(Errc::IndexOutOfRange, "burst node outside the graph");
      if (spec.burst_t0 < 0 || spec.burst_t1 > T ||
          spec.burst_t0 > spec.burst_t1)
        throw_error(Errc::InvalidParameter, "burst window outside [0,T)");
      out.values = Mat(N, T);
      for (int t = 0; t < T; ++t)
        for (int i = 0; i < N; ++i) out.values(i, t) = spec.sigma * rng.normal();
      for (int t = spec.burst_t0; t < spec.burst_t1; ++t)
        out.values(spec.burst_node, t) += spec.burst_amp;
      return out;
    }
  }
  throw_error(Errc::InvalidParameter, "unknown signal model");
}

std::vector<SubjectRecord> synth_cohort(int n_subjects,
                                        const CohortSpec& spec) {
  if (n_subjects < 10)
    throw_error(Errc::TooSmall, "cohorts need at least 10 subjects");
  const int N = spec.n_nodes;
  const int T = spec.t_points;
  const int K = spec.K;
  if (K < 1 || 2 * K > N)
    throw_error(Errc::InvalidParameter, "need 1 <= K and 2K <= N");
  if (T < 3) throw_error(Errc::TooShort, "need at least 3 time points");
  if (!(std::abs(spec.effect) <= 1.0))
    throw_error(Errc::InvalidParameter, "effect must lie in [-1,1]");
  if (spec.energy_spread < 0.0 || spec.sigma_aligned < 0.0 ||
      spec.sigma_middle < 0.0)
    throw_error(Errc::InvalidParameter, "spreads and sigmas must be >= 0");

  SynthSpec g;
  g.graph_model = GraphModel::BlockModel;
  g.n_nodes = N;
  g.blocks = spec.blocks;
  g.p_in = spec.p_in;
  g.p_out = spec.p_out;
  g.seed = spec.seed;
  const BrainGraph graph = synth_graph(g);
  const SpectralBasis basis =
      eigendecompose(shift_operator(graph, ShiftVariant::Laplacian));

  // Subject s draws from stream 1+s: energy factor, then liberal, aligned,
  // and middle-band coefficients.
  std::vector<SubjectRecord> cohort(n_subjects);
  for (int s = 0; s < n_subjects; ++s) {
    Rng rng(spec.seed, 1 + static_cast<std::uint64_t>(s));
    const double energy = std::exp(spec.energy_spread * rng.normal());

    Mat C = Mat::Zero(N, T);
    Mat lib(K, T);
    for (int r = 0; r < K; ++r)
      for (int t = 0; t < T; ++t) lib(r, t) = rng.normal();
    lib *= std::sqrt(energy * K * T) / lib.norm();
    for (int r = 0; r < K; ++r) C.row(basis.ordering[N - K + r]) = lib.row(r);
    for (int r = 0; r < K; ++r) {
      const int idx = basis.ordering[r];
      for (int t = 0; t < T; ++t) C(idx, t) = spec.sigma_aligned * rng.normal();
    }
    for (int r = K; r < N - K; ++r) {
      const int idx = basis.ordering[r];
      for (int t = 0; t < T; ++t) C(idx, t) = spec.sigma_middle * rng.normal();
    }

    cohort[s].graph = graph;
    cohort[s].signals.values = basis.V * C;
    cohort[s].signals.tr = spec.tr;
  }

  // Realized liberal concentrations, recomputed through the analysis path.
  Vec conc(n_subjects);
  for (int s = 0; s < n_subjects; ++s) {
    auto [aligned, liberal] =
        align_liberal_split(basis, cohort[s].signals.values, K);
    (void)aligned;
    conc(s) = concentration(liberal, Norm::L2);
  }

  // Covariates and the behavior score from stream 1+n_subjects: age draws,
  // then motion draws, then the independent component z.
  Rng crng(spec.seed, 1 + static_cast<std::uint64_t>(n_subjects));
  Vec age(n_subjects), motion(n_subjects), z(n_subjects);
  for (int s = 0; s < n_subjects; ++s) age(s) = crng.uniform(20.0, 40.0);
  for (int s = 0; s < n_subjects; ++s) motion(s) = crng.normal();
  for (int s = 0; s < n_subjects; ++s) z(s) = crng.normal();

  // Build behavior in the residual space of [1 age motion]: the in-sample
  // partial correlation against `conc` is then spec.effect exactly.
  Mat A(n_subjects, 3);
  A.col(0).setOnes();
  A.col(1) = age;
  A.col(2) = motion;
  Eigen::ColPivHouseholderQR<Mat> qr(A);
  Vec rc = conc - A * qr.solve(conc);
  const double rc_norm = rc.norm();
  Vec zr = z - A * qr.solve(z);
  if (rc_norm < 1e-12)
    throw_error(Errc::ConvergenceFailure, "degenerate concentration residual");
  rc /= rc_norm;
  zr -= rc * rc.dot(zr);
  const double zr_norm = zr.norm();
  if (zr_norm < 1e-12)
    throw_error(Errc::ConvergenceFailure, "degenerate calibration draw");
  zr /= zr_norm;
  const Vec b = spec.effect * rc +
                std::sqrt(1.0 - spec.effect * spec.effect) * zr;

  for (int s = 0; s < n_subjects; ++s) {
    cohort[s].behavior["score"] = b(s);
    cohort[s].covariates["age"] = age(s);
    cohort[s].covariates["motion"] = motion(s);
  }
  return cohort;
}

Vec cohort_planted_concentration(const std::vector<SubjectRecord>& cohort,
                                 int K) {
  Vec conc(cohort.size());
  for (std::size_t s = 0; s < cohort.size(); ++s) {
    const SpectralBasis basis = eigendecompose(
        shift_operator(cohort[s].graph, ShiftVariant::Laplacian));
    auto [aligned, liberal] =
        align_liberal_split(basis, cohort[s].signals.values, K);
    (void)aligned;
    conc(s) = concentration(liberal, Norm::L2);
  }
  return conc;
}

}  // namespace bgsp
