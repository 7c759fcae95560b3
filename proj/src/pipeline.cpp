#include "bgsp/pipeline.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "bgsp/errors.hpp"

namespace bgsp {

const char* component_name(Component c) {
  switch (c) {
    case Component::Aligned: return "aligned";
    case Component::Liberal: return "liberal";
    case Component::SlepianLocal: return "slepian-local";
  }
  return "?";
}

const char* norm_name(Norm n) {
  return n == Norm::L1 ? "l1" : "l2";
}

Norm norm_from_name(const std::string& name) {
  if (name == "l1") return Norm::L1;
  if (name == "l2") return Norm::L2;
  throw_error(Errc::InvalidParameter, "unknown norm '" + name + "'");
}

const char* pooling_name(ThresholdPooling p) {
  return p == ThresholdPooling::PerNode ? "per-node" : "per-node-time";
}

ThresholdPooling pooling_from_name(const std::string& name) {
  if (name == "per-node") return ThresholdPooling::PerNode;
  if (name == "per-node-time") return ThresholdPooling::PerNodeTime;
  throw_error(Errc::InvalidParameter, "unknown pooling '" + name + "'");
}

namespace {

// Keeps the m largest values pushed into it; min() is then the
// (n-m+1)-th ascending order statistic of everything pushed.
class TopM {
 public:
  explicit TopM(int m) : m_(m) {}

  void push(double v) {
    if (static_cast<int>(heap_.size()) < m_) {
      heap_.push(v);
    } else if (v > heap_.top()) {
      heap_.pop();
      heap_.push(v);
    }
  }

  double min() const { return heap_.top(); }

 private:
  int m_;
  std::priority_queue<double, std::vector<double>, std::greater<double>> heap_;
};

// Rank (1-based, ascending) of the (1-alpha) quantile in a pool of n values:
// the ceil((1-alpha)*n)-th order statistic. The small epsilon absorbs
// floating error in the product so exact multiples don't round up.
int quantile_rank(double alpha, long long n) {
  const double x = (1.0 - alpha) * static_cast<double>(n);
  long long r = static_cast<long long>(std::ceil(x - 1e-9));
  if (r < 1) r = 1;
  if (r > n) r = n;
  return static_cast<int>(r);
}

// Run produce(i) for i in [0, total) — in parallel when jobs > 1 — and feed
// the results to consume(i, r) in index order. Results are identical for any
// jobs value.
template <typename R, typename Produce, typename Consume>
void chunked_parallel(int total, int jobs, Produce produce, Consume consume) {
  if (jobs <= 1) {
    for (int i = 0; i < total; ++i) consume(i, produce(i));
    return;
  }
  for (int start = 0; start < total; start += jobs) {
    const int chunk = std::min(jobs, total - start);
    std::vector<R> slots(chunk);
    std::vector<std::thread> threads;
    threads.reserve(chunk);
    for (int k = 0; k < chunk; ++k)
      threads.emplace_back([&, k] { slots[k] = produce(start + k); });
    for (auto& t : threads) t.join();
    for (int k = 0; k < chunk; ++k) consume(start + k, std::move(slots[k]));
  }
}

void require_mapped(const std::vector<int>& systems, int n) {
  if (static_cast<int>(systems.size()) != n)
    throw_error(Errc::UnmappedNode,
                "system map covers " + std::to_string(systems.size()) +
                " of " + std::to_string(n) + " nodes");
  for (int i = 0; i < n; ++i)
    if (systems[i] < 0)
      throw_error(Errc::UnmappedNode, "node " + std::to_string(i) +
                  " has no system");
}

std::vector<int> sorted_system_ids(const std::vector<int>& systems) {
  std::set<int> ids(systems.begin(), systems.end());
  return std::vector<int>(ids.begin(), ids.end());
}

}  // namespace

std::pair<Mat, Mat> align_liberal_split(const SpectralBasis& basis,
                                        const Mat& X, int K) {
  if (K < 1)
    throw_error(Errc::InvalidParameter, "split size K must be >= 1");
  if (2 * K > basis.n())
    throw_error(Errc::BandOverlap,
                "2K = " + std::to_string(2 * K) + " exceeds N = " +
                std::to_string(basis.n()) +
                "; low and high bands would overlap");
  const SpectralFilter low = make_ideal_low(basis, K);
  const SpectralFilter high = make_ideal_high(basis, K);
  return {apply_spectral_filter(basis, low, X),
          apply_spectral_filter(basis, high, X)};
}

double concentration(const Mat& Y, Norm norm) {
  if (Y.size() == 0)
    throw_error(Errc::DimensionMismatch, "concentration of an empty matrix");
  double acc = 0.0;
  for (int t = 0; t < Y.cols(); ++t)
    acc += (norm == Norm::L2) ? Y.col(t).norm() : Y.col(t).lpNorm<1>();
  return acc / static_cast<double>(Y.cols());
}

CorrelationResult partial_correlation(const Vec& a, const Vec& b, const Mat& Z,
                                      std::vector<std::string> covariate_names) {
  const int n = static_cast<int>(a.size());
  const int q = static_cast<int>(Z.cols());
  if (b.size() != n || (q > 0 && Z.rows() != n))
    throw_error(Errc::DimensionMismatch,
                "a, b, and covariate rows must share one length");
  if (n <= q + 2)
    throw_error(Errc::TooFewSamples,
                "need n > q+2 samples, got n = " + std::to_string(n) +
                ", q = " + std::to_string(q));

  Mat A(n, q + 1);
  A.col(0).setOnes();
  if (q > 0) A.rightCols(q) = Z;
  Eigen::ColPivHouseholderQR<Mat> qr(A);
  if (qr.rank() < q + 1)
    throw_error(Errc::RankDeficientCovariates,
                "covariate matrix (with intercept) has rank " +
                std::to_string(qr.rank()) + " < " + std::to_string(q + 1));
  const Vec ra = a - A * qr.solve(a);
  const Vec rb = b - A * qr.solve(b);

  CorrelationResult out;
  out.n = n;
  out.covariate_names = std::move(covariate_names);
  // A residual that is zero up to rounding (relative to the input scale)
  // means that side is fully explained by the covariates; there is no
  // residual correlation to measure.
  const double tol_a = 1e-12 * std::max(1.0, a.norm());
  const double tol_b = 1e-12 * std::max(1.0, b.norm());
  if (ra.norm() <= tol_a || rb.norm() <= tol_b) {
    out.rho = 0.0;
    out.p_value = 1.0;
    return out;
  }
  const double denom = ra.norm() * rb.norm();
  double rho = ra.dot(rb) / denom;
  rho = std::clamp(rho, -1.0, 1.0);
  out.rho = rho;
  const double dof = static_cast<double>(n - 2 - q);
  if (std::abs(rho) >= 1.0) {
    out.p_value = 0.0;
  } else {
    const double t = rho * std::sqrt(dof / (1.0 - rho * rho));
    boost::math::students_t_distribution<double> dist(dof);
    out.p_value = 2.0 * boost::math::cdf(dist, -std::abs(t));
  }
  return out;
}

ExcursionReport excursion_detect(const Mat& Y_component,
                                 const SpectralBasis& basis, const Mat& X,
                                 const SurrogateSpec& spec, double alpha,
                                 Component component,
                                 const std::vector<int>& systems,
                                 ThresholdPooling pooling, int jobs) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw_error(Errc::InvalidParameter, "alpha must lie in (0,1)");
  if (spec.count < 100)
    throw_error(Errc::InsufficientSurrogates,
                "excursion thresholds need >= 100 surrogates, got " +
                std::to_string(spec.count));
  if (!spec.filter)
    throw_error(Errc::InvalidParameter,
                "the surrogate spec must carry the component's filter");
  if (Y_component.rows() != basis.n() || X.rows() != basis.n() ||
      Y_component.cols() != X.cols())
    throw_error(Errc::DimensionMismatch, "component/signal shapes disagree");

  const int N = basis.n();
  const int T = static_cast<int>(X.cols());
  SurrogateEnsemble ensemble(spec, basis, X);

  ExcursionReport report;
  report.alpha = alpha;
  report.component = component;
  report.n_surrogates = spec.count;
  report.per_node_pct = Vec(N);

  if (pooling == ThresholdPooling::PerNode) {
    const long long pool_n =
        static_cast<long long>(spec.count) * static_cast<long long>(T);
    const int m = static_cast<int>(pool_n - quantile_rank(alpha, pool_n) + 1);
    std::vector<TopM> heaps(N, TopM(m));
    chunked_parallel<Mat>(
        spec.count, jobs, [&](int i) { return ensemble.realization(i); },
        [&](int, Mat&& Y) {
          for (int t = 0; t < T; ++t)
            for (int i = 0; i < N; ++i) heaps[i].push(std::abs(Y(i, t)));
        });
    report.thresholds = Vec(N);
    for (int i = 0; i < N; ++i) report.thresholds(i) = heaps[i].min();
    for (int i = 0; i < N; ++i) {
      int exceed = 0;
      for (int t = 0; t < T; ++t)
        if (std::abs(Y_component(i, t)) > report.thresholds(i)) ++exceed;
      report.per_node_pct(i) = 100.0 * exceed / static_cast<double>(T);
    }
  } else {
    const int m = static_cast<int>(spec.count -
                                   quantile_rank(alpha, spec.count) + 1);
    std::vector<TopM> heaps(static_cast<std::size_t>(N) * T, TopM(m));
    chunked_parallel<Mat>(
        spec.count, jobs, [&](int i) { return ensemble.realization(i); },
        [&](int, Mat&& Y) {
          for (int t = 0; t < T; ++t)
            for (int i = 0; i < N; ++i)
              heaps[static_cast<std::size_t>(i) * T + t].push(std::abs(Y(i, t)));
        });
    for (int i = 0; i < N; ++i) {
      int exceed = 0;
      for (int t = 0; t < T; ++t)
        if (std::abs(Y_component(i, t)) >
            heaps[static_cast<std::size_t>(i) * T + t].min())
          ++exceed;
      report.per_node_pct(i) = 100.0 * exceed / static_cast<double>(T);
    }
  }

  if (!systems.empty())
    report.per_system_pct = system_aggregate(report.per_node_pct, systems);
  return report;
}

std::map<int, double> system_aggregate(const Vec& per_node_values,
                                       const std::vector<int>& systems) {
  require_mapped(systems, static_cast<int>(per_node_values.size()));
  std::map<int, double> sums;
  std::map<int, int> counts;
  for (int i = 0; i < per_node_values.size(); ++i) {
    sums[systems[i]] += per_node_values(i);
    counts[systems[i]] += 1;
  }
  std::map<int, double> out;
  for (const auto& [id, sum] : sums) out[id] = sum / counts[id];
  return out;
}

std::map<int, double> system_concentration(const Mat& Y,
                                           const std::vector<int>& systems,
                                           Norm norm) {
  require_mapped(systems, static_cast<int>(Y.rows()));
  std::map<int, double> out;
  for (int id : sorted_system_ids(systems)) {
    std::vector<int> members;
    for (int i = 0; i < Y.rows(); ++i)
      if (systems[i] == id) members.push_back(i);
    Mat sub(members.size(), Y.cols());
    for (std::size_t r = 0; r < members.size(); ++r)
      sub.row(r) = Y.row(members[r]);
    out[id] = concentration(sub, norm);
  }
  return out;
}

Mat band_excursion_profile(const GraphSignalMatrix& X,
                           const SpectralBasis& basis, int K,
                           Component component, const std::vector<Band>& bands,
                           const std::vector<int>& systems,
                           const SurrogateSpec& spec_in, double alpha,
                           int jobs) {
  const int N = basis.n();
  const int T = X.t();
  require_mapped(systems, N);
  if (!(alpha > 0.0 && alpha < 1.0))
    throw_error(Errc::InvalidParameter, "alpha must lie in (0,1)");
  if (spec_in.count < 100)
    throw_error(Errc::InsufficientSurrogates,
                "excursion thresholds need >= 100 surrogates, got " +
                std::to_string(spec_in.count));
  if (bands.empty())
    throw_error(Errc::BandsNotPartition, "no bands given");

  // The bands must partition [0, Nyquist]: contiguous edges and, decisively,
  // every DFT bin covered exactly once.
  const double nyq = 1.0 / (2.0 * X.tr);
  const double ftol = 1e-9 * nyq;
  if (std::abs(bands.front().f_lo) > ftol)
    throw_error(Errc::BandsNotPartition, "first band must start at 0 Hz");
  for (std::size_t b = 0; b + 1 < bands.size(); ++b)
    if (std::abs(bands[b].f_hi - bands[b + 1].f_lo) > ftol)
      throw_error(Errc::BandsNotPartition,
                  "gap or overlap between bands " + std::to_string(b) +
                  " and " + std::to_string(b + 1));
  if (std::abs(bands.back().f_hi - nyq) > ftol)
    throw_error(Errc::BandsNotPartition, "last band must end at Nyquist");
  {
    std::vector<int> seen(T, 0);
    for (const Band& b : bands)
      for (int k : band_indices(T, X.tr, b.f_lo, b.f_hi)) seen[k] += 1;
    for (int k = 0; k < T; ++k)
      if (seen[k] != 1)
        throw_error(Errc::BandsNotPartition,
                    "bin " + std::to_string(k) + " covered " +
                    std::to_string(seen[k]) + " times");
  }

  if (component == Component::SlepianLocal)
    throw_error(Errc::InvalidParameter,
                "band profiles are defined for the aligned/liberal components");
  const SpectralFilter comp_filter = (component == Component::Aligned)
                                         ? make_ideal_low(basis, K)
                                         : make_ideal_high(basis, K);
  SurrogateSpec spec = spec_in;
  spec.filter = comp_filter;

  const Mat Y_comp = apply_spectral_filter(basis, comp_filter, X.values);
  const CMat comp_spec = dft_rows(Y_comp);

  const int B = static_cast<int>(bands.size());
  std::vector<CVec> windows(B);
  for (int b = 0; b < B; ++b)
    windows[b] = band_window(T, X.tr, bands[b].f_lo, bands[b].f_hi);

  auto band_filter = [&](const CMat& spectrum, int b) {
    CMat s = spectrum;
    for (int k = 0; k < T; ++k) s.col(k) *= windows[b](k);
    return idft_rows_real(s);
  };

  // One heap set per (band, node); surrogates are generated once and
  // band-filtered from their spectra.
  const long long pool_n =
      static_cast<long long>(spec.count) * static_cast<long long>(T);
  const int m = static_cast<int>(pool_n - quantile_rank(alpha, pool_n) + 1);
  std::vector<std::vector<TopM>> heaps(B);
  for (int b = 0; b < B; ++b) heaps[b].assign(N, TopM(m));

  SurrogateEnsemble ensemble(spec, basis, X.values);
  chunked_parallel<std::vector<Mat>>(
      spec.count, jobs,
      [&](int i) {
        const CMat s = dft_rows(ensemble.realization(i));
        std::vector<Mat> per_band(B);
        for (int b = 0; b < B; ++b) per_band[b] = band_filter(s, b);
        return per_band;
      },
      [&](int, std::vector<Mat>&& per_band) {
        for (int b = 0; b < B; ++b)
          for (int t = 0; t < T; ++t)
            for (int i = 0; i < N; ++i)
              heaps[b][i].push(std::abs(per_band[b](i, t)));
      });

  const std::vector<int> ids = sorted_system_ids(systems);
  Mat cells(static_cast<int>(ids.size()), B);
  for (int b = 0; b < B; ++b) {
    const Mat Yb = band_filter(comp_spec, b);
    Vec pct(N);
    for (int i = 0; i < N; ++i) {
      const double thr = heaps[b][i].min();
      int exceed = 0;
      for (int t = 0; t < T; ++t)
        if (std::abs(Yb(i, t)) > thr) ++exceed;
      pct(i) = 100.0 * exceed / static_cast<double>(T);
    }
    const std::map<int, double> by_system = system_aggregate(pct, systems);
    for (std::size_t s = 0; s < ids.size(); ++s)
      cells(static_cast<int>(s), b) = by_system.at(ids[s]);
  }
  return cells;
}

Vec slepian_excursion_profile(const GraphSignalMatrix& X,
                              const SpectralBasis& basis,
                              const std::vector<int>& systems, int M,
                              int gate_size, double eps,
                              const SurrogateSpec& spec, double alpha,
                              int jobs) {
  const int N = basis.n();
  const int T = X.t();
  require_mapped(systems, N);
  if (!(alpha > 0.0 && alpha < 1.0))
    throw_error(Errc::InvalidParameter, "alpha must lie in (0,1)");
  if (spec.count < 100)
    throw_error(Errc::InsufficientSurrogates,
                "excursion thresholds need >= 100 surrogates, got " +
                std::to_string(spec.count));
  if (M > N)
    throw_error(Errc::BandwidthTooLarge, "bandwidth M exceeds the graph size");

  Vec out = Vec::Zero(N);
  for (int id : sorted_system_ids(systems)) {
    std::vector<int> members;
    for (int i = 0; i < N; ++i)
      if (systems[i] == id) members.push_back(i);
    if (members.size() < 2)
      throw_error(Errc::TooSmall,
                  "system " + std::to_string(id) + " has fewer than 2 nodes");
    const NodeSelector sel = selector_from_nodes(N, members);
    const SlepianBasis slep =
        slepian_basis(basis, sel, M, SlepianCriterion::ModifiedEmbeddedDistance);
    const std::vector<int> gate = slepian_gate_lowest(slep, gate_size, eps);

    const Mat coeffs = slep.vectors.transpose() * X.values;  // M×T
    Mat gated = Mat::Zero(M, T);
    for (int c : gate) gated.row(c) = coeffs.row(c);
    const Mat Y_loc = slep.vectors * gated;

    // Null model: sign flips of the Slepian coefficients (one sign per
    // basis column, gated columns reconstructed).
    const long long pool_n =
        static_cast<long long>(spec.count) * static_cast<long long>(T);
    const int m = static_cast<int>(pool_n - quantile_rank(alpha, pool_n) + 1);
    std::vector<TopM> heaps(members.size(), TopM(m));
    chunked_parallel<Mat>(
        spec.count, jobs,
        [&](int i) {
          Rng rng(spec.seed, static_cast<std::uint64_t>(i));
          Mat flipped = Mat::Zero(M, T);
          for (int c = 0; c < M; ++c) {
            const double s = rng.sign();
            if (!gated.row(c).isZero(0.0)) flipped.row(c) = s * gated.row(c);
          }
          return Mat(slep.vectors * flipped);
        },
        [&](int, Mat&& Y) {
          for (int t = 0; t < T; ++t)
            for (std::size_t r = 0; r < members.size(); ++r)
              heaps[r].push(std::abs(Y(members[r], t)));
        });
    for (std::size_t r = 0; r < members.size(); ++r) {
      const double thr = heaps[r].min();
      int exceed = 0;
      for (int t = 0; t < T; ++t)
        if (std::abs(Y_loc(members[r], t)) > thr) ++exceed;
      out(members[r]) = 100.0 * exceed / static_cast<double>(T);
    }
  }
  return out;
}

namespace {

Vec behavior_vector(const std::vector<SubjectRecord>& cohort,
                    const std::string& name) {
  Vec v(cohort.size());
  for (std::size_t s = 0; s < cohort.size(); ++s) {
    const auto it = cohort[s].behavior.find(name);
    if (it == cohort[s].behavior.end())
      throw_error(Errc::InvalidParameter,
                  "subject " + std::to_string(s) + " lacks behavior '" +
                  name + "'");
    v(s) = it->second;
  }
  return v;
}

Mat covariate_matrix(const std::vector<SubjectRecord>& cohort,
                     const std::vector<std::string>& names) {
  Mat Z(cohort.size(), names.size());
  for (std::size_t s = 0; s < cohort.size(); ++s)
    for (std::size_t c = 0; c < names.size(); ++c) {
      const auto it = cohort[s].covariates.find(names[c]);
      if (it == cohort[s].covariates.end())
        throw_error(Errc::InvalidParameter,
                    "subject " + std::to_string(s) + " lacks covariate '" +
                    names[c] + "'");
      Z(s, c) = it->second;
    }
  return Z;
}

Mat component_of(const SpectralBasis& basis, const Mat& X, int K,
                 Component component) {
  auto [aligned, liberal] = align_liberal_split(basis, X, K);
  return component == Component::Aligned ? aligned : liberal;
}

}  // namespace

CohortResult cohort_concentration_correlation(
    const std::vector<SubjectRecord>& cohort, ShiftVariant variant, int K,
    Component component, Norm norm, const std::string& behavior_name,
    const std::vector<std::string>& covariate_names) {
  if (component == Component::SlepianLocal)
    throw_error(Errc::InvalidParameter,
                "cohort concentrations use the aligned/liberal components");
  if (cohort.empty())
    throw_error(Errc::TooFewSamples, "empty cohort");
  CohortResult out;
  out.concentrations = Vec(cohort.size());
  for (std::size_t s = 0; s < cohort.size(); ++s) {
    const SpectralBasis basis =
        eigendecompose(shift_operator(cohort[s].graph, variant));
    out.concentrations(s) = concentration(
        component_of(basis, cohort[s].signals.values, K, component), norm);
  }
  out.corr = partial_correlation(out.concentrations,
                                 behavior_vector(cohort, behavior_name),
                                 covariate_matrix(cohort, covariate_names),
                                 covariate_names);
  return out;
}

NullCorrelationResult null_correlation_test(
    const std::vector<SubjectRecord>& cohort, ShiftVariant variant, int K,
    Component component, Norm norm, const std::string& behavior_name,
    const std::vector<std::string>& covariate_names, SurrogateMode mode,
    int count, std::uint64_t seed, int jobs) {
  if (count < 1)
    throw_error(Errc::InvalidParameter, "null draw count must be >= 1");
  NullCorrelationResult out;
  out.real = cohort_concentration_correlation(cohort, variant, K, component,
                                              norm, behavior_name,
                                              covariate_names);
  const Vec b = behavior_vector(cohort, behavior_name);
  const Mat Z = covariate_matrix(cohort, covariate_names);
  const int S = static_cast<int>(cohort.size());

  // Per-subject bases are reused across draws.
  std::vector<SpectralBasis> bases;
  bases.reserve(S);
  for (const SubjectRecord& rec : cohort)
    bases.push_back(eigendecompose(shift_operator(rec.graph, variant)));

  out.null_rhos = Vec(count);
  chunked_parallel<double>(
      count, jobs,
      [&](int i) {
        Vec conc(S);
        for (int s = 0; s < S; ++s) {
          // Stream (seed, i*S+s): each (draw, subject) cell is addressable
          // in isolation.
          Rng rng(seed, static_cast<std::uint64_t>(i) * S + s);
          const Mat& X = cohort[s].signals.values;
          Mat Y;
          switch (mode) {
            case SurrogateMode::GraphSignFlip:
              Y = graph_sign_flip(bases[s], X, rng);
              break;
            case SurrogateMode::TemporalPhase:
              Y = phase_randomize(X, rng);
              break;
            case SurrogateMode::Combined:
              Y = combined_surrogate(bases[s], X, rng);
              break;
          }
          conc(s) = concentration(component_of(bases[s], Y, K, component), norm);
        }
        return partial_correlation(conc, b, Z, {}).rho;
      },
      [&](int i, double rho) { out.null_rhos(i) = rho; });

  int exceed = 0;
  for (int i = 0; i < count; ++i)
    if (out.null_rhos(i) >= out.real.corr.rho) ++exceed;
  out.p_perm = (1.0 + exceed) / (1.0 + count);
  return out;
}

}  // namespace bgsp
