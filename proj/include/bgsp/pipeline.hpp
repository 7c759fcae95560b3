#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bgsp/slepian.hpp"
#include "bgsp/surrogate.hpp"
#include "bgsp/temporal.hpp"

namespace bgsp {

// One subject: signals on a graph plus scalar behavior/covariate measures.
struct SubjectRecord {
  GraphSignalMatrix signals;
  BrainGraph graph;
  std::map<std::string, double> behavior;
  std::map<std::string, double> covariates;
};

enum class Component { Aligned, Liberal, SlepianLocal };
const char* component_name(Component c);

enum class Norm { L1, L2 };
const char* norm_name(Norm n);
Norm norm_from_name(const std::string& name);

// How excursion thresholds pool null values: per node over all surrogates and
// time points (default), or separately per (node, time) cell.
enum class ThresholdPooling { PerNode, PerNodeTime };
const char* pooling_name(ThresholdPooling p);
ThresholdPooling pooling_from_name(const std::string& name);

struct ExcursionReport {
  Vec per_node_pct;                  // percentages in [0, 100]
  std::map<int, double> per_system_pct;  // empty when the graph has no systems
  double alpha = 0.05;
  Component component = Component::Aligned;
  Vec thresholds;  // per node (PerNode pooling); per-cell thresholds are not
                   // retained, only the resulting percentages
  int n_surrogates = 0;
};

struct CorrelationResult {
  double rho = 0.0;
  double p_value = 1.0;
  int n = 0;
  std::vector<std::string> covariate_names;
};

// Split X into the K lowest-frequency component (aligned) and the K
// highest-frequency component (liberal). Requires 2K <= N so the two bands
// cannot overlap.
std::pair<Mat, Mat> align_liberal_split(const SpectralBasis& basis,
                                        const Mat& X, int K);

// (1/T) * sum_t ||Y[:,t]||_p.
double concentration(const Mat& Y, Norm norm);

// Partial Pearson correlation of a and b given covariates Z (n×q): both are
// residualized on [1 Z] by least squares, rho is the correlation of the
// residuals, and the p-value comes from the two-tailed t-statistic
// t = rho * sqrt((n-2-q)/(1-rho^2)).
CorrelationResult partial_correlation(const Vec& a, const Vec& b, const Mat& Z,
                                      std::vector<std::string> covariate_names = {});

// Detect significant excursions of a filtered component against a surrogate
// ensemble. For each node, the threshold is the (1-alpha) quantile (the
// ceil((1-alpha)*n)-th order statistic) of pooled absolute null values;
// per_node_pct[i] is the percentage of time points with |Y[i,t]| above it.
// spec.filter must hold the filter that produced Y_component; spec.count must
// be >= 100. `jobs` parallelizes surrogate generation (results are identical
// for any jobs value).
ExcursionReport excursion_detect(const Mat& Y_component,
                                 const SpectralBasis& basis, const Mat& X,
                                 const SurrogateSpec& spec, double alpha,
                                 Component component,
                                 const std::vector<int>& systems = {},
                                 ThresholdPooling pooling = ThresholdPooling::PerNode,
                                 int jobs = 1);

// Mean of member-node values per system id. Every node must be mapped.
std::map<int, double> system_aggregate(const Vec& per_node_values,
                                       const std::vector<int>& systems);

// Concentration restricted to each system's rows.
std::map<int, double> system_concentration(const Mat& Y,
                                           const std::vector<int>& systems,
                                           Norm norm);

// Frequency band [f_lo, f_hi) in Hz.
struct Band {
  double f_lo;
  double f_hi;
};

// Per-system × per-band excursion percentages: both the component signal and
// every surrogate are band-filtered before thresholding. The bands must
// partition [0, Nyquist].
Mat band_excursion_profile(const GraphSignalMatrix& X,
                           const SpectralBasis& basis, int K,
                           Component component, const std::vector<Band>& bands,
                           const std::vector<int>& systems,
                           const SurrogateSpec& spec, double alpha,
                           int jobs = 1);

// Localized excursions: for each system, build a modified-criterion Slepian
// basis on that system's selector, filter with the `gate_size` lowest-xi
// concentrated vectors, generate nulls by sign-flipping the Slepian
// coefficients, and report each member node's excursion percentage.
Vec slepian_excursion_profile(const GraphSignalMatrix& X,
                              const SpectralBasis& basis,
                              const std::vector<int>& systems, int M,
                              int gate_size, double eps,
                              const SurrogateSpec& spec, double alpha,
                              int jobs = 1);

// Cohort-level driver: per-subject liberal (or aligned) concentration plus
// the partial correlation against a behavior score.
struct CohortResult {
  Vec concentrations;
  CorrelationResult corr;
};

CohortResult cohort_concentration_correlation(
    const std::vector<SubjectRecord>& cohort, ShiftVariant variant, int K,
    Component component, Norm norm, const std::string& behavior_name,
    const std::vector<std::string>& covariate_names);

// Permutation-style null for the cohort correlation: each draw regenerates
// every subject's concentration from a surrogate signal matrix and recomputes
// the partial correlation. p = (1 + #{rho_null >= rho_real}) / (1 + count),
// one-sided.
struct NullCorrelationResult {
  CohortResult real;
  Vec null_rhos;
  double p_perm = 1.0;
};

NullCorrelationResult null_correlation_test(
    const std::vector<SubjectRecord>& cohort, ShiftVariant variant, int K,
    Component component, Norm norm, const std::string& behavior_name,
    const std::vector<std::string>& covariate_names, SurrogateMode mode,
    int count, std::uint64_t seed, int jobs = 1);

}  // namespace bgsp
