#pragma once

#include <cstdint>

#include "bgsp/pipeline.hpp"

namespace bgsp {

enum class GraphModel { BlockModel, RingLattice, CycleGraph };
enum class SignalModel { BandLimited, WhiteNoise, PlantedBurst };

// Parameters for synthetic graph/signal generation. Only the fields relevant
// to the chosen models are read.
struct SynthSpec {
  GraphModel graph_model = GraphModel::BlockModel;
  // block model
  int blocks = 4;
  double p_in = 0.4;
  double p_out = 0.08;
  double w_lo = 0.5;
  double w_hi = 1.5;
  // ring lattice
  int neighbor_radius = 1;

  SignalModel signal_model = SignalModel::BandLimited;
  std::vector<int> modes;  // frequency ranks for BandLimited
  double sigma = 1.0;
  int burst_node = 0;
  int burst_t0 = 0;
  int burst_t1 = 0;  // half-open [t0, t1)
  double burst_amp = 0.0;

  int n_nodes = 0;
  int t_points = 0;
  double tr = 1.0;
  std::uint64_t seed = 0;
};

// Draw a connected graph from the spec (block model resamples up to 100
// times, then errors). Block membership is recorded in `systems`.
BrainGraph synth_graph(const SynthSpec& spec);

// Draw signals per the spec's signal model on the given basis.
// BandLimited: iid normal coefficients (sd sigma) on the listed frequency
// ranks, zero elsewhere, mapped through the inverse GFT.
GraphSignalMatrix synth_signals(const SynthSpec& spec,
                                const SpectralBasis& basis);

// Cohort generation with a planted behavior effect.
//
// All subjects share one connected block-model graph. Each subject's signals
// put iid normal coefficients on every mode, with the K highest-frequency
// (liberal) coefficients rescaled to an exact per-subject energy drawn with a
// small lognormal spread. The behavior score is built in the residual space
// of [1, covariates] so that the partial correlation between behavior and the
// realized liberal concentration equals `effect` exactly in-sample
// (effect = 1 means behavior is the concentration residual itself; effect = 0
// makes them exactly orthogonal). Records carry behavior key "score" and
// covariate keys "age" (~U(20,40)) and "motion" (~N(0,1)).
// The energy spread is deliberately tiny: surrogate phase
// randomization preserves drawn energies, so a wide spread would leak planted
// variance into the null distribution and sap the power of the correlation
// null test at small n.
struct CohortSpec {
  int n_nodes = 82;
  int t_points = 200;
  double tr = 1.0;
  int K = 10;              // liberal/aligned band size
  double effect = 0.59;    // target partial correlation
  double energy_spread = 0.001;
  double sigma_aligned = 1.0;
  double sigma_middle = 0.5;
  // block-model parameters for the shared graph
  int blocks = 4;
  double p_in = 0.4;
  double p_out = 0.08;
  std::uint64_t seed = 0;
};

std::vector<SubjectRecord> synth_cohort(int n_subjects, const CohortSpec& spec);

// The planted liberal concentration of each subject (the quantity the
// behavior score was calibrated against); recomputed from the records.
Vec cohort_planted_concentration(const std::vector<SubjectRecord>& cohort,
                                 int K);

}  // namespace bgsp
