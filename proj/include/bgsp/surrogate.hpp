#pragma once

#include <cstdint>
#include <optional>

#include "bgsp/filters.hpp"
#include "bgsp/rng.hpp"
#include "bgsp/temporal.hpp"

namespace bgsp {

enum class SurrogateMode { GraphSignFlip, TemporalPhase, Combined };

const char* surrogate_mode_name(SurrogateMode m);
SurrogateMode surrogate_mode_from_name(const std::string& name);

// Null-model specification. `filter`, when set, is applied inside the null
// pipeline so each realization is already the filtered component.
struct SurrogateSpec {
  SurrogateMode mode = SurrogateMode::GraphSignFlip;
  int count = 1;
  std::uint64_t seed = 0;
  std::optional<SpectralFilter> filter;
};

// Temporal phase randomization: multiply each row's DFT by one shared
// diagonal of unit-modulus phases, Hermitian-symmetric so the output is real.
// Bin 0 (and the Nyquist bin for even T) keeps phase 0, preserving row means.
// Draw order: one uniform in [0,1) per bin k = 1 .. ceil(T/2)-1.
Mat phase_randomize(const Mat& X, Rng& rng);

// Graph-spectral sign flip: Y = V diag(phi) V^T X with phi uniform on
// {-1,+1}^N. Draw order: one sign per storage index 0..N-1.
Mat graph_sign_flip(const SpectralBasis& basis, const Mat& X, Rng& rng);

// Time-domain phase randomization followed by the graph sign flip (temporal
// draws consumed first).
Mat combined_surrogate(const SpectralBasis& basis, const Mat& X, Rng& rng);

// Streamed, seed-addressed surrogate ensemble: realization i is generated
// from stream (spec.seed, i) alone, so draws are reproducible in isolation
// and in any order. When spec.filter is set the realization is
// V diag(phi) diag(g) V^T X' (the filter composed inside, next to the
// coefficients), X' being the phase-randomized input for temporal/combined
// modes.
class SurrogateEnsemble {
 public:
  SurrogateEnsemble(const SurrogateSpec& spec, const SpectralBasis& basis,
                    const Mat& X);

  int count() const { return spec_.count; }
  const SurrogateSpec& spec() const { return spec_; }

  // Thread-safe: depends only on immutable members and (seed, i).
  Mat realization(int i) const;

 private:
  SurrogateSpec spec_;
  const SpectralBasis& basis_;
  Mat X_;
  Mat coeffs_;  // V^T X, reused by the sign-flip path
};

}  // namespace bgsp
