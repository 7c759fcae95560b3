#include "bgsp/surrogate.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bgsp/errors.hpp"

namespace bgsp {

const char* surrogate_mode_name(SurrogateMode m) {
  switch (m) {
    case SurrogateMode::GraphSignFlip: return "graph";
    case SurrogateMode::TemporalPhase: return "temporal";
    case SurrogateMode::Combined: return "combined";
  }
  return "?";
}

SurrogateMode surrogate_mode_from_name(const std::string& name) {
  if (name == "graph") return SurrogateMode::GraphSignFlip;
  if (name == "temporal") return SurrogateMode::TemporalPhase;
  if (name == "combined") return SurrogateMode::Combined;
  throw_error(Errc::InvalidParameter, "unknown surrogate mode '" + name + "'");
}

namespace {

// Hermitian-symmetric diagonal of unit phases: bin 0 (and the Nyquist bin for
// even T) stays at phase 0 so real signals map to real signals and row means
// are preserved. One uniform draw per bin 1..ceil(T/2)-1.
CVec draw_phase_diagonal(int T, Rng& rng) {
  CVec ph = CVec::Ones(T);
  const int half = (T - 1) / 2;
  for (int k = 1; k <= half; ++k) {
    const double phi = 2.0 * std::numbers::pi * rng.uniform01();
    ph(k) = std::complex<double>(std::cos(phi), std::sin(phi));
    ph(T - k) = std::conj(ph(k));
  }
  return ph;
}

Vec draw_sign_diagonal(int n, Rng& rng) {
  Vec phi(n);
  for (int i = 0; i < n; ++i) phi(i) = rng.sign();
  return phi;
}

}  // namespace

Mat phase_randomize(const Mat& X, Rng& rng) {
  if (X.cols() < 3)
    throw_error(Errc::TooShort, "phase randomization needs T >= 3, got " +
                std::to_string(X.cols()));
  const CVec ph = draw_phase_diagonal(static_cast<int>(X.cols()), rng);
  CMat spec = dft_rows(X);
  for (int k = 0; k < spec.cols(); ++k) spec.col(k) *= ph(k);
  return idft_rows_real(spec);
}

Mat graph_sign_flip(const SpectralBasis& basis, const Mat& X, Rng& rng) {
  if (X.rows() != basis.n())
    throw_error(Errc::DimensionMismatch, "signal rows != basis size");
  const Vec phi = draw_sign_diagonal(basis.n(), rng);
  return basis.V * (phi.asDiagonal() * (basis.V.transpose() * X));
}

Mat combined_surrogate(const SpectralBasis& basis, const Mat& X, Rng& rng) {
  if (X.rows() != basis.n())
    throw_error(Errc::DimensionMismatch, "signal rows != basis size");
  // Temporal randomization first, then the graph-domain flip; the temporal
  // phase draws are consumed before the sign draws.
  const Mat Xt = phase_randomize(X, rng);
  return graph_sign_flip(basis, Xt, rng);
}

SurrogateEnsemble::SurrogateEnsemble(const SurrogateSpec& spec,
                                     const SpectralBasis& basis, const Mat& X)
    : spec_(spec), basis_(basis), X_(X) {
  if (spec_.count < 1)
    throw_error(Errc::InvalidParameter, "surrogate count must be >= 1");
  if (X_.rows() != basis_.n())
    throw_error(Errc::DimensionMismatch, "signal rows != basis size");
  if (spec_.filter && spec_.filter->gains.size() != basis_.n())
    throw_error(Errc::DimensionMismatch, "filter length != basis size");
  if (spec_.mode != SurrogateMode::TemporalPhase)
    coeffs_ = basis_.V.transpose() * X_;
}

Mat SurrogateEnsemble::realization(int i) const {
  if (i < 0 || i >= spec_.count)
    throw_error(Errc::IndexOutOfRange,
                "realization " + std::to_string(i) + " outside [0," +
                std::to_string(spec_.count) + ")");
  Rng rng(spec_.seed, static_cast<std::uint64_t>(i));
  switch (spec_.mode) {
    case SurrogateMode::GraphSignFlip: {
      Vec phi = draw_sign_diagonal(basis_.n(), rng);
      if (spec_.filter) phi = phi.cwiseProduct(spec_.filter->gains);
      return basis_.V * (phi.asDiagonal() * coeffs_);
    }
    case SurrogateMode::TemporalPhase: {
      Mat Y = phase_randomize(X_, rng);
      if (spec_.filter)
        Y = basis_.V * (spec_.filter->gains.asDiagonal() *
                        (basis_.V.transpose() * Y));
      return Y;
    }
    case SurrogateMode::Combined: {
      const Mat Xt = phase_randomize(X_, rng);
      Vec phi = draw_sign_diagonal(basis_.n(), rng);
      if (spec_.filter) phi = phi.cwiseProduct(spec_.filter->gains);
      return basis_.V * (phi.asDiagonal() * (basis_.V.transpose() * Xt));
    }
  }
  throw_error(Errc::InvalidParameter, "unreachable surrogate mode");
}

}  // namespace bgsp
