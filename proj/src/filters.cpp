#include "bgsp/filters.hpp"

#include <cmath>
#include <string>

#include "bgsp/errors.hpp"

namespace bgsp {

namespace {

SpectralFilter indicator_filter(const SpectralBasis& basis,
                                const std::vector<int>& freq_ranks,
                                FilterKind kind) {
  Vec gains = Vec::Zero(basis.n());
  for (int r : freq_ranks) {
    if (r < 0 || r >= basis.n())
      throw_error(Errc::BandOutOfRange,
                  "frequency rank " + std::to_string(r) + " outside [0," +
                  std::to_string(basis.n()) + ")");
    gains(basis.ordering[r]) = 1.0;
  }
  return SpectralFilter{kind, std::move(gains)};
}

}  // namespace

SpectralFilter make_ideal_low(const SpectralBasis& basis, int K) {
  if (K <= 0 || K > basis.n())
    throw_error(Errc::BandOutOfRange,
                "K = " + std::to_string(K) + " outside (0," +
                std::to_string(basis.n()) + "]");
  std::vector<int> ranks(K);
  for (int r = 0; r < K; ++r) ranks[r] = r;
  return indicator_filter(basis, ranks, FilterKind::IdealLow);
}

SpectralFilter make_ideal_high(const SpectralBasis& basis, int K) {
  if (K <= 0 || K > basis.n())
    throw_error(Errc::BandOutOfRange,
                "K = " + std::to_string(K) + " outside (0," +
                std::to_string(basis.n()) + "]");
  std::vector<int> ranks(K);
  for (int r = 0; r < K; ++r) ranks[r] = basis.n() - K + r;
  return indicator_filter(basis, ranks, FilterKind::IdealHigh);
}

SpectralFilter make_ideal_band(const SpectralBasis& basis,
                               const std::vector<int>& freq_ranks) {
  return indicator_filter(basis, freq_ranks, FilterKind::IdealBand);
}

SpectralFilter diffusion_filter(const SpectralBasis& basis, double tau) {
  if (basis.variant == ShiftVariant::Adjacency)
    throw_error(Errc::WrongVariant,
                "diffusion window requires a Laplacian-family basis");
  if (tau < 0.0)
    throw_error(Errc::InvalidParameter, "diffusion time must be >= 0");
  Vec gains(basis.n());
  for (int k = 0; k < basis.n(); ++k)
    gains(k) = std::exp(-tau * basis.eigenvalues(k));
  return SpectralFilter{FilterKind::Diffusion, std::move(gains)};
}

SpectralFilter custom_filter(const SpectralBasis& basis, const Vec& gains) {
  if (gains.size() != basis.n())
    throw_error(Errc::DimensionMismatch, "gain vector length != basis size");
  return SpectralFilter{FilterKind::Custom, gains};
}

Mat apply_spectral_filter(const SpectralBasis& basis,
                          const SpectralFilter& filter, const Mat& X) {
  if (X.rows() != basis.n())
    throw_error(Errc::DimensionMismatch, "signal rows != basis size");
  if (filter.gains.size() != basis.n())
    throw_error(Errc::DimensionMismatch, "filter length != basis size");
  return basis.V * (filter.gains.asDiagonal() * (basis.V.transpose() * X));
}

Mat polynomial_filter_apply(const ShiftOperator& shift,
                            const std::vector<double>& coeffs, const Mat& X) {
  if (X.rows() != shift.matrix.rows())
    throw_error(Errc::DimensionMismatch, "signal rows != shift size");
  if (coeffs.empty()) return Mat::Zero(X.rows(), X.cols());
  // Horner: Y = (...((c_M X) S + c_{M-1} X) S + ...) + c_0 X, evaluated as
  // Y <- S*Y + c_m X, so only shift-vector products are formed.
  const int M = static_cast<int>(coeffs.size()) - 1;
  Mat Y = coeffs[M] * X;
  for (int m = M - 1; m >= 0; --m) Y = shift.matrix * Y + coeffs[m] * X;
  return Y;
}

Vec graph_convolution(const SpectralBasis& basis, const Vec& gains,
                      const Vec& x) {
  if (x.size() != basis.n())
    throw_error(Errc::DimensionMismatch, "signal length != basis size");
  if (gains.size() != basis.n())
    throw_error(Errc::DimensionMismatch, "gain vector length != basis size");
  // Explicit synthesis sum: y = sum_k v_k g_k <v_k, x>.
  Vec y = Vec::Zero(basis.n());
  for (int k = 0; k < basis.n(); ++k)
    y += basis.V.col(k) * (gains(k) * basis.V.col(k).dot(x));
  return y;
}

}  // namespace bgsp
