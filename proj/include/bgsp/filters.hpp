#pragma once

#include <vector>

#include "bgsp/spectral.hpp"

namespace bgsp {

enum class FilterKind { IdealLow, IdealHigh, IdealBand, Diffusion, Custom };

// Spectral filter: one gain per eigenvector, stored in the basis's storage
// order (not frequency-rank order).
struct SpectralFilter {
  FilterKind kind;
  Vec gains;
};

// Indicator filters over frequency ranks. IdealLow(K) passes the K lowest
// graph frequencies per the basis ordering, IdealHigh(K) the K highest;
// make_ideal_band passes an explicit set of frequency ranks.
SpectralFilter make_ideal_low(const SpectralBasis& basis, int K);
SpectralFilter make_ideal_high(const SpectralBasis& basis, int K);
SpectralFilter make_ideal_band(const SpectralBasis& basis,
                               const std::vector<int>& freq_ranks);

// Heat-kernel window g(lambda) = exp(-tau*lambda); Laplacian-family bases
// only (on adjacency spectra the same window would invert its meaning).
SpectralFilter diffusion_filter(const SpectralBasis& basis, double tau);

// Arbitrary gains given in storage order.
SpectralFilter custom_filter(const SpectralBasis& basis, const Vec& gains);

// Y = V diag(g) V^T X.
Mat apply_spectral_filter(const SpectralBasis& basis,
                          const SpectralFilter& filter, const Mat& X);

// Y = sum_m c_m S^m X evaluated by Horner-style iterated shifts; S^m is never
// materialized.
Mat polynomial_filter_apply(const ShiftOperator& shift,
                            const std::vector<double>& coeffs, const Mat& X);

// Graph convolution of a single signal with a spectral window, evaluated as
// the explicit synthesis sum y = sum_k v_k g(lambda_k) <v_k, x>.
Vec graph_convolution(const SpectralBasis& basis, const Vec& gains,
                      const Vec& x);

}  // namespace bgsp
