#pragma once

#include <complex>
#include <vector>

#include "bgsp/spectral.hpp"

namespace bgsp {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// N×T real signal matrix with a sampling period (seconds per column).
struct GraphSignalMatrix {
  Mat values;
  double tr = 1.0;

  int n() const { return static_cast<int>(values.rows()); }
  int t() const { return static_cast<int>(values.cols()); }
};

// Row-wise unitary temporal spectrum. frequency_axis[k] = k/(T*tr) Hz for
// k <= T/2; bins above T/2 carry the aliased negative frequencies
// -(T-k)/(T*tr).
struct TemporalSpectrum {
  CMat coeffs;
  Vec frequency_axis;
  double tr = 1.0;
};

// Unitary DFT along rows (1/sqrt(T) both directions, so Parseval holds with
// no scale factor). Requires T >= 2.
TemporalSpectrum dft(const GraphSignalMatrix& X);
GraphSignalMatrix idft(const TemporalSpectrum& S);

// Low-level row transforms used across the library; both unitary.
CMat dft_rows(const Mat& X);
Mat idft_rows_real(const CMat& S);  // checks the imaginary residue is < 1e-10

// Y = row-wise inverse-DFT( window .* DFT(X) ). The window must be
// conjugate-symmetric (h[k] == conj(h[T-k]), h[0] and the even-T Nyquist bin
// real) so the output is real; otherwise AsymmetricWindow is raised.
Mat temporal_filter(const Mat& X, const CVec& window);

// DFT bin indices for the half-open band [f_lo, f_hi) Hz: bins k <= T/2 with
// f_lo <= k/(T*tr) < f_hi, plus their mirror bins T-k. A band whose upper
// edge equals the Nyquist frequency also includes the Nyquist bin (even T), so
// a partition of [0, Nyquist] covers every bin exactly once.
std::vector<int> band_indices(int T, double tr, double f_lo, double f_hi);

// Real indicator window over the bins of a band, suitable for temporal_filter.
CVec band_window(int T, double tr, double f_lo, double f_hi);

// Joint graph-temporal spectrum V^T X F^H (the two transforms act on
// different axes and commute).
CMat joint_spectrum(const SpectralBasis& basis, const GraphSignalMatrix& X);

}  // namespace bgsp
