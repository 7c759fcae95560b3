#include "bgsp/temporal.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <string>

#include "bgsp/errors.hpp"

namespace bgsp {

namespace {

// FFTW's planner is not thread-safe; plan creation/destruction is serialized.
// Execution of a created plan is safe concurrently.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// Row-wise unnormalized c2c transform of an N×T matrix (length-T transforms,
// one per row). Eigen is column-major, so a row is strided by N with
// consecutive rows one element apart.
CMat run_fft_rows(const CMat& in, int sign) {
  const int N = static_cast<int>(in.rows());
  const int T = static_cast<int>(in.cols());
  CMat out(N, T);
  int n[1] = {T};
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan = fftw_plan_many_dft(
        1, n, N,
        reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
        nullptr, N, 1,
        reinterpret_cast<fftw_complex*>(out.data()), nullptr, N, 1,
        sign, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

double nyquist(double tr) { return 1.0 / (2.0 * tr); }

}  // namespace

CMat dft_rows(const Mat& X) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(X.cols()));
  // Unitary forward transform: row k gets (1/sqrt(T)) sum_t x_t e^{+2pi i kt/T},
  // which is FFTW's BACKWARD direction.
  return run_fft_rows(X.cast<std::complex<double>>(), FFTW_BACKWARD) * scale;
}

Mat idft_rows_real(const CMat& S) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(S.cols()));
  const CMat out = run_fft_rows(S, FFTW_FORWARD) * scale;
  const double imag_resid = out.imag().cwiseAbs().maxCoeff();
  if (imag_resid >= 1e-10)
    throw_error(Errc::AsymmetricWindow,
                "inverse transform left imaginary residue " +
                std::to_string(imag_resid));
  return out.real();
}

TemporalSpectrum dft(const GraphSignalMatrix& X) {
  if (X.t() < 2)
    throw_error(Errc::TooShort, "temporal DFT needs T >= 2, got " +
                std::to_string(X.t()));
  if (!(X.tr > 0.0))
    throw_error(Errc::InvalidParameter, "sampling period must be > 0");
  TemporalSpectrum s;
  s.coeffs = dft_rows(X.values);
  s.tr = X.tr;
  const int T = X.t();
  s.frequency_axis = Vec(T);
  for (int k = 0; k < T; ++k) {
    if (2 * k <= T)
      s.frequency_axis(k) = k / (T * X.tr);
    else
      s.frequency_axis(k) = -(static_cast<double>(T - k)) / (T * X.tr);
  }
  return s;
}

GraphSignalMatrix idft(const TemporalSpectrum& S) {
  GraphSignalMatrix X;
  X.values = idft_rows_real(S.coeffs);
  X.tr = S.tr;
  return X;
}

Mat temporal_filter(const Mat& X, const CVec& window) {
  const int T = static_cast<int>(X.cols());
  if (window.size() != T)
    throw_error(Errc::DimensionMismatch,
                "window length " + std::to_string(window.size()) +
                " != T = " + std::to_string(T));
  // Conjugate symmetry is what keeps the output real.
  const double tol = 1e-12;
  if (std::abs(window(0).imag()) > tol)
    throw_error(Errc::AsymmetricWindow, "DC gain must be real");
  if (T % 2 == 0 && std::abs(window(T / 2).imag()) > tol)
    throw_error(Errc::AsymmetricWindow, "Nyquist gain must be real");
  for (int k = 1; k < T; ++k) {
    if (std::abs(window(k) - std::conj(window(T - k))) > tol)
      throw_error(Errc::AsymmetricWindow,
                  "window bin " + std::to_string(k) +
                  " is not the conjugate of bin " + std::to_string(T - k));
  }
  CMat spec = dft_rows(X);
  for (int k = 0; k < T; ++k) spec.col(k) *= window(k);
  return idft_rows_real(spec);
}

std::vector<int> band_indices(int T, double tr, double f_lo, double f_hi) {
  if (T < 2) throw_error(Errc::TooShort, "band_indices needs T >= 2");
  if (!(tr > 0.0)) throw_error(Errc::InvalidParameter, "TR must be > 0");
  const double nyq = nyquist(tr);
  const double ftol = 1e-9 * nyq;
  if (f_lo < -ftol || !(f_lo < f_hi))
    throw_error(Errc::InvalidParameter,
                "band edges must satisfy 0 <= f_lo < f_hi");
  if (f_hi > nyq + ftol)
    throw_error(Errc::AboveNyquist,
                "band upper edge " + std::to_string(f_hi) +
                " Hz above Nyquist " + std::to_string(nyq) + " Hz");
  std::vector<int> bins;
  for (int k = 0; 2 * k <= T; ++k) {
    const double f = k / (T * tr);
    bool in_band = (f >= f_lo - ftol) && (f < f_hi - ftol);
    // Half-open bands leave the Nyquist frequency itself uncovered; it is
    // assigned to the band whose upper edge sits at Nyquist.
    if (!in_band && 2 * k == T && f_hi >= nyq - ftol) in_band = true;
    if (in_band) {
      bins.push_back(k);
      if (k > 0 && 2 * k != T) bins.push_back(T - k);
    }
  }
  std::sort(bins.begin(), bins.end());
  return bins;
}

CVec band_window(int T, double tr, double f_lo, double f_hi) {
  CVec h = CVec::Zero(T);
  for (int k : band_indices(T, tr, f_lo, f_hi)) h(k) = 1.0;
  return h;
}

CMat joint_spectrum(const SpectralBasis& basis, const GraphSignalMatrix& X) {
  if (X.n() != basis.n())
    throw_error(Errc::DimensionMismatch, "signal rows != basis size");
  return dft_rows(basis.V.transpose() * X.values);
}

}  // namespace bgsp
