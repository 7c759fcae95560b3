#include "bgsp/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bgsp/errors.hpp"

namespace bgsp {

std::vector<int> frequency_order(const Vec& eigenvalues, ShiftVariant variant) {
  std::vector<int> order(eigenvalues.size());
  std::iota(order.begin(), order.end(), 0);
  if (variant == ShiftVariant::Adjacency) {
    // Low graph frequency = large adjacency eigenvalue.
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return eigenvalues(a) > eigenvalues(b);
    });
  } else {
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return eigenvalues(a) < eigenvalues(b);
    });
  }
  return order;
}

namespace {

void apply_sign_convention(Mat& V) {
  for (int k = 0; k < V.cols(); ++k) {
    int imax = 0;
    double best = -1.0;
    for (int i = 0; i < V.rows(); ++i) {
      const double a = std::abs(V(i, k));
      if (a > best) {  // strict > breaks ties toward the lowest index
        best = a;
        imax = i;
      }
    }
    if (V(imax, k) < 0.0) V.col(k) = -V.col(k);
  }
}

}  // namespace

SpectralBasis eigendecompose(const ShiftOperator& shift) {
  if (!shift.symmetric_variant())
    throw_error(Errc::NonSymmetricShift,
                std::string(shift_variant_name(shift.variant)) +
                " is not symmetric; no orthonormal eigenbasis");
  const Mat& S = shift.matrix;
  if (S.rows() != S.cols())
    throw_error(Errc::DimensionMismatch, "shift matrix not square");
  const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12)
    throw_error(Errc::NonSymmetricShift,
                "matrix asymmetry " + std::to_string(asym) + " exceeds 1e-12");

  Eigen::SelfAdjointEigenSolver<Mat> solver(S);
  if (solver.info() != Eigen::Success)
    throw_error(Errc::ConvergenceFailure, "symmetric eigensolver did not converge");

  SpectralBasis basis;
  basis.variant = shift.variant;
  basis.eigenvalues = solver.eigenvalues();
  basis.V = solver.eigenvectors();
  apply_sign_convention(basis.V);
  basis.ordering = frequency_order(basis.eigenvalues, basis.variant);

  // Post-conditions: orthonormal columns and small eigen-residuals.
  const int n = basis.n();
  const double ortho = (basis.V.transpose() * basis.V - Mat::Identity(n, n))
                           .cwiseAbs().maxCoeff();
  if (ortho > 1e-9)
    throw_error(Errc::ConvergenceFailure,
                "eigenvector orthonormality residual " + std::to_string(ortho));
  const double scale = std::max(1.0, basis.eigenvalues.cwiseAbs().maxCoeff());
  const double resid =
      (S * basis.V - basis.V * basis.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff();
  if (resid > 1e-8 * scale)
    throw_error(Errc::ConvergenceFailure,
                "eigen residual " + std::to_string(resid) + " too large");
  if (shift.variant == ShiftVariant::Laplacian ||
      shift.variant == ShiftVariant::SymNormalizedLaplacian) {
    if (basis.eigenvalues.minCoeff() < -1e-10)
      throw_error(Errc::NegativeEigenvalue,
                  "Laplacian minimum eigenvalue " +
                  std::to_string(basis.eigenvalues.minCoeff()));
  }
  return basis;
}

Mat gft(const SpectralBasis& basis, const Mat& X) {
  if (X.rows() != basis.n())
    throw_error(Errc::DimensionMismatch,
                "signal has " + std::to_string(X.rows()) + " rows, basis " +
                std::to_string(basis.n()));
  return basis.V.transpose() * X;
}

Mat igft(const SpectralBasis& basis, const Mat& coeffs) {
  if (coeffs.rows() != basis.n())
    throw_error(Errc::DimensionMismatch,
                "coefficients have " + std::to_string(coeffs.rows()) +
                " rows, basis " + std::to_string(basis.n()));
  return basis.V * coeffs;
}

double total_variation(const ShiftOperator& shift, const Vec& x) {
  if (x.size() != shift.matrix.rows())
    throw_error(Errc::DimensionMismatch, "signal length does not match shift");
  // Largest-magnitude eigenvalue. The symmetric variants reuse the
  // eigensolver; the random-walk Laplacian has the same spectrum as the
  // symmetric normalized one (similarity transform), so its magnitude bound
  // is taken from there.
  double lam_max;
  if (shift.symmetric_variant()) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(shift.matrix);
    if (solver.info() != Eigen::Success)
      throw_error(Errc::ConvergenceFailure, "eigensolver failed in total_variation");
    const Vec ev = solver.eigenvalues();
    lam_max = std::abs(ev(0)) > std::abs(ev(ev.size() - 1)) ? ev(0) : ev(ev.size() - 1);
  } else {
    const ShiftOperator sym =
        shift_operator(shift.source, ShiftVariant::SymNormalizedLaplacian);
    Eigen::SelfAdjointEigenSolver<Mat> solver(sym.matrix);
    if (solver.info() != Eigen::Success)
      throw_error(Errc::ConvergenceFailure, "eigensolver failed in total_variation");
    const Vec ev = solver.eigenvalues();
    lam_max = std::abs(ev(0)) > std::abs(ev(ev.size() - 1)) ? ev(0) : ev(ev.size() - 1);
  }
  if (lam_max == 0.0)
    throw_error(Errc::ZeroMaxEigenvalue,
                "total variation undefined: lambda_max = 0");
  return (x - shift.matrix * x / lam_max).lpNorm<1>();
}

double quadratic_form(const ShiftOperator& shift, const Vec& x) {
  if (x.size() != shift.matrix.rows())
    throw_error(Errc::DimensionMismatch, "signal length does not match shift");
  return x.dot(shift.matrix * x);
}

}  // namespace bgsp
