#include "bgsp/slepian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bgsp/errors.hpp"

namespace bgsp {

int NodeSelector::selected_count() const {
  int c = 0;
  for (int i = 0; i < mask.size(); ++i)
    if (mask(i) != 0.0) ++c;
  return c;
}

NodeSelector selector_from_nodes(int n, const std::vector<int>& nodes) {
  NodeSelector s;
  s.mask = Vec::Zero(n);
  for (int i : nodes) {
    if (i < 0 || i >= n)
      throw_error(Errc::IndexOutOfRange,
                  "selector node " + std::to_string(i) + " outside [0," +
                  std::to_string(n) + ")");
    s.mask(i) = 1.0;
  }
  if (s.selected_count() == 0)
    throw_error(Errc::EmptySelector, "selector must contain at least one node");
  return s;
}

NodeSelector selector_all(int n) {
  NodeSelector s;
  s.mask = Vec::Ones(n);
  return s;
}

const char* slepian_criterion_name(SlepianCriterion c) {
  switch (c) {
    case SlepianCriterion::EnergyConcentration: return "energy";
    case SlepianCriterion::ModifiedEmbeddedDistance: return "modified";
  }
  return "?";
}

SlepianCriterion slepian_criterion_from_name(const std::string& name) {
  if (name == "energy") return SlepianCriterion::EnergyConcentration;
  if (name == "modified") return SlepianCriterion::ModifiedEmbeddedDistance;
  throw_error(Errc::InvalidParameter, "unknown Slepian criterion '" + name + "'");
}

namespace {

void check_slepian_inputs(const SpectralBasis& basis,
                          const NodeSelector& selector, int M) {
  if (basis.variant == ShiftVariant::Adjacency)
    throw_error(Errc::WrongVariant,
                "Slepian construction requires a Laplacian-family basis");
  if (selector.n() != basis.n())
    throw_error(Errc::DimensionMismatch, "selector length != basis size");
  if (selector.selected_count() == 0)
    throw_error(Errc::EmptySelector, "selector must contain at least one node");
  for (int i = 0; i < selector.n(); ++i)
    if (selector.mask(i) != 0.0 && selector.mask(i) != 1.0)
      throw_error(Errc::InvalidParameter, "selector mask entries must be 0 or 1");
  if (M < 1 || M > basis.n())
    throw_error(Errc::BandwidthTooLarge,
                "bandwidth M = " + std::to_string(M) + " outside [1," +
                std::to_string(basis.n()) + "]");
}

// The M lowest-frequency eigenvectors / eigenvalues per the basis ordering.
Mat lowest_band(const SpectralBasis& basis, int M, Vec* lam_bar) {
  Mat Vbar(basis.n(), M);
  lam_bar->resize(M);
  for (int r = 0; r < M; ++r) {
    const int k = basis.ordering[r];
    Vbar.col(r) = basis.V.col(k);
    (*lam_bar)(r) = basis.eigenvalues(k);
  }
  return Vbar;
}

}  // namespace

Mat concentration_matrix(const SpectralBasis& basis,
                         const NodeSelector& selector, int M,
                         SlepianCriterion criterion) {
  check_slepian_inputs(basis, selector, M);
  Vec lam_bar;
  const Mat Vbar = lowest_band(basis, M, &lam_bar);
  Mat C = Vbar.transpose() * selector.mask.asDiagonal() * Vbar;
  C = 0.5 * (C + C.transpose()).eval();  // exact symmetry
  if (criterion == SlepianCriterion::EnergyConcentration) return C;
  // Modified criterion: C2 = Lbar^{1/2} C Lbar^{1/2}. Eigenvalues that are
  // zero up to rounding may come out slightly negative; clamp those before
  // the square root.
  Vec sq(M);
  for (int r = 0; r < M; ++r) {
    double lam = lam_bar(r);
    if (lam < 0.0) {
      if (lam < -1e-10)
        throw_error(Errc::NegativeEigenvalue,
                    "eigenvalue " + std::to_string(lam) +
                    " too negative for the embedded-distance scaling");
      lam = 0.0;
    }
    sq(r) = std::sqrt(lam);
  }
  Mat C2 = sq.asDiagonal() * C * sq.asDiagonal();
  C2 = 0.5 * (C2 + C2.transpose()).eval();
  return C2;
}

SlepianBasis slepian_basis(const SpectralBasis& basis,
                           const NodeSelector& selector, int M,
                           SlepianCriterion criterion) {
  const Mat C = concentration_matrix(basis, selector, M, criterion);
  Eigen::SelfAdjointEigenSolver<Mat> solver(C);
  if (solver.info() != Eigen::Success)
    throw_error(Errc::ConvergenceFailure,
                "concentration-matrix eigensolver did not converge");
  Vec lam_bar;
  const Mat Vbar = lowest_band(basis, M, &lam_bar);

  // Order the solutions: decreasing eigenvalue (= concentration) for the
  // energy criterion, increasing eigenvalue (= localized frequency) for the
  // modified criterion. The solver returns ascending order.
  std::vector<int> order(M);
  std::iota(order.begin(), order.end(), 0);
  if (criterion == SlepianCriterion::EnergyConcentration)
    std::reverse(order.begin(), order.end());

  SlepianBasis out;
  out.bandwidth = M;
  out.criterion = criterion;
  out.selector = selector;
  out.coeffs = Mat(M, M);
  Vec values(M);
  for (int c = 0; c < M; ++c) {
    out.coeffs.col(c) = solver.eigenvectors().col(order[c]);
    values(c) = solver.eigenvalues()(order[c]);
  }
  out.vectors = Vbar * out.coeffs;

  // Same deterministic sign convention as the spectral basis, applied to the
  // node-domain vectors (coefficients flip with them).
  for (int c = 0; c < M; ++c) {
    int imax = 0;
    double best = -1.0;
    for (int i = 0; i < out.vectors.rows(); ++i) {
      const double a = std::abs(out.vectors(i, c));
      if (a > best) {
        best = a;
        imax = i;
      }
    }
    if (out.vectors(imax, c) < 0.0) {
      out.vectors.col(c) = -out.vectors.col(c);
      out.coeffs.col(c) = -out.coeffs.col(c);
    }
  }

  // Concentration mu_k = s_k^T M s_k for every column, under either
  // criterion; for the energy criterion this equals the eigenvalue.
  out.concentration = Vec(M);
  for (int c = 0; c < M; ++c) {
    double mu = 0.0;
    for (int i = 0; i < out.vectors.rows(); ++i)
      if (selector.mask(i) != 0.0)
        mu += out.vectors(i, c) * out.vectors(i, c);
    out.concentration(c) = mu;
    if (mu < -1e-10 || mu > 1.0 + 1e-10)
      throw_error(Errc::ConvergenceFailure,
                  "concentration " + std::to_string(mu) + " outside [0,1]");
  }
  if (criterion == SlepianCriterion::ModifiedEmbeddedDistance)
    out.localized_freq = values;

  // Embedded distance s_k^T L s_k = stilde_k^T Lbar stilde_k.
  out.embedded_distance = Vec(M);
  for (int c = 0; c < M; ++c)
    out.embedded_distance(c) =
        out.coeffs.col(c).dot(lam_bar.cwiseProduct(out.coeffs.col(c)));

  // Whole-graph orthonormality S^T S = I (coefficients are orthonormal and
  // Vbar has orthonormal columns).
  const double ortho =
      (out.vectors.transpose() * out.vectors - Mat::Identity(M, M))
          .cwiseAbs().maxCoeff();
  if (ortho > 1e-9)
    throw_error(Errc::ConvergenceFailure,
                "Slepian orthonormality residual " + std::to_string(ortho));
  return out;
}

Mat slepian_filter(const SlepianBasis& slepian, double xi_max, double eps,
                   const Mat& X, bool* empty_gate) {
  if (slepian.criterion != SlepianCriterion::ModifiedEmbeddedDistance)
    throw_error(Errc::WrongCriterion,
                "localized filtering requires the modified criterion");
  if (!(eps > 0.0 && eps < 1.0))
    throw_error(Errc::InvalidParameter, "eps must lie in (0,1)");
  if (X.rows() != slepian.n())
    throw_error(Errc::DimensionMismatch, "signal rows != basis size");
  std::vector<int> gate;
  const Vec& xi = *slepian.localized_freq;
  for (int c = 0; c < slepian.bandwidth; ++c)
    if (xi(c) < xi_max && slepian.concentration(c) > eps) gate.push_back(c);
  if (empty_gate) *empty_gate = gate.empty();
  return slepian_filter_gate(slepian, gate, X);
}

std::vector<int> slepian_gate_lowest(const SlepianBasis& slepian,
                                     int gate_size, double eps) {
  if (slepian.criterion != SlepianCriterion::ModifiedEmbeddedDistance)
    throw_error(Errc::WrongCriterion,
                "localized gating requires the modified criterion");
  if (gate_size < 1)
    throw_error(Errc::InvalidParameter, "gate size must be >= 1");
  // Columns are already sorted by increasing xi; take the first `gate_size`
  // concentrated ones.
  std::vector<int> gate;
  for (int c = 0; c < slepian.bandwidth &&
                  static_cast<int>(gate.size()) < gate_size; ++c)
    if (slepian.concentration(c) > eps) gate.push_back(c);
  return gate;
}

Mat slepian_filter_gate(const SlepianBasis& slepian,
                        const std::vector<int>& gate, const Mat& X) {
  if (X.rows() != slepian.n())
    throw_error(Errc::DimensionMismatch, "signal rows != basis size");
  Mat Y = Mat::Zero(X.rows(), X.cols());
  for (int c : gate) {
    if (c < 0 || c >= slepian.bandwidth)
      throw_error(Errc::IndexOutOfRange, "gate column outside the basis");
    Y += slepian.vectors.col(c) * (slepian.vectors.col(c).transpose() * X);
  }
  return Y;
}

}  // namespace bgsp
