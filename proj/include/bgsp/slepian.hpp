#pragma once

#include <optional>
#include <string>

#include "bgsp/spectral.hpp"

namespace bgsp {

// Diagonal 0/1 node selector (the subset on which energy is concentrated).
struct NodeSelector {
  Vec mask;  // entries in {0,1}, at least one 1

  int n() const { return static_cast<int>(mask.size()); }
  int selected_count() const;
};

NodeSelector selector_from_nodes(int n, const std::vector<int>& nodes);
NodeSelector selector_all(int n);

enum class SlepianCriterion { EnergyConcentration, ModifiedEmbeddedDistance };

const char* slepian_criterion_name(SlepianCriterion c);
SlepianCriterion slepian_criterion_from_name(const std::string& name);

// Band-limited basis localized on a node subset.
//
// vectors = Vbar * coeffs, where Vbar holds the M lowest-frequency
// eigenvectors of a Laplacian-family basis. Under the energy criterion the
// columns diagonalize the concentration matrix C = Vbar^T M Vbar and are
// ordered by decreasing concentration mu; they are orthonormal over the whole
// graph and orthogonal over the subset. Under the modified criterion the
// columns diagonalize C2 = Lbar^{1/2} C Lbar^{1/2} and are ordered by
// increasing localized frequency xi; they are orthonormal over the whole
// graph, and the xi values play the role of graph frequencies inside the
// subset (with the full-mask/full-bandwidth case falling back to the
// eigenvalues themselves).
struct SlepianBasis {
  Mat vectors;                    // N×M (columns s_k)
  Mat coeffs;                     // M×M (columns: coefficients in Vbar)
  Vec concentration;              // mu_k = s_k^T M s_k, all columns
  std::optional<Vec> localized_freq;  // xi_k, modified criterion only
  Vec embedded_distance;          // s_k^T L s_k
  int bandwidth = 0;              // M
  SlepianCriterion criterion = SlepianCriterion::EnergyConcentration;
  NodeSelector selector;

  int n() const { return static_cast<int>(vectors.rows()); }
};

// C (energy criterion) or C2 (modified criterion) for the given selector and
// bandwidth. Laplacian-family bases only; M <= N. Numerically-zero negative
// eigenvalues (>= -1e-10) are clamped to 0 before the square root; anything
// below raises NegativeEigenvalue.
Mat concentration_matrix(const SpectralBasis& basis,
                         const NodeSelector& selector, int M,
                         SlepianCriterion criterion);

SlepianBasis slepian_basis(const SpectralBasis& basis,
                           const NodeSelector& selector, int M,
                           SlepianCriterion criterion);

// Localized low-pass filtering Y = S Gamma S^T X with
// Gamma = diag(xi_k < xi_max && mu_k > eps). Modified criterion only.
// If the gate selects nothing, Y = 0 and *empty_gate (when given) is set.
Mat slepian_filter(const SlepianBasis& slepian, double xi_max, double eps,
                   const Mat& X, bool* empty_gate = nullptr);

// Gate by count instead of threshold: selects the `gate_size` lowest-xi
// columns among those with mu_k > eps (fewer if not enough qualify). Returns
// the selected column indices in increasing-xi order.
std::vector<int> slepian_gate_lowest(const SlepianBasis& slepian,
                                     int gate_size, double eps);

// Y = S Gamma S^T X for an explicit gate (column index set).
Mat slepian_filter_gate(const SlepianBasis& slepian,
                        const std::vector<int>& gate, const Mat& X);

}  // namespace bgsp
