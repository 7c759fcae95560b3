#pragma once

#include <vector>

#include "bgsp/graph.hpp"

namespace bgsp {

// Orthonormal eigenbasis of a symmetric shift operator.
//
// Storage order is the eigensolver's ascending-eigenvalue order. `ordering`
// maps frequency rank -> storage index: ordering[0] is the storage position of
// the lowest graph frequency. For Laplacian-family operators low frequency
// means small eigenvalue (ordering is the identity); for the adjacency it
// means large eigenvalue (ordering reverses storage), with ties kept stable on
// storage index.
//
// Sign convention: each eigenvector column is flipped so that its entry of
// largest absolute value is positive (ties broken by lowest index), making
// results reproducible across runs and platforms. Individual columns inside a
// degenerate eigenspace are still solver-dependent; any property involving
// degenerate spectra must be stated through eigenspace projectors.
struct SpectralBasis {
  ShiftVariant variant;
  Vec eigenvalues;       // ascending
  Mat V;                 // columns: unit-norm eigenvectors
  std::vector<int> ordering;  // frequency rank -> storage index

  int n() const { return static_cast<int>(eigenvalues.size()); }
};

// Frequency ordering for a given spectrum/variant, stable under ties.
std::vector<int> frequency_order(const Vec& eigenvalues, ShiftVariant variant);

// Full dense symmetric eigendecomposition. Rejects non-symmetric variants and
// (defensively) asymmetric matrices. Checks residuals, orthonormality, and
// Laplacian positive semi-definiteness (min eigenvalue >= -1e-10).
SpectralBasis eigendecompose(const ShiftOperator& shift);

// Graph Fourier transform pair: coefficients = V^T X, signal = V coefficients.
Mat gft(const SpectralBasis& basis, const Mat& X);
Mat igft(const SpectralBasis& basis, const Mat& coeffs);

// Total variation ||x - S x / lambda_max(S)||_1, where lambda_max is the
// eigenvalue of largest magnitude. Errors when lambda_max == 0.
double total_variation(const ShiftOperator& shift, const Vec& x);

// Quadratic form x^T S x.
double quadratic_form(const ShiftOperator& shift, const Vec& x);

}  // namespace bgsp
