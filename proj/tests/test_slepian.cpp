#include <doctest.h>

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "bgsp/errors.hpp"
#include "bgsp/rng.hpp"
#include "bgsp/slepian.hpp"

using namespace bgsp;

namespace {

template <typename Fn>
std::optional<Errc> code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

BrainGraph random_connected(int n, Rng& rng, double p = 0.4) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, rng.uniform(0.2, 2.0)});
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j)
      if (rng.uniform01() < p) edges.push_back({i, j, rng.uniform(0.2, 2.0)});
  return build_graph(edges, n);
}

}  // namespace

TEST_CASE("2-node concentration matrix and energy basis by hand") {
  const BrainGraph g = build_graph({{0, 1, 1.0}}, 2);
  const SpectralBasis basis =
      eigendecompose(shift_operator(g, ShiftVariant::Laplacian));
  const NodeSelector sel = selector_from_nodes(2, {0});
  const Mat C = concentration_matrix(basis, sel, 2,
                                     SlepianCriterion::EnergyConcentration);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(C(i, j) == doctest::Approx(0.5).epsilon(1e-12));

  const SlepianBasis s =
      slepian_basis(basis, sel, 2, SlepianCriterion::EnergyConcentration);
  // perfectly concentrated first vector: the indicator of the selected node
  CHECK(s.vectors(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.vectors(1, 0) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(s.concentration(0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.vectors(0, 1) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(s.vectors(1, 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.concentration(1) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK_FALSE(s.localized_freq.has_value());
}

TEST_CASE("explicit gate projects onto the kept columns") {
  const BrainGraph g = build_graph({{0, 1, 1.0}}, 2);
  const SpectralBasis basis =
      eigendecompose(shift_operator(g, ShiftVariant::Laplacian));
  const SlepianBasis s =
      slepian_basis(basis, selector_from_nodes(2, {0}), 2,
                    SlepianCriterion::EnergyConcentration);
  Mat x(2, 1);
  x << 3, 4;
  const Mat kept = slepian_filter_gate(s, {0}, x);
  CHECK(kept(0, 0) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(kept(1, 0) == doctest::Approx(0.0).epsilon(1e-10));
  const Mat both = slepian_filter_gate(s, {0, 1}, x);
  CHECK((both - x).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(slepian_filter_gate(s, {}, x).cwiseAbs().maxCoeff() == 0.0);
  CHECK(code_of([&] { slepian_filter_gate(s, {2}, x); }) ==
        Errc::IndexOutOfRange);
}

TEST_CASE("full-mask full-bandwidth fallback reduces to the spectral basis") {
  // weighted path: distinct eigenvalues, so columns match up to the shared
  // sign convention
  const BrainGraph g =
      build_graph({{0, 1, 1.0}, {1, 2, 0.7}, {2, 3, 1.9}}, 4);
  const SpectralBasis basis =
      eigendecompose(shift_operator(g, ShiftVariant::Laplacian));
  const SlepianBasis s =
      slepian_basis(basis, selector_all(4), 4,
                    SlepianCriterion::ModifiedEmbeddedDistance);
  REQUIRE(s.localized_freq.has_value());
  for (int k = 0; k < 4; ++k) {
    CHECK((*s.localized_freq)(k) ==
          doctest::Approx(basis.eigenvalues(k)).epsilon(1e-9));
    CHECK(s.embedded_distance(k) ==
          doctest::Approx(basis.eigenvalues(k)).epsilon(1e-9));
    CHECK((s.vectors.col(k) - basis.V.col(basis.ordering[k]))
              .cwiseAbs()
              .maxCoeff() < 1e-8);
    CHECK(s.concentration(k) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("orthonormality and ordering invariants on random instances") {
  Rng rng(81, 0);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 6 + static_cast<int>(rng.uniform_below(8));
    const BrainGraph g = random_connected(n, rng);
    const SpectralBasis basis =
        eigendecompose(shift_operator(g, ShiftVariant::Laplacian));
    std::vector<int> nodes;
    for (int i = 0; i < n; ++i)
      if (rng.uniform01() < 0.5) nodes.push_back(i);
    if (nodes.empty()) nodes.push_back(0);
    const NodeSelector sel = selector_from_nodes(n, nodes);
    const int M = 2 + static_cast<int>(rng.uniform_below(n - 1));

    for (SlepianCriterion crit : {SlepianCriterion::EnergyConcentration,
                                  SlepianCriterion::ModifiedEmbeddedDistance}) {
      const SlepianBasis s = slepian_basis(basis, sel, M, crit);
      CHECK((s.vectors.transpose() * s.vectors - Mat::Identity(M, M))
                .cwiseAbs()
                .maxCoeff() < 1e-9);
      // every vector stays inside the low-frequency band
      Mat Vbar(n, M);
      for (int r = 0; r < M; ++r) Vbar.col(r) = basis.V.col(basis.ordering[r]);
      CHECK((Vbar * Vbar.transpose() * s.vectors - s.vectors)
                .cwiseAbs()
                .maxCoeff() < 1e-9);
      for (int c = 0; c < M; ++c) {
        CHECK(s.concentration(c) >= -1e-12);
        CHECK(s.concentration(c) <= 1.0 + 1e-12);
      }
      if (crit == SlepianCriterion::EnergyConcentration) {
        for (int c = 0; c + 1 < M; ++c)
          CHECK(s.concentration(c) >= s.concentration(c + 1) - 1e-12);
        // the subset quadratic form is diagonalized
        const Mat SMS = s.vectors.transpose() * sel.mask.asDiagonal() *
                        s.vectors;
        for (int a = 0; a < M; ++a) {
          for (int b = 0; b < M; ++b)
            if (a != b) CHECK(std::abs(SMS(a, b)) < 1e-8);
          CHECK(SMS(a, a) ==
                doctest::Approx(s.concentration(a)).epsilon(1e-9));
        }
      } else {
        REQUIRE(s.localized_freq.has_value());
        for (int c = 0; c + 1 < M; ++c)
          CHECK((*s.localized_freq)(c) <= (*s.localized_freq)(c + 1) + 1e-12);
        // xi is the quadratic form of the coefficients in C2
        const Mat C2 = concentration_matrix(basis, sel, M, crit);
        for (int c = 0; c < M; ++c)
          CHECK((*s.localized_freq)(c) ==
                doctest::Approx(s.coeffs.col(c).dot(C2 * s.coeffs.col(c)))
                    .epsilon(1e-9));
      }
      // embedded distance against the explicit Laplacian quadratic form
      const ShiftOperator L = shift_operator(g, ShiftVariant::Laplacian);
      for (int c = 0; c < M; ++c)
        CHECK(s.embedded_distance(c) ==
              doctest::Approx(s.vectors.col(c).dot(L.matrix *
                                                   s.vectors.col(c)))
                  .epsilon(1e-8));
    }
  }
}

TEST_CASE("localized filter gates by xi and concentration") {
  Rng rng(82, 0);
  const int n = 10;
  const BrainGraph g = random_connected(n, rng);
  const SpectralBasis basis =
      eigendecompose(shift_operator(g, ShiftVariant::Laplacian));
  const NodeSelector sel = selector_from_nodes(n, {0, 1, 2, 3});
  const int M = 6;
  const SlepianBasis s =
      slepian_basis(basis, sel, M, SlepianCriterion::ModifiedEmbeddedDistance);
  Mat X(n, 3);
  for (int t = 0; t < 3; ++t)
    for (int i = 0; i < n; ++i) X(i, t) = rng.normal();

  // gate everything: projector onto the whole Slepian span
  const double inf = std::numeric_limits<double>::infinity();
  bool empty = true;
  const Mat all = slepian_filter(s, inf, 1e-12, X, &empty);
  CHECK_FALSE(empty);
  std::vector<int> every(M);
  for (int c = 0; c < M; ++c) every[c] = c;
  CHECK((all - slepian_filter_gate(s, every, X)).cwiseAbs().maxCoeff() <
        1e-12);

  // impossible gate: zero output, flag set
  const Mat none = slepian_filter(s, -1.0, 1e-12, X, &empty);
  CHECK(empty);
  CHECK(none.cwiseAbs().maxCoeff() == 0.0);

  // threshold gating matches the hand-selected column set
  const double xi_max = (*s.localized_freq)(3);
  std::vector<int> expect;
  for (int c = 0; c < M; ++c)
    if ((*s.localized_freq)(c) < xi_max && s.concentration(c) > 0.2)
      expect.push_back(c);
  const Mat gated = slepian_filter(s, xi_max, 0.2, X);
  CHECK((gated - slepian_filter_gate(s, expect, X)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("count-based gate keeps the lowest-xi concentrated columns") {
  Rng rng(83, 0);
  const int n = 9;
  const BrainGraph g = random_connected(n, rng);
  const SpectralBasis basis =
      eigendecompose(shift_operator(g, ShiftVariant::Laplacian));
  const NodeSelector sel = selector_from_nodes(n, {2, 3, 4});
  const SlepianBasis s =
      slepian_basis(basis, sel, 6, SlepianCriterion::ModifiedEmbeddedDistance);
  const std::vector<int> g2 = slepian_gate_lowest(s, 2, 1e-9);
  REQUIRE(g2.size() == 2);
  // first two columns pass a tiny eps (concentrations are generically > 0)
  CHECK(g2[0] == 0);
  CHECK(g2[1] == 1);
  // a huge gate size returns every qualifying column
  const std::vector<int> g_all = slepian_gate_lowest(s, 100, 1e-9);
  std::size_t qualifying = 0;
  for (int c = 0; c < 6; ++c)
    if (s.concentration(c) > 1e-9) ++qualifying;
  CHECK(g_all.size() == qualifying);
  // eps = 1 excludes everything (mu <= 1 always)
  CHECK(slepian_gate_lowest(s, 3, 1.0).empty());
}

TEST_CASE("selector construction and validation") {
  const NodeSelector sel = selector_from_nodes(5, {1, 3, 3});
  CHECK(sel.selected_count() == 2);
  CHECK(sel.mask(1) == 1.0);
  CHECK(sel.mask(3) == 1.0);
  CHECK(selector_all(4).selected_count() == 4);
  CHECK(code_of([&] { selector_from_nodes(5, {5}); }) == Errc::IndexOutOfRange);
  CHECK(code_of([&] { selector_from_nodes(5, {-1}); }) ==
        Errc::IndexOutOfRange);
  CHECK(code_of([&] { selector_from_nodes(5, {}); }) == Errc::EmptySelector);
}

TEST_CASE("slepian input validation") {
  Rng rng(84, 0);
  const BrainGraph g = random_connected(6, rng);
  const SpectralBasis lap =
      eigendecompose(shift_operator(g, ShiftVariant::Laplacian));
  const SpectralBasis adj =
      eigendecompose(shift_operator(g, ShiftVariant::Adjacency));
  const NodeSelector sel = selector_from_nodes(6, {0, 1});
  const auto energy = SlepianCriterion::EnergyConcentration;
  CHECK(code_of([&] { slepian_basis(adj, sel, 3, energy); }) ==
        Errc::WrongVariant);
  CHECK(code_of([&] { slepian_basis(lap, selector_from_nodes(5, {0}), 3,
                                    energy); }) == Errc::DimensionMismatch);
  CHECK(code_of([&] { slepian_basis(lap, sel, 0, energy); }) ==
        Errc::BandwidthTooLarge);
  CHECK(code_of([&] { slepian_basis(lap, sel, 7, energy); }) ==
        Errc::BandwidthTooLarge);
  NodeSelector frac;
  frac.mask = Vec::Constant(6, 0.5);
  CHECK(code_of([&] { slepian_basis(lap, frac, 3, energy); }) ==
        Errc::InvalidParameter);

  const SlepianBasis se = slepian_basis(lap, sel, 4, energy);
  CHECK(code_of([&] { slepian_filter(se, 1.0, 0.5, Mat::Zero(6, 2)); }) ==
        Errc::WrongCriterion);
  CHECK(code_of([&] { slepian_gate_lowest(se, 2, 0.5); }) ==
        Errc::WrongCriterion);
  const SlepianBasis sm =
      slepian_basis(lap, sel, 4, SlepianCriterion::ModifiedEmbeddedDistance);
  CHECK(code_of([&] { slepian_filter(sm, 1.0, 0.0, Mat::Zero(6, 2)); }) ==
        Errc::InvalidParameter);
  CHECK(code_of([&] { slepian_filter(sm, 1.0, 1.0, Mat::Zero(6, 2)); }) ==
        Errc::InvalidParameter);
  CHECK(code_of([&] { slepian_filter(sm, 1.0, 0.5, Mat::Zero(5, 2)); }) ==
        Errc::DimensionMismatch);
  CHECK(code_of([&] { slepian_gate_lowest(sm, 0, 0.5); }) ==
        Errc::InvalidParameter);
}

TEST_CASE("criterion names round-trip") {
  for (SlepianCriterion c : {SlepianCriterion::EnergyConcentration,
                             SlepianCriterion::ModifiedEmbeddedDistance})
    CHECK(slepian_criterion_from_name(slepian_criterion_name(c)) == c);
  CHECK(code_of([&] { slepian_criterion_from_name("nope"); }) ==
        Errc::InvalidParameter);
}
