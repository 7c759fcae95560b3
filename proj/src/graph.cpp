#include "bgsp/graph.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "bgsp/errors.hpp"

namespace bgsp {

const char* shift_variant_name(ShiftVariant v) {
  switch (v) {
    case ShiftVariant::Adjacency: return "adjacency";
    case ShiftVariant::Laplacian: return "laplacian";
    case ShiftVariant::SymNormalizedLaplacian: return "sym-normalized-laplacian";
    case ShiftVariant::RwNormalizedLaplacian: return "rw-normalized-laplacian";
  }
  return "?";
}

ShiftVariant shift_variant_from_name(const std::string& name) {
  if (name == "adjacency") return ShiftVariant::Adjacency;
  if (name == "laplacian") return ShiftVariant::Laplacian;
  if (name == "sym-normalized-laplacian") return ShiftVariant::SymNormalizedLaplacian;
  if (name == "rw-normalized-laplacian") return ShiftVariant::RwNormalizedLaplacian;
  throw_error(Errc::InvalidParameter, "unknown shift variant '" + name + "'");
}

namespace {

void check_optional_fields(const BrainGraph& g) {
  if (!g.labels.empty() && static_cast<int>(g.labels.size()) != g.n)
    throw_error(Errc::DimensionMismatch, "labels size " +
                std::to_string(g.labels.size()) + " != n " + std::to_string(g.n));
  if (!g.systems.empty() && static_cast<int>(g.systems.size()) != g.n)
    throw_error(Errc::DimensionMismatch, "systems size " +
                std::to_string(g.systems.size()) + " != n " + std::to_string(g.n));
}

}  // namespace

BrainGraph build_graph(const std::vector<Edge>& edges, int n_nodes,
                       std::vector<std::string> labels,
                       std::vector<int> systems) {
  if (n_nodes <= 0)
    throw_error(Errc::TooSmall, "graph needs at least one node");
  BrainGraph g;
  g.n = n_nodes;
  g.W = Mat::Zero(n_nodes, n_nodes);
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    if (e.i < 0 || e.i >= n_nodes || e.j < 0 || e.j >= n_nodes)
      throw_error(Errc::IndexOutOfRange,
                  "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                  ") outside [0," + std::to_string(n_nodes) + ")");
    if (e.i == e.j)
      throw_error(Errc::SelfLoop, "self-loop at node " + std::to_string(e.i));
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw_error(Errc::NegativeWeight,
                  "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                  ") has non-positive weight " + std::to_string(e.w));
    auto key = std::minmax(e.i, e.j);
    if (!seen.insert(key).second)
      throw_error(Errc::DuplicateEdge,
                  "duplicate edge (" + std::to_string(e.i) + "," +
                  std::to_string(e.j) + ")");
    g.W(e.i, e.j) = e.w;
    g.W(e.j, e.i) = e.w;
  }
  g.labels = std::move(labels);
  g.systems = std::move(systems);
  check_optional_fields(g);
  return g;
}

BrainGraph graph_from_dense(const Mat& W, std::vector<std::string> labels,
                            std::vector<int> systems) {
  if (W.rows() != W.cols())
    throw_error(Errc::DimensionMismatch,
                "weight matrix is " + std::to_string(W.rows()) + "x" +
                std::to_string(W.cols()));
  const double maxdiff = (W - W.transpose()).cwiseAbs().maxCoeff();
  if (maxdiff > 1e-12)
    throw_error(Errc::AsymmetricMatrix,
                "max |W - W^T| = " + std::to_string(maxdiff));
  for (int i = 0; i < W.rows(); ++i) {
    if (W(i, i) != 0.0)
      throw_error(Errc::SelfLoop, "nonzero diagonal at node " + std::to_string(i));
    for (int j = 0; j < W.cols(); ++j)
      if (W(i, j) < 0.0 || !std::isfinite(W(i, j)))
        throw_error(Errc::NegativeWeight,
                    "W(" + std::to_string(i) + "," + std::to_string(j) +
                    ") = " + std::to_string(W(i, j)));
  }
  BrainGraph g;
  g.n = static_cast<int>(W.rows());
  // Symmetrize exactly so downstream symmetry checks never see the loader's
  // sub-1e-12 asymmetry.
  g.W = 0.5 * (W + W.transpose());
  g.labels = std::move(labels);
  g.systems = std::move(systems);
  check_optional_fields(g);
  return g;
}

BrainGraph cycle_graph(int T) {
  if (T < 3)
    throw_error(Errc::TooSmall, "cycle graph needs T >= 3, got " + std::to_string(T));
  BrainGraph g;
  g.n = T;
  g.W = Mat::Zero(T, T);
  for (int i = 0; i < T; ++i) {
    const int j = (i + 1) % T;
    g.W(i, j) = 1.0;
    g.W(j, i) = 1.0;
  }
  return g;
}

Vec degrees(const BrainGraph& g) { return g.W.rowwise().sum(); }

ShiftOperator shift_operator(const BrainGraph& g, ShiftVariant variant) {
  ShiftOperator s;
  s.variant = variant;
  s.source = g;
  const Vec d = degrees(g);
  switch (variant) {
    case ShiftVariant::Adjacency:
      s.matrix = g.W;
      break;
    case ShiftVariant::Laplacian:
      s.matrix = Mat(d.asDiagonal()) - g.W;
      break;
    case ShiftVariant::SymNormalizedLaplacian:
    case ShiftVariant::RwNormalizedLaplacian: {
      for (int i = 0; i < g.n; ++i)
        if (d(i) <= 0.0)
          throw_error(Errc::IsolatedNode,
                      "node " + std::to_string(i) +
                      " has zero degree; normalized variants undefined");
      const Mat L = Mat(d.asDiagonal()) - g.W;
      if (variant == ShiftVariant::SymNormalizedLaplacian) {
        const Vec dinvsqrt = d.array().rsqrt();
        s.matrix = dinvsqrt.asDiagonal() * L * dinvsqrt.asDiagonal();
        // Force exact symmetry against rounding in the two-sided scaling.
        s.matrix = 0.5 * (s.matrix + s.matrix.transpose()).eval();
      } else {
        s.matrix = d.cwiseInverse().asDiagonal() * L;
      }
      break;
    }
  }
  return s;
}

bool is_connected(const BrainGraph& g) {
  if (g.n <= 1) return true;
  std::vector<int> parent(g.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (g.W(i, j) != 0.0) {
        const int a = find(i), b = find(j);
        if (a != b) parent[a] = b;
      }
  const int root = find(0);
  for (int i = 1; i < g.n; ++i)
    if (find(i) != root) return false;
  return true;
}

}  // namespace bgsp
