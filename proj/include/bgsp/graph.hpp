#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace bgsp {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct Edge {
  int i;
  int j;
  double w;
};

// Weighted undirected graph. Node indices are 0-based everywhere.
// `systems` optionally tags each node with an integer group id (-1 = untagged);
// it is either empty or of size n.
struct BrainGraph {
  int n = 0;
  Mat W;  // n×n, symmetric, nonnegative, zero diagonal
  std::vector<std::string> labels;
  std::vector<int> systems;

  bool has_systems() const { return !systems.empty(); }
};

enum class ShiftVariant {
  Adjacency,
  Laplacian,
  SymNormalizedLaplacian,
  RwNormalizedLaplacian,
};

const char* shift_variant_name(ShiftVariant v);
ShiftVariant shift_variant_from_name(const std::string& name);

// A graph shift operator derived from a graph. RwNormalizedLaplacian is the
// one non-symmetric variant; it can be built and applied but the spectral
// module refuses to eigendecompose it.
struct ShiftOperator {
  ShiftVariant variant;
  Mat matrix;
  BrainGraph source;

  bool symmetric_variant() const {
    return variant != ShiftVariant::RwNormalizedLaplacian;
  }
};

// Assemble and validate a graph from an edge list. Rejects out-of-range
// indices, non-positive weights, self-loops, and duplicate edges (duplicates
// are an error, not summed, to surface ingestion mistakes early).
BrainGraph build_graph(const std::vector<Edge>& edges, int n_nodes,
                       std::vector<std::string> labels = {},
                       std::vector<int> systems = {});

// Validate an already-assembled weight matrix (symmetry, nonnegativity, zero
// diagonal); used by the dense loaders.
BrainGraph graph_from_dense(const Mat& W, std::vector<std::string> labels = {},
                            std::vector<int> systems = {});

// Ring of T nodes with unit weights; requires T >= 3.
BrainGraph cycle_graph(int T);

// Node degrees d_i = sum_j W[i,j].
Vec degrees(const BrainGraph& g);

// Build the requested shift operator. Normalized variants require every
// degree > 0.
ShiftOperator shift_operator(const BrainGraph& g, ShiftVariant variant);

// True if the graph is connected (union-find over nonzero edges).
bool is_connected(const BrainGraph& g);

}  // namespace bgsp
