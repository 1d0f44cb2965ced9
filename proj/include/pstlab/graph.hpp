#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace pstlab {

struct Edge {
  int u = 0;  // u < v after normalization
  int v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Weighted undirected simple graph on vertices 0..n-1.
//
// Edges are normalized to u < v and kept sorted lexicographically, so two
// graphs with the same edge set compare equal and serialize identically.
// Disconnected graphs are allowed; connected() reports it.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<Edge> edges);

  int size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  // Neighbours of v with the connecting edge weight, sorted by vertex.
  struct Neighbor {
    int vertex;
    double weight;
  };
  std::span<const Neighbor> neighbors(int v) const;
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  bool has_edge(int u, int v) const;
  double weight(int u, int v) const;  // 0 when absent
  bool connected() const;

  Eigen::MatrixXd adjacency() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adj_;
};

// Layered view of a graph: columns are BFS distance classes from a root.
// Index i below is 0-based (column i here is column i+1 in the usual
// one-based numbering).
struct ColumnDecomposition {
  std::vector<std::vector<int>> columns;
  std::vector<int> forward;   // r_i: edges from each vertex of column i to column i+1
  std::vector<int> backward;  // s_i: edges from each vertex of column i to column i-1
  std::vector<int> occupation;  // b_i = |column i|

  int column_count() const { return static_cast<int>(columns.size()); }
};

Graph path(int n);
Graph cycle(int n);
Graph star(int leaves);
Graph cartesian_product(const Graph& g, const Graph& h);

// d-fold Cartesian product of path(links+1). Vertex 0 and vertex
// (links+1)^d - 1 are antipodal.
Graph hypercube(int links, int d);

ColumnDecomposition column_decompose(const Graph& g, int root);

// Random column-regular graph with the one-link hypercube's column occupations
// b_i = C(n_c-1, i-1) and degrees r_i = n_c-i, s_i = i-1. Vertices are
// numbered column by column, so vertex 0 is the single vertex of the first
// column and the last vertex is the single vertex of the final column.
Graph scrambled_hypercube(int column_count, std::uint64_t seed);

// Couplings J_1..J_{N_C-1} of the chain obtained by restricting the adjacency
// matrix to the span of the uniform column states.
std::vector<double> collapse_to_chain(const ColumnDecomposition& dec, const Graph& g);

// Isometry mapping chain site i to |col i> = b_i^{-1/2} sum_j |G_ij>;
// n_vertices x n_columns.
Eigen::MatrixXd column_space_basis(const ColumnDecomposition& dec, int n_vertices);

}  // namespace pstlab
