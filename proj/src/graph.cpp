#include "pstlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>

#include "pstlab/exception.hpp"
#include "pstlab/rng.hpp"

namespace pstlab {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw Error(ErrorKind::kInvalidSize, "negative vertex count");
  for (auto& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw Error(ErrorKind::kIndex, "edge endpoint out of range");
    }
    if (e.u == e.v) throw Error(ErrorKind::kContractViolation, "self-loop at vertex " + std::to_string(e.u));
    if (!std::isfinite(e.weight) || e.weight == 0.0) {
      throw Error(ErrorKind::kContractViolation, "edge weight must be finite and nonzero");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].u == edges_[k - 1].u && edges_[k].v == edges_[k - 1].v) {
      throw Error(ErrorKind::kContractViolation, "duplicate edge (" + std::to_string(edges_[k].u) + "," +
                                                     std::to_string(edges_[k].v) + ")");
    }
  }
  adj_.assign(n, {});
  for (const auto& e : edges_) {
    adj_[e.u].push_back({e.v, e.weight});
    adj_[e.v].push_back({e.u, e.weight});
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
}

std::span<const Graph::Neighbor> Graph::neighbors(int v) const {
  if (v < 0 || v >= n_) throw Error(ErrorKind::kIndex, "vertex " + std::to_string(v) + " out of range");
  return adj_[v];
}

bool Graph::has_edge(int u, int v) const { return weight(u, v) != 0.0; }

double Graph::weight(int u, int v) const {
  const auto list = neighbors(u);
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Neighbor& nb, int x) { return nb.vertex < x; });
  return (it != list.end() && it->vertex == v) ? it->weight : 0.0;
}

bool Graph::connected() const {
  if (n_ == 0) return false;
  std::vector<char> seen(n_, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& nb : adj_[v]) {
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        ++count;
        stack.push_back(nb.vertex);
      }
    }
  }
  return count == n_;
}

Eigen::MatrixXd Graph::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (const auto& e : edges_) {
    a(e.u, e.v) = e.weight;
    a(e.v, e.u) = e.weight;
  }
  return a;
}

Graph path(int n) {
  if (n < 1) throw Error(ErrorKind::kInvalidSize, "path needs at least one vertex");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph(n, std::move(edges));
}

Graph cycle(int n) {
  if (n < 3) throw Error(ErrorKind::kInvalidSize, "cycle needs at least three vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
  return Graph(n, std::move(edges));
}

Graph star(int leaves) {
  if (leaves < 1) throw Error(ErrorKind::kInvalidSize, "star needs at least one leaf");
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i, 1.0});
  return Graph(leaves + 1, std::move(edges));
}

Graph cartesian_product(const Graph& g, const Graph& h) {
  if (g.size() == 0 || h.size() == 0) throw Error(ErrorKind::kInvalidSize, "empty factor in Cartesian product");
  const int ng = g.size();
  const int nh = h.size();
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() * nh + h.edge_count() * ng);
  // (a, b) -> a * nh + b, matching A(G) (x) I + I (x) A(H).
  for (const auto& e : g.edges()) {
    for (int b = 0; b < nh; ++b) edges.push_back({e.u * nh + b, e.v * nh + b, e.weight});
  }
  for (int a = 0; a < ng; ++a) {
    for (const auto& e : h.edges()) edges.push_back({a * nh + e.u, a * nh + e.v, e.weight});
  }
  return Graph(ng * nh, std::move(edges));
}

Graph hypercube(int links, int d) {
  if (links != 1 && links != 2) {
    throw Error(ErrorKind::kUnsupportedBase, "hypercube base must have 1 or 2 links, got " + std::to_string(links));
  }
  if (d < 1) throw Error(ErrorKind::kInvalidSize, "hypercube dimension must be positive");
  const Graph base = path(links + 1);
  Graph g = base;
  for (int k = 1; k < d; ++k) g = cartesian_product(g, base);
  return g;
}

ColumnDecomposition column_decompose(const Graph& g, int root) {
  const int n = g.size();
  if (root < 0 || root >= n) throw Error(ErrorKind::kIndex, "root vertex out of range");
  if (!g.connected()) throw Error(ErrorKind::kPrecondition, "column decomposition needs a connected graph");

  std::vector<int> dist(n, -1);
  std::queue<int> queue;
  dist[root] = 0;
  queue.push(root);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (const auto& nb : g.neighbors(v)) {
      if (dist[nb.vertex] < 0) {
        dist[nb.vertex] = dist[v] + 1;
        queue.push(nb.vertex);
      }
    }
  }

  ColumnDecomposition dec;
  const int depth = *std::max_element(dist.begin(), dist.end()) + 1;
  dec.columns.assign(depth, {});
  for (int v = 0; v < n; ++v) dec.columns[dist[v]].push_back(v);
  dec.forward.assign(depth, 0);
  dec.backward.assign(depth, 0);
  dec.occupation.resize(depth);

  for (int c = 0; c < depth; ++c) {
    dec.occupation[c] = static_cast<int>(dec.columns[c].size());
    for (std::size_t k = 0; k < dec.columns[c].size(); ++k) {
      const int v = dec.columns[c][k];
      int fwd = 0;
      int back = 0;
      for (const auto& nb : g.neighbors(v)) {
        const int dc = dist[nb.vertex];
        if (dc == c) {
          throw Error(ErrorKind::kNotColumnRegular, "intra-column edge (" + std::to_string(v) + "," +
                                                        std::to_string(nb.vertex) + ") in column " +
                                                        std::to_string(c + 1));
        }
        (dc == c + 1 ? fwd : back)++;
      }
      if (k == 0) {
        dec.forward[c] = fwd;
        dec.backward[c] = back;
      } else if (fwd != dec.forward[c] || back != dec.backward[c]) {
        throw Error(ErrorKind::kNotColumnRegular,
                    "vertex " + std::to_string(v) + " in column " + std::to_string(c + 1) + " has " +
                        std::to_string(fwd) + " forward/" + std::to_string(back) + " backward edges, expected " +
                        std::to_string(dec.forward[c]) + "/" + std::to_string(dec.backward[c]));
      }
    }
  }
  return dec;
}

namespace {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Biregular bipartite pairing between `left` (each with `deg_left` edges) and
// `right` (each with `deg_right` edges), drawn by shuffling stubs and
// rejecting configurations that contain a repeated edge.
void pair_columns(const std::vector<int>& left, int deg_left, const std::vector<int>& right, int deg_right,
                  std::mt19937_64& gen, std::vector<Edge>& out) {
  std::vector<int> stubs;
  stubs.reserve(right.size() * deg_right);
  for (int v : right) {
    for (int k = 0; k < deg_right; ++k) stubs.push_back(v);
  }
  for (;;) {
    shuffle(std::span<int>(stubs), gen);
    std::set<std::pair<int, int>> seen;
    bool simple = true;
    std::size_t pos = 0;
    for (int u : left) {
      for (int k = 0; k < deg_left && simple; ++k) {
        simple = seen.emplace(u, stubs[pos++]).second;
      }
      if (!simple) break;
    }
    if (simple) {
      for (const auto& [u, v] : seen) out.push_back({u, v, 1.0});
      return;
    }
  }
}

}  // namespace

Graph scrambled_hypercube(int column_count, std::uint64_t seed) {
  if (column_count < 2) throw Error(ErrorKind::kInvalidSize, "scrambled hypercube needs at least two columns");
  std::vector<std::vector<int>> columns(column_count);
  int next = 0;
  for (int c = 0; c < column_count; ++c) {
    const auto b = binomial(column_count - 1, c);
    for (std::int64_t k = 0; k < b; ++k) columns[c].push_back(next++);
  }
  auto gen = make_stream(seed, 0);
  std::vector<Edge> edges;
  for (int c = 0; c + 1 < column_count; ++c) {
    // one-based column i = c + 1: r_i = N_C - i, s_{i+1} = i
    pair_columns(columns[c], column_count - (c + 1), columns[c + 1], c + 1, gen, edges);
  }
  return Graph(next, std::move(edges));
}

std::vector<double> collapse_to_chain(const ColumnDecomposition& dec, const Graph& g) {
  const int nc = dec.column_count();
  std::vector<int> column_of(g.size(), -1);
  for (int c = 0; c < nc; ++c) {
    for (int v : dec.columns[c]) column_of.at(v) = c;
  }
  std::vector<double> pair_weight(std::max(nc - 1, 0), 0.0);
  for (const auto& e : g.edges()) {
    const int c = std::min(column_of[e.u], column_of[e.v]);
    if (std::abs(column_of[e.u] - column_of[e.v]) != 1) {
      throw Error(ErrorKind::kContractViolation, "decomposition does not match graph");
    }
    if (pair_weight[c] == 0.0) {
      pair_weight[c] = e.weight;
    } else if (pair_weight[c] != e.weight) {
      throw Error(ErrorKind::kUnsupported,
                  "nonuniform edge weights between columns " + std::to_string(c + 1) + " and " + std::to_string(c + 2));
    }
  }
  std::vector<double> couplings(std::max(nc - 1, 0));
  for (int c = 0; c + 1 < nc; ++c) {
    // b_i r_i / sqrt(b_i b_{i+1}) = sqrt(r_i s_{i+1}) since b_i r_i = b_{i+1} s_{i+1}.
    if (std::int64_t{dec.occupation[c]} * dec.forward[c] != std::int64_t{dec.occupation[c + 1]} * dec.backward[c + 1]) {
      throw Error(ErrorKind::kContractViolation, "edge counts between columns do not balance");
    }
    couplings[c] = pair_weight[c] * std::sqrt(static_cast<double>(dec.forward[c] * dec.backward[c + 1]));
  }
  return couplings;
}

Eigen::MatrixXd column_space_basis(const ColumnDecomposition& dec, int n_vertices) {
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(n_vertices, dec.column_count());
  for (int c = 0; c < dec.column_count(); ++c) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(dec.occupation[c]));
    for (int v : dec.columns[c]) basis(v, c) = amp;
  }
  return basis;
}

}  // namespace pstlab
