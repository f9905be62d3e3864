#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plap {

/// Index of a vertex in the canonical (id-sorted) order of its graph.
using Vertex = std::size_t;

/// Sorted, duplicate-free list of vertex indices.
using VertexSet = std::vector<Vertex>;

/// Sorts and checks a vertex list; throws invalid_argument on duplicates.
VertexSet make_vertex_set(std::vector<Vertex> vertices);

struct VertexSpec {
  std::string id;
  double mu = 1.0;
};

struct EdgeSpec {
  std::string u;
  std::string v;
  double w = 1.0;
};

/// Finite simple undirected graph with vertex measure mu and edge weight w.
///
/// Vertices are stored sorted by id and edges sorted by (min endpoint, max endpoint);
/// every reduction in the library walks these orders, so results are bit-reproducible.
/// Construction rejects self-loops, parallel edges, unknown endpoints, duplicate ids
/// and non-positive (or non-finite) measures and weights.
class WeightedGraph {
 public:
  struct Edge {
    Vertex u;  // u < v
    Vertex v;
    double w;
  };

  struct Neighbor {
    Vertex vertex;
    double w;
  };

  WeightedGraph(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges);

  std::size_t num_vertices() const noexcept { return ids_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  const std::string& id(Vertex v) const { return ids_.at(v); }
  double mu(Vertex v) const { return mu_.at(v); }

  std::optional<Vertex> find(std::string_view id) const;
  /// Like find(), but throws invalid_argument for unknown ids.
  Vertex index(std::string_view id) const;

  std::span<const Edge> edges() const noexcept { return edges_; }
  /// Neighbors of v sorted by vertex index.
  std::span<const Neighbor> neighbors(Vertex v) const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> mu_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> adjacency_offsets_;
  std::vector<Neighbor> adjacency_;
};

/// A vertex subset Omega of a weighted graph carrying the Dirichlet problem.
///
/// Omega must be nonempty and have at least one edge leaving it. Connectivity is not
/// enforced here (see is_connected); the eigen-solvers require it.
class Domain {
 public:
  Domain(std::shared_ptr<const WeightedGraph> graph, VertexSet omega);

  const WeightedGraph& graph() const noexcept { return *graph_; }
  const std::shared_ptr<const WeightedGraph>& graph_ptr() const noexcept { return graph_; }

  /// Omega in canonical order; position in this list is the local index.
  const VertexSet& omega() const noexcept { return omega_; }
  std::size_t size() const noexcept { return omega_.size(); }

  bool contains(Vertex v) const { return local_.at(v) >= 0; }
  /// Local index of v in omega(), or nullopt when v is outside Omega.
  std::optional<std::size_t> local_index(Vertex v) const;

  /// Builds a domain from vertex ids.
  static Domain from_ids(std::shared_ptr<const WeightedGraph> graph,
                         const std::vector<std::string>& omega_ids);

  /// Resolves ids to a VertexSet of this domain's graph.
  VertexSet vertex_set(const std::vector<std::string>& ids) const;

 private:
  std::shared_ptr<const WeightedGraph> graph_;
  VertexSet omega_;
  std::vector<std::ptrdiff_t> local_;
};

/// Real function on V vanishing outside Omega; values[i] belongs to omega()[i].
struct DirichletFunction {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }

  friend bool operator==(const DirichletFunction&, const DirichletFunction&) = default;
};

DirichletFunction zero_function(const Domain& d);
DirichletFunction indicator(const Domain& d, const VertexSet& s);
/// Value of u at any vertex of the graph (0 outside Omega).
double value_at(const Domain& d, const DirichletFunction& u, Vertex v);
/// Throws invalid_argument when u does not have one value per Omega vertex.
void check_shape(const Domain& d, const DirichletFunction& u);

/// Sum of mu over s. Requires s inside Omega.
double volume(const Domain& d, const VertexSet& s);

/// Total weight of edges with exactly one endpoint in s.
double boundary_weight(const WeightedGraph& g, const VertexSet& s);

/// True iff Omega is connected through paths that stay inside Omega.
bool is_connected(const Domain& d);

/// mu-weighted p-norm (sum_x mu_x |u(x)|^p)^(1/p), p >= 1.
double p_norm(const Domain& d, const DirichletFunction& u, double p);

/// sum_x mu_x |u(x)|^p without the outer root.
double p_norm_pow(const Domain& d, const DirichletFunction& u, double p);

/// Maximum absolute difference between two functions on the same domain.
double max_abs_diff(const DirichletFunction& a, const DirichletFunction& b);

}  // namespace plap
