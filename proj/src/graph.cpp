#include "plap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <utility>

#include "plap/error.hpp"

namespace plap {

VertexSet make_vertex_set(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw Error(ErrorKind::invalid_argument, "vertex set contains duplicates");
  }
  return vertices;
}

WeightedGraph::WeightedGraph(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges) {
  std::sort(vertices.begin(), vertices.end(),
            [](const VertexSpec& a, const VertexSpec& b) { return a.id < b.id; });
  ids_.reserve(vertices.size());
  mu_.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto& spec = vertices[i];
    if (i > 0 && vertices[i - 1].id == spec.id) {
      throw Error(ErrorKind::invalid_graph, "duplicate vertex id '" + spec.id + "'");
    }
    if (!(std::isfinite(spec.mu) && spec.mu > 0.0)) {
      throw Error(ErrorKind::invalid_graph, "vertex '" + spec.id + "': mu must be a positive number");
    }
    ids_.push_back(spec.id);
    mu_.push_back(spec.mu);
  }

  edges_.reserve(edges.size());
  for (const auto& spec : edges) {
    auto a = find(spec.u);
    auto b = find(spec.v);
    if (!a || !b) {
      throw Error(ErrorKind::invalid_graph,
                  "edge {" + spec.u + "," + spec.v + "} references an undeclared vertex");
    }
    if (*a == *b) {
      throw Error(ErrorKind::invalid_graph, "self-loop at '" + spec.u + "'");
    }
    if (!(std::isfinite(spec.w) && spec.w > 0.0)) {
      throw Error(ErrorKind::invalid_graph,
                  "edge {" + spec.u + "," + spec.v + "}: w must be a positive number");
    }
    edges_.push_back({std::min(*a, *b), std::max(*a, *b), spec.w});
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
    return std::pair(x.u, x.v) < std::pair(y.u, y.v);
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v) {
      throw Error(ErrorKind::invalid_graph, "parallel edge {" + ids_[edges_[i].u] + "," +
                                                ids_[edges_[i].v] + "}");
    }
  }

  std::vector<std::size_t> degree(ids_.size(), 0);
  for (const auto& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  adjacency_offsets_.assign(ids_.size() + 1, 0);
  std::partial_sum(degree.begin(), degree.end(), adjacency_offsets_.begin() + 1);
  adjacency_.resize(adjacency_offsets_.back());
  std::vector<std::size_t> fill(adjacency_offsets_.begin(), adjacency_offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e.u]++] = {e.v, e.w};
    adjacency_[fill[e.v]++] = {e.u, e.w};
  }
  for (std::size_t v = 0; v < ids_.size(); ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(adjacency_offsets_[v + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
}

std::optional<Vertex> WeightedGraph::find(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<Vertex>(it - ids_.begin());
}

Vertex WeightedGraph::index(std::string_view id) const {
  if (auto v = find(id)) return *v;
  throw Error(ErrorKind::invalid_argument, "unknown vertex id '" + std::string(id) + "'");
}

std::span<const WeightedGraph::Neighbor> WeightedGraph::neighbors(Vertex v) const {
  if (v >= num_vertices()) throw Error(ErrorKind::invalid_argument, "vertex index out of range");
  return std::span(adjacency_).subspan(adjacency_offsets_[v],
                                       adjacency_offsets_[v + 1] - adjacency_offsets_[v]);
}

Domain::Domain(std::shared_ptr<const WeightedGraph> graph, VertexSet omega)
    : graph_(std::move(graph)), omega_(make_vertex_set(std::move(omega))) {
  if (!graph_) throw Error(ErrorKind::invalid_domain, "null graph");
  if (omega_.empty()) throw Error(ErrorKind::invalid_domain, "omega is empty");
  if (omega_.back() >= graph_->num_vertices()) {
    throw Error(ErrorKind::invalid_domain, "omega contains a vertex outside the graph");
  }
  local_.assign(graph_->num_vertices(), -1);
  for (std::size_t i = 0; i < omega_.size(); ++i) local_[omega_[i]] = static_cast<std::ptrdiff_t>(i);

  bool has_exit = false;
  for (const auto& e : graph_->edges()) {
    if ((local_[e.u] >= 0) != (local_[e.v] >= 0)) {
      has_exit = true;
      break;
    }
  }
  if (!has_exit) {
    throw Error(ErrorKind::invalid_domain, "no edge leaves omega; the Dirichlet problem is degenerate");
  }
}

std::optional<std::size_t> Domain::local_index(Vertex v) const {
  auto i = local_.at(v);
  if (i < 0) return std::nullopt;
  return static_cast<std::size_t>(i);
}

Domain Domain::from_ids(std::shared_ptr<const WeightedGraph> graph,
                        const std::vector<std::string>& omega_ids) {
  if (!graph) throw Error(ErrorKind::invalid_domain, "null graph");
  VertexSet omega;
  omega.reserve(omega_ids.size());
  for (const auto& id : omega_ids) {
    auto v = graph->find(id);
    if (!v) throw Error(ErrorKind::invalid_domain, "omega references unknown vertex '" + id + "'");
    omega.push_back(*v);
  }
  std::sort(omega.begin(), omega.end());
  if (std::adjacent_find(omega.begin(), omega.end()) != omega.end()) {
    throw Error(ErrorKind::invalid_domain, "omega lists a vertex twice");
  }
  return Domain(std::move(graph), std::move(omega));
}

VertexSet Domain::vertex_set(const std::vector<std::string>& ids) const {
  std::vector<Vertex> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(graph_->index(id));
  return make_vertex_set(std::move(out));
}

DirichletFunction zero_function(const Domain& d) { return {std::vector<double>(d.size(), 0.0)}; }

DirichletFunction indicator(const Domain& d, const VertexSet& s) {
  auto u = zero_function(d);
  for (Vertex v : s) {
    auto i = d.local_index(v);
    if (!i) throw Error(ErrorKind::subset_not_in_omega, "vertex '" + d.graph().id(v) + "' is not in omega");
    u[*i] = 1.0;
  }
  return u;
}

double value_at(const Domain& d, const DirichletFunction& u, Vertex v) {
  auto i = d.local_index(v);
  return i ? u[*i] : 0.0;
}

void check_shape(const Domain& d, const DirichletFunction& u) {
  if (u.size() != d.size()) {
    throw Error(ErrorKind::invalid_argument, "function has " + std::to_string(u.size()) +
                                                 " values, omega has " + std::to_string(d.size()));
  }
}

double volume(const Domain& d, const VertexSet& s) {
  double total = 0.0;
  for (Vertex v : s) {
    if (v >= d.graph().num_vertices() || !d.contains(v)) {
      throw Error(ErrorKind::subset_not_in_omega, "subset is not contained in omega");
    }
    total += d.graph().mu(v);
  }
  return total;
}

double boundary_weight(const WeightedGraph& g, const VertexSet& s) {
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : s) {
    if (v >= g.num_vertices()) throw Error(ErrorKind::invalid_argument, "vertex index out of range");
    in[v] = 1;
  }
  double total = 0.0;
  for (const auto& e : g.edges()) {
    if (in[e.u] != in[e.v]) total += e.w;
  }
  return total;
}

bool is_connected(const Domain& d) {
  const auto& g = d.graph();
  std::vector<char> seen(d.size(), 0);
  std::queue<Vertex> frontier;
  frontier.push(d.omega().front());
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    Vertex x = frontier.front();
    frontier.pop();
    for (const auto& nb : g.neighbors(x)) {
      auto j = d.local_index(nb.vertex);
      if (j && !seen[*j]) {
        seen[*j] = 1;
        ++reached;
        frontier.push(nb.vertex);
      }
    }
  }
  return reached == d.size();
}

double p_norm_pow(const Domain& d, const DirichletFunction& u, double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::invalid_p, "p must be >= 1");
  check_shape(d, u);
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double a = std::abs(u[i]);
    total += d.graph().mu(d.omega()[i]) * (p == 1.0 ? a : std::pow(a, p));
  }
  return total;
}

double p_norm(const Domain& d, const DirichletFunction& u, double p) {
  const double s = p_norm_pow(d, u, p);
  return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

double max_abs_diff(const DirichletFunction& a, const DirichletFunction& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::invalid_argument, "functions differ in size");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace plap
