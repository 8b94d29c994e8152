#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tranche {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n = 0);
  std::size_t add();
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  std::size_t size() const { return parent_.size(); }
  std::size_t components();

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

// Finite multigraph (loops and parallel edges allowed) standing for a topological graph.
class TopoGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  std::size_t add_vertex(std::string name = "");
  std::size_t add_edge(std::size_t u, std::size_t v);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& name(std::size_t v) const { return names_.at(v); }
  std::optional<std::size_t> find(const std::string& name) const;

  std::size_t valence(std::size_t v) const;  // a loop counts twice
  std::vector<std::size_t> endpoints() const;
  std::vector<std::size_t> branch_points() const;
  bool connected() const;
  bool has_isolated_vertices() const;

  std::string to_json() const;

  static TopoGraph interval();
  static TopoGraph circle();
  static TopoGraph figure_eight();

 private:
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
};

// E - V + 1; throws DomainError for a disconnected graph.
std::size_t betti1(const TopoGraph& g);

}  // namespace tranche
