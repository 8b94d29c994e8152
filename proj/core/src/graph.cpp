#include "tranche/graph.hpp"

#include <numeric>

#include "json.hpp"
#include "tranche/errors.hpp"

namespace tranche {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

std::size_t DisjointSets::add() {
  parent_.push_back(parent_.size());
  rank_.push_back(0);
  return parent_.size() - 1;
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

std::size_t DisjointSets::components() {
  std::size_t c = 0;
  for (std::size_t i = 0; i < parent_.size(); ++i) c += find(i) == i;
  return c;
}

std::size_t TopoGraph::add_vertex(std::string name) {
  if (name.empty()) name = "v" + std::to_string(names_.size());
  names_.push_back(std::move(name));
  return names_.size() - 1;
}

std::size_t TopoGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= names_.size() || v >= names_.size()) throw DomainError("edge references unknown vertex");
  edges_.emplace_back(u, v);
  return edges_.size() - 1;
}

std::optional<std::size_t> TopoGraph::find(const std::string& name) const {
  for (std::size_t v = 0; v < names_.size(); ++v)
    if (names_[v] == name) return v;
  return std::nullopt;
}

std::size_t TopoGraph::valence(std::size_t v) const {
  std::size_t d = 0;
  for (const auto& [a, b] : edges_) d += (a == v) + (b == v);
  return d;
}

std::vector<std::size_t> TopoGraph::endpoints() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < names_.size(); ++v)
    if (valence(v) == 1) out.push_back(v);
  return out;
}

std::vector<std::size_t> TopoGraph::branch_points() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < names_.size(); ++v)
    if (valence(v) >= 3) out.push_back(v);
  return out;
}

bool TopoGraph::connected() const {
  if (names_.empty()) return false;
  DisjointSets ds(names_.size());
  for (const auto& [a, b] : edges_) ds.unite(a, b);
  return ds.components() == 1;
}

bool TopoGraph::has_isolated_vertices() const {
  if (names_.size() <= 1) return false;
  for (std::size_t v = 0; v < names_.size(); ++v)
    if (valence(v) == 0) return true;
  return false;
}

std::string TopoGraph::to_json() const {
  nlohmann::json j;
  j["V"] = names_;
  nlohmann::json e = nlohmann::json::array();
  for (const auto& [a, b] : edges_) e.push_back({names_[a], names_[b]});
  j["E"] = e;
  return j.dump();
}

TopoGraph TopoGraph::interval() {
  TopoGraph g;
  g.add_edge(g.add_vertex("a"), g.add_vertex("b"));
  return g;
}

TopoGraph TopoGraph::circle() {
  TopoGraph g;
  const auto v = g.add_vertex("o");
  g.add_edge(v, v);
  return g;
}

TopoGraph TopoGraph::figure_eight() {
  TopoGraph g;
  const auto v = g.add_vertex("o");
  g.add_edge(v, v);
  g.add_edge(v, v);
  return g;
}

std::size_t betti1(const TopoGraph& g) {
  if (!g.connected()) throw DomainError("betti1: graph is not connected");
  return g.edge_count() + 1 - g.vertex_count();
}

}  // namespace tranche
