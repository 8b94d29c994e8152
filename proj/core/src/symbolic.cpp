#include "tranche/symbolic.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tranche/errors.hpp"

namespace tranche {

using nlohmann::json;

namespace {

std::string id_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw SpecError("arc id must be a string or an integer");
}

bool is_stub(const std::string& name) { return name.rfind("stub:", 0) == 0; }

// Union-find over vertices [0, V) and arcs [V, V + A).
struct PieceGraph {
  const QuasiGraphSpec& spec;
  DisjointSets sets;
  std::vector<char> in_omega;

  explicit PieceGraph(const QuasiGraphSpec& s)
      : spec(s), sets(s.graph.vertex_count() + s.arcs.size()), in_omega(sets.size(), 0) {}

  std::size_t arc_node(std::size_t i) const { return spec.graph.vertex_count() + i; }

  // Marks the closure of the limit set of arc i; returns its nodes.
  std::vector<std::size_t> limit_closure(std::size_t i, std::vector<char>& seen) {
    std::vector<std::size_t> nodes;
    const ArcSpec& a = spec.arcs[i];
    for (std::size_t e : a.limit_edges) {
      if (e >= spec.graph.edge_count()) continue;
      const auto [u, v] = spec.graph.edges()[e];
      sets.unite(u, v);
      nodes.push_back(u);
      nodes.push_back(v);
    }
    for (const auto& ref : a.limit_arcs) {
      const std::ptrdiff_t j = spec.arc_index(ref.id);
      if (j < 0 || static_cast<std::size_t>(j) >= i) continue;
      const std::size_t node = arc_node(static_cast<std::size_t>(j));
      nodes.push_back(node);
      const ArcSpec& b = spec.arcs[static_cast<std::size_t>(j)];
      if (!b.attach_to_arc) {
        if (auto v = spec.graph.find(b.attach)) {
          sets.unite(node, *v);
          nodes.push_back(*v);
        }
      }
      if (seen[static_cast<std::size_t>(j)]) continue;
      seen[static_cast<std::size_t>(j)] = 1;
      for (std::size_t q : limit_closure(static_cast<std::size_t>(j), seen)) {
        sets.unite(node, q);
        nodes.push_back(q);
      }
    }
    return nodes;
  }
};

}  // namespace

std::ptrdiff_t QuasiGraphSpec::arc_index(const std::string& id) const {
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (arcs[i].id == id) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

QuasiGraphSpec QuasiGraphSpec::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SpecError(std::string("spec: malformed JSON: ") + e.what());
  }
  QuasiGraphSpec s;
  try {
    const json& g = j.at("graph");
    for (const auto& v : g.at("V")) s.graph.add_vertex(v.get<std::string>());
    for (const auto& e : g.at("E")) {
      if (!e.is_array() || e.size() != 2) throw SpecError("spec: edges are [u, v] pairs");
      const auto u = s.graph.find(e[0].get<std::string>()), v = s.graph.find(e[1].get<std::string>());
      if (!u || !v) throw SpecError("spec: edge references an unknown vertex");
      s.graph.add_edge(*u, *v);
    }
    for (const auto& a : j.value("arcs", json::array())) {
      ArcSpec arc;
      arc.id = id_text(a.at("id"));
      const json& at = a.at("attach");
      if (at.is_object()) {
        arc.attach = id_text(at.at("arc"));
        arc.attach_to_arc = true;
      } else {
        arc.attach = at.get<std::string>();
      }
      for (const auto& e : a.value("limitEdges", json::array())) arc.limit_edges.push_back(e.get<std::size_t>());
      for (const auto& r : a.value("limitArcs", json::array())) {
        if (r.is_object())
          arc.limit_arcs.push_back({id_text(r.at("id")), r.value("whole", true)});
        else
          arc.limit_arcs.push_back({id_text(r), true});
      }
      s.arcs.push_back(std::move(arc));
    }
  } catch (const json::exception& e) {
    throw SpecError(std::string("spec: ") + e.what());
  }
  return s;
}

QuasiGraphSpec QuasiGraphSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("spec: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string QuasiGraphSpec::to_json() const {
  json j;
  json V = json::array(), E = json::array();
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) V.push_back(graph.name(v));
  for (const auto& [u, v] : graph.edges()) E.push_back({graph.name(u), graph.name(v)});
  j["graph"] = {{"V", V}, {"E", E}};
  json arr = json::array();
  for (const auto& a : arcs) {
    json o;
    o["id"] = a.id;
    if (a.attach_to_arc)
      o["attach"] = {{"arc", a.attach}};
    else
      o["attach"] = a.attach;
    o["limitEdges"] = a.limit_edges;
    json la = json::array();
    for (const auto& r : a.limit_arcs) {
      if (r.whole)
        la.push_back(r.id);
      else
        la.push_back({{"id", r.id}, {"whole", false}});
    }
    o["limitArcs"] = la;
    arr.push_back(o);
  }
  j["arcs"] = arr;
  return j.dump(2);
}

std::vector<Violation> validate(const QuasiGraphSpec& spec) {
  std::vector<Violation> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < spec.arcs.size(); ++i) {
    const ArcSpec& a = spec.arcs[i];
    if (!ids.insert(a.id).second) out.push_back({"reference", a.id, "duplicate arc id"});
    bool refs_ok = true;

    if (a.attach_to_arc) {
      const std::ptrdiff_t j = spec.arc_index(a.attach);
      if (j < 0) {
        out.push_back({"reference", a.id, "attach references unknown arc " + a.attach});
      } else {
        out.push_back({"ii", a.id, "attached to arc " + a.attach + " instead of the base graph"});
        if (static_cast<std::size_t>(j) >= i)
          out.push_back({"iii", a.id, "attached to a later arc or itself: " + a.attach});
      }
    } else if (!spec.graph.find(a.attach)) {
      out.push_back({"i", a.id, "attach point " + a.attach + " is not a base-graph vertex"});
    }

    for (std::size_t e : a.limit_edges)
      if (e >= spec.graph.edge_count()) {
        out.push_back({"reference", a.id, "limit edge " + std::to_string(e) + " does not exist"});
        refs_ok = false;
      }
    for (const auto& r : a.limit_arcs) {
      const std::ptrdiff_t j = spec.arc_index(r.id);
      if (j < 0) {
        out.push_back({"reference", a.id, "limit references unknown arc " + r.id});
        refs_ok = false;
        continue;
      }
      if (static_cast<std::size_t>(j) >= i) {
        out.push_back({"iii", a.id, "limit set references arc " + r.id + " which is not earlier"});
        refs_ok = false;
      }
      if (!r.whole) out.push_back({"iv", a.id, "limit set meets arc " + r.id + " without containing it"});
    }
    if (a.limit_edges.empty() && a.limit_arcs.empty()) {
      out.push_back({"oscillatory", a.id, "empty limit set"});
      continue;
    }
    if (!refs_ok) continue;

    PieceGraph pg(spec);
    std::vector<char> seen(spec.arcs.size(), 0);
    const auto nodes = pg.limit_closure(i, seen);
    std::set<std::size_t> roots;
    for (std::size_t n : nodes) roots.insert(pg.sets.find(n));
    if (roots.size() > 1) out.push_back({"connected", a.id, "limit set is disconnected"});
  }
  return out;
}

namespace {

struct OmegaComponents {
  std::vector<std::size_t> root;  // per node, or SIZE_MAX when outside the limit sets
  std::vector<std::size_t> component_of_arc_limit;
  std::vector<char> arc_in_omega;
  std::vector<char> edge_collapsed;
  std::size_t count = 0;
};

OmegaComponents omega_components(const QuasiGraphSpec& spec) {
  if (!validate(spec).empty()) throw DomainError("quotient: spec is not a valid quasi-graph");
  PieceGraph pg(spec);
  const std::size_t V = spec.graph.vertex_count();
  OmegaComponents oc;
  oc.arc_in_omega.assign(spec.arcs.size(), 0);
  oc.edge_collapsed.assign(spec.graph.edge_count(), 0);
  std::vector<std::vector<std::size_t>> limit_nodes(spec.arcs.size());
  std::vector<char> in(pg.sets.size(), 0);
  for (std::size_t i = 0; i < spec.arcs.size(); ++i) {
    std::vector<char> seen(spec.arcs.size(), 0);
    limit_nodes[i] = pg.limit_closure(i, seen);
    for (std::size_t n : limit_nodes[i]) {
      in[n] = 1;
      if (n >= V) oc.arc_in_omega[n - V] = 1;
    }
    for (std::size_t e : spec.arcs[i].limit_edges) oc.edge_collapsed[e] = 1;
  }
  std::map<std::size_t, std::size_t> ids;
  oc.root.assign(pg.sets.size(), static_cast<std::size_t>(-1));
  for (std::size_t n = 0; n < pg.sets.size(); ++n) {
    if (!in[n]) continue;
    const std::size_t r = pg.sets.find(n);
    auto it = ids.emplace(r, ids.size()).first;
    oc.root[n] = it->second;
  }
  oc.count = ids.size();
  oc.component_of_arc_limit.resize(spec.arcs.size());
  for (std::size_t i = 0; i < spec.arcs.size(); ++i) oc.component_of_arc_limit[i] = oc.root[limit_nodes[i].front()];
  return oc;
}

}  // namespace

TopoGraph quotient(const QuasiGraphSpec& spec) {
  const OmegaComponents oc = omega_components(spec);
  TopoGraph q;
  std::vector<std::size_t> comp_vertex(oc.count);
  for (std::size_t c = 0; c < oc.count; ++c) comp_vertex[c] = q.add_vertex("omega:" + std::to_string(c));
  const std::size_t V = spec.graph.vertex_count();
  std::vector<std::size_t> image(V);
  for (std::size_t v = 0; v < V; ++v)
    image[v] = oc.root[v] != static_cast<std::size_t>(-1) ? comp_vertex[oc.root[v]] : q.add_vertex(spec.graph.name(v));
  for (std::size_t e = 0; e < spec.graph.edge_count(); ++e) {
    if (oc.edge_collapsed[e]) continue;
    const auto [u, v] = spec.graph.edges()[e];
    q.add_edge(image[u], image[v]);
  }
  for (std::size_t i = 0; i < spec.arcs.size(); ++i) {
    if (oc.arc_in_omega[i]) continue;
    const auto a = *spec.graph.find(spec.arcs[i].attach);
    q.add_edge(image[a], comp_vertex[oc.component_of_arc_limit[i]]);
  }
  return q;
}

std::size_t tranche_count(const QuasiGraphSpec& spec) {
  if (spec.arcs.empty()) return 0;
  return omega_components(spec).count;
}

DepthReport order_and_depth(const QuasiGraphSpec& spec) {
  const std::size_t n = spec.arcs.size();
  std::vector<int> state(n, 0);  // 0 new, 1 active, 2 done
  std::vector<std::size_t> order(n, 0);
  std::function<std::size_t(std::size_t)> visit = [&](std::size_t i) -> std::size_t {
    if (state[i] == 2) return order[i];
    if (state[i] == 1) throw SpecError("order_and_depth: cyclic limit references at arc " + spec.arcs[i].id);
    state[i] = 1;
    std::size_t best = 0;
    for (const auto& r : spec.arcs[i].limit_arcs) {
      const std::ptrdiff_t j = spec.arc_index(r.id);
      if (j < 0) throw SpecError("order_and_depth: unknown arc " + r.id);
      best = std::max(best, visit(static_cast<std::size_t>(j)));
    }
    state[i] = 2;
    order[i] = best + 1;
    return order[i];
  };
  DepthReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    rep.order[spec.arcs[i].id] = visit(i);
    rep.depth = std::max(rep.depth, order[i]);
  }
  return rep;
}

QuasiGraphSpec remove_outermost(const QuasiGraphSpec& spec, std::string* removed) {
  if (spec.arcs.empty()) throw SpecError("remove_outermost: no quasi-arcs left");
  std::set<std::string> referenced;
  for (const auto& a : spec.arcs)
    for (const auto& r : a.limit_arcs) referenced.insert(r.id);
  for (std::size_t k = spec.arcs.size(); k-- > 0;) {
    const ArcSpec& a = spec.arcs[k];
    if (referenced.count(a.id)) continue;
    QuasiGraphSpec out = spec;
    if (!a.attach_to_arc) {
      if (auto v = out.graph.find(a.attach)) {
        const std::size_t stub = out.graph.add_vertex("stub:" + a.id);
        out.graph.add_edge(*v, stub);
      }
    }
    out.arcs.erase(out.arcs.begin() + static_cast<std::ptrdiff_t>(k));
    if (removed) *removed = a.id;
    return out;
  }
  throw SpecError("remove_outermost: every arc lies in another arc's limit set");
}

ReductionTrace reduce(const QuasiGraphSpec& spec) {
  ReductionTrace t;
  t.stages.push_back(spec);
  while (!t.stages.back().arcs.empty()) {
    std::string id;
    t.stages.push_back(remove_outermost(t.stages.back(), &id));
    t.order.push_back(id);
  }
  return t;
}

QuasiGraphSpec replay_reverse(const QuasiGraphSpec& original, const ReductionTrace& trace) {
  const TopoGraph& bare = trace.stages.back().graph;
  QuasiGraphSpec out;
  std::vector<std::size_t> image(bare.vertex_count(), static_cast<std::size_t>(-1));
  for (std::size_t v = 0; v < bare.vertex_count(); ++v)
    if (!is_stub(bare.name(v))) image[v] = out.graph.add_vertex(bare.name(v));
  for (const auto& [u, v] : bare.edges())
    if (image[u] != static_cast<std::size_t>(-1) && image[v] != static_cast<std::size_t>(-1))
      out.graph.add_edge(image[u], image[v]);
  for (auto it = trace.order.rbegin(); it != trace.order.rend(); ++it) {
    const std::ptrdiff_t i = original.arc_index(*it);
    if (i < 0) throw SpecError("replay_reverse: trace does not match the spec");
    out.arcs.push_back(original.arcs[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::string violations_to_json(const std::vector<Violation>& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back({{"condition", x.condition}, {"arc", x.arc}, {"message", x.message}});
  return arr.dump(2);
}

}  // namespace tranche
