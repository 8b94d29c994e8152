#pragma once

// Symbolic quasi-graphs: a base graph plus ordered quasi-arcs, each with an
// attach point and a limit set made of base edges and earlier arcs.
//
// JSON form:
//   {"graph": {"V": ["p", "o", ...], "E": [["o", "p"], ...]},
//    "arcs": [{"id": "L", "attach": "p" | {"arc": "K"},
//              "limitEdges": [1], "limitArcs": ["K" | {"id": "K", "whole": false}]}]}

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tranche/graph.hpp"

namespace tranche {

struct LimitArcRef {
  std::string id;
  bool whole = true;  // false: the limit set meets the arc without containing it
};

struct ArcSpec {
  std::string id;
  std::string attach;          // vertex name, or arc id when attach_to_arc
  bool attach_to_arc = false;
  std::vector<std::size_t> limit_edges;
  std::vector<LimitArcRef> limit_arcs;
};

struct QuasiGraphSpec {
  TopoGraph graph;
  std::vector<ArcSpec> arcs;

  static QuasiGraphSpec from_json(const std::string& text);
  static QuasiGraphSpec load(const std::string& path);
  std::string to_json() const;
  std::ptrdiff_t arc_index(const std::string& id) const;  // -1 if absent
};

struct Violation {
  std::string condition;  // "i", "ii", "iii", "iv", "oscillatory", "connected", "reference"
  std::string arc;
  std::string message;
};

std::vector<Violation> validate(const QuasiGraphSpec& spec);

// Collapse each component of the union of limit sets; every arc outside the limit
// sets becomes an edge from its attach vertex to its limit component. Throws
// DomainError for an invalid spec.
TopoGraph quotient(const QuasiGraphSpec& spec);
// Number of components of the union of limit sets (the tranches).
std::size_t tranche_count(const QuasiGraphSpec& spec);

struct DepthReport {
  std::map<std::string, std::size_t> order;
  std::size_t depth = 0;
};
// order(L) = 1 + max order of arcs in its limit set. Throws SpecError on cycles.
DepthReport order_and_depth(const QuasiGraphSpec& spec);

// Removes the highest-index arc contained in no limit set and adds its stub
// (vertex "stub:<id>" joined to the attach vertex). Throws SpecError if none exists.
QuasiGraphSpec remove_outermost(const QuasiGraphSpec& spec, std::string* removed = nullptr);

struct ReductionTrace {
  std::vector<std::string> order;          // removed arc ids
  std::vector<QuasiGraphSpec> stages;      // stages[0] = input, stages.back() = bare graph
};
ReductionTrace reduce(const QuasiGraphSpec& spec);
// Rebuilds a spec from the bare graph (stubs dropped) by adding the arcs of
// `original` in reverse removal order.
QuasiGraphSpec replay_reverse(const QuasiGraphSpec& original, const ReductionTrace& trace);

std::string violations_to_json(const std::vector<Violation>& v);

}  // namespace tranche
