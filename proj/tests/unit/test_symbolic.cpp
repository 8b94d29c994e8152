#include <string>

#include "doctest.h"
#include "tranche/errors.hpp"
#include "tranche/graph.hpp"
#include "tranche/symbolic.hpp"

using namespace tranche;

namespace {

QuasiGraphSpec load(const std::string& name) {
  return QuasiGraphSpec::load(std::string(TRANCHE_DATA_DIR) + "/specs/" + name + ".json");
}

bool has(const std::vector<Violation>& v, const std::string& c) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.condition == c; });
}

}  // namespace

TEST_SUITE("symbolic") {
  TEST_CASE("warsaw spec") {
    const QuasiGraphSpec s = load("warsaw");
    CHECK(validate(s).empty());
    const TopoGraph q = quotient(s);
    CHECK(betti1(q) == 1);
    CHECK(tranche_count(s) == 1);
    CHECK(order_and_depth(s).depth == 1);
    const ReductionTrace t = reduce(s);
    REQUIRE(t.order.size() == 1);
    CHECK(t.stages.back().arcs.empty());
    CHECK(t.stages.back().graph.vertex_count() == s.graph.vertex_count() + 1);
  }

  TEST_CASE("two-chain spec") {
    const QuasiGraphSpec s = load("two_chain");
    CHECK(validate(s).empty());
    const DepthReport d = order_and_depth(s);
    CHECK(d.depth == 2);
    CHECK(d.order.at("L1") == 1);
    CHECK(d.order.at("L2") == 2);
    const ReductionTrace t = reduce(s);
    REQUIRE(t.order.size() == 2);
    CHECK(t.order[0] == "L2");
    CHECK(t.order[1] == "L1");
    const QuasiGraphSpec back = replay_reverse(s, t);
    CHECK(validate(back).empty());
    CHECK(back.to_json() == s.to_json());
  }

  TEST_CASE("comb spec") {
    const QuasiGraphSpec s = load("comb");
    CHECK(validate(s).empty());
    CHECK(order_and_depth(s).depth == 2);
    CHECK(tranche_count(s) == 1);
    CHECK(betti1(quotient(s)) >= 1);
  }

  TEST_CASE("tranche bound at every removal stage") {
    for (const char* name : {"warsaw", "two_chain", "comb"}) {
      for (const auto& st : reduce(load(name)).stages) CHECK(tranche_count(st) <= betti1(quotient(st)));
    }
  }

  TEST_CASE("no quasi-arcs") {
    QuasiGraphSpec s;
    const auto a = s.graph.add_vertex("a"), b = s.graph.add_vertex("b");
    s.graph.add_edge(a, b);
    CHECK(validate(s).empty());
    CHECK(order_and_depth(s).depth == 0);
    const TopoGraph q = quotient(s);
    CHECK(q.vertex_count() == 2);
    CHECK(q.edge_count() == 1);
    CHECK_THROWS_AS(remove_outermost(s), SpecError);
  }

  TEST_CASE("adversarial specs") {
    CHECK(has(validate(load("bad_partial_overlap")), "iv"));
    const auto attach = validate(load("bad_attach_to_arc"));
    CHECK(has(attach, "ii"));
    CHECK(has(attach, "iii"));
    CHECK(has(validate(load("bad_later_limit")), "iii"));
    CHECK(has(validate(load("bad_empty_limit")), "oscillatory"));
    CHECK(has(validate(load("bad_disconnected_limit")), "connected"));
    CHECK_THROWS_AS(quotient(load("bad_empty_limit")), DomainError);
  }

  TEST_CASE("cyclic limit references") {
    QuasiGraphSpec s = QuasiGraphSpec::from_json(R"({"graph":{"V":["a","b"],"E":[["a","b"]]},
      "arcs":[{"id":1,"attach":"a","limitEdges":[0],"limitArcs":[2]},
              {"id":2,"attach":"b","limitEdges":[0],"limitArcs":[1]}]})");
    CHECK(has(validate(s), "iii"));
    CHECK_THROWS_AS(order_and_depth(s), SpecError);
  }

  TEST_CASE("malformed input") {
    CHECK_THROWS_AS(QuasiGraphSpec::from_json("{"), SpecError);
    CHECK_THROWS_AS(QuasiGraphSpec::from_json(R"({"graph":{"V":["a"],"E":[["a","z"]]}})"), SpecError);
    CHECK_THROWS_AS(QuasiGraphSpec::load("/nonexistent/spec.json"), SpecError);
    const auto v = validate(QuasiGraphSpec::from_json(
        R"({"graph":{"V":["a"],"E":[]},"arcs":[{"id":"L","attach":"q","limitEdges":[4]}]})"));
    CHECK(has(v, "i"));
    CHECK(has(v, "reference"));
  }

  TEST_CASE("json round trip") {
    const QuasiGraphSpec s = load("comb");
    const QuasiGraphSpec back = QuasiGraphSpec::from_json(s.to_json());
    CHECK(back.to_json() == s.to_json());
    CHECK(violations_to_json({}) == "[]");
  }
}
