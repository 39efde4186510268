#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "gbt/bench.hpp"
#include "gbt/json_io.hpp"
#include "gbt/oracle.hpp"

using namespace gbt;

namespace {

bool transitive(const std::vector<Permutation>& gens, std::size_t n) {
  return orbits(gens, n).size() == 1;
}

}  // namespace

TEST_CASE("grid and wreath generators") {
  CHECK(build_chain(gen_grid_group(3), 9).order() == 36);
  CHECK(build_chain(gen_grid_group(4), 16).order() == 576);
  CHECK(build_chain(gen_grid_group(2), 4).order() == 4);
  CHECK_THROWS_AS(gen_grid_group(1), Error);
  // Rows stay rows: the image of row 1 is a row or a column.
  for (const auto& g : gen_grid_group(4)) {
    std::set<Point> img;
    for (Point c = 0; c < 4; ++c) img.insert(g[c]);
    bool row = true;
    for (Point p : img) row = row && p / 4 == *img.begin() / 4;
    CHECK(row);
  }
  CHECK(build_chain(gen_wreath(3, 2), 6).order() == 72);
  CHECK(build_chain(gen_wreath(2, 3), 6).order() == 48);
  CHECK(build_chain(gen_wreath(8, 2), 16).order() == factorial(8) * factorial(8) * 2);
  CHECK(build_chain(gen_wreath(2, 2), 4).order() == 8);
  CHECK(build_chain(gen_wreath(3, 1), 3).order() == 6);
}

TEST_CASE("transitive catalog") {
  const std::map<std::string, int> orders{{"F20", 20}, {"PSL(2,5)", 60}, {"PGL(2,5)", 120},
                                          {"F21", 21}, {"F42", 42},      {"AGL(1,8)", 56},
                                          {"V4", 4},   {"A4", 12},       {"A5", 60},
                                          {"D12", 12}, {"S6", 720}};
  std::set<std::string> seen;
  for (std::size_t n = 2; n <= 8; ++n) {
    for (const auto& g : transitive_catalog(n)) {
      INFO(g.name);
      CHECK(transitive(g.gens, n));
      auto it = orders.find(g.name);
      if (it != orders.end()) {
        CHECK(build_chain(g.gens, n).order() == it->second);
        seen.insert(g.name);
      }
      if (g.name[0] == 'A' && g.name[1] != 'G') CHECK(build_chain(g.gens, n).order() * 2 == factorial(n));
    }
  }
  CHECK(seen.size() == orders.size());
}

TEST_CASE("subdirect products are proper and project onto every factor") {
  SplitMix64 rng(5);
  CHECK_THROWS_AS(gen_subdirect(1, 4, rng), Error);
  for (auto [k, n] : {std::pair{2, 3}, {2, 4}, {3, 3}, {2, 6}}) {
    for (int trial = 0; trial < 4; ++trial) {
      auto sd = gen_subdirect(k, n, rng);
      REQUIRE(sd);
      CHECK(sd->order < sd->ambient_order);
      StabChain d = build_chain(sd->ambient_gens, k * n);
      for (const auto& g : sd->gens) CHECK(contains(d, g));
      // Orbits of the subdirect product are exactly the blocks.
      auto os = orbits(sd->gens, k * n);
      REQUIRE(os.size() == static_cast<std::size_t>(k));
      for (std::size_t b = 0; b < os.size(); ++b) CHECK(os[b].front() == b * n);
    }
  }
}

TEST_CASE("instances are deterministic and well formed") {
  auto a = make_instance(ProblemKind::GridRows, 4, 0, 3, 77);
  auto b = make_instance(ProblemKind::GridRows, 4, 0, 3, 77);
  CHECK(problem_to_json(a.problem) == problem_to_json(b.problem));
  CHECK(a.seed != make_instance(ProblemKind::GridRows, 4, 0, 4, 77).seed);
  const auto& set = a.problem.constraints[1].sets.front();
  CHECK(set.size() == 8);
  for (Point r = 0; r < 4; ++r) {
    CHECK(std::count_if(set.begin(), set.end(), [&](Point p) { return p / 4 == r; }) == 2);
  }
  auto p = make_instance(ProblemKind::GridPartition, 4, 0, 0, 1);
  CHECK(p.problem.constraints.size() == 3);
  CHECK(p.problem.constraints[1].sets.size() == 2);
  CHECK_THROWS_AS(make_instance(ProblemKind::GridPartition, 3, 0, 0, 1), Error);
  auto s = make_instance(ProblemKind::Subdirect, 3, 2, 0, 1);
  CHECK_FALSE(s.group_problem);
  CHECK(s.problem.constraints.size() == 2);
}

TEST_CASE("small bench agrees across modes, threads and the oracle") {
  std::vector<SuiteSpec> suites{{ProblemKind::GridSet, {3}, 0, 4},
                                {ProblemKind::Subdirect, {3}, 2, 4}};
  auto one = run_bench(suites, 2024, 1);
  auto many = run_bench(suites, 2024, 4);
  CHECK(one.to_csv() == many.to_csv());
  CHECK(one.to_json() == many.to_json());
  CHECK(one.mode_disagreements == 0);
  CHECK(one.oracle_failures == 0);
  CHECK(one.rows.size() == 32);
  std::size_t checked = 0;
  for (const auto& r : one.rows) checked += r.oracle_checked;
  CHECK(checked == 16);  // the degree 6 subdirect instances
  REQUIRE(one.find(ProblemKind::GridSet, 3, 0, Mode::Strong));
  CHECK(one.find(ProblemKind::GridSet, 3, 0, Mode::Strong)->count == 4);
}

TEST_CASE("json round trips") {
  CHECK(perm_from_json(Json("(1,2)(3,4)"), 4) == fx::cyc(4, "(1,2)(3,4)"));
  CHECK(perm_from_json(Json::array({2, 1, 4, 3}), 4) == fx::cyc(4, "(1,2)(3,4)"));
  CHECK(perm_to_json(fx::cyc(5, "(1,3,5)")) == Json("(1,3,5)"));
  CHECK_THROWS_AS(perm_from_json(Json::array({1, 1}), 2), Error);

  auto s = fx::example_stack();
  for (const auto& d : s.entries()) CHECK(digraph_from_json(digraph_to_json(*d)) == *d);
  LabelTerm t = LabelTerm::tuple({LabelTerm::gap(), LabelTerm::string("a"),
                                  LabelTerm::multiset({{LabelTerm::integer(3), 2}})});
  CHECK(label_from_json(label_to_json(t)) == t);

  auto inst = make_instance(ProblemKind::GridPartition, 4, 0, 0, 9);
  auto back = problem_from_json(problem_to_json(inst.problem));
  CHECK(problem_to_json(back) == problem_to_json(inst.problem));

  Json j = Json::parse(R"js({"degree":4,"constraints":[{"type":"set_stab","set":[1,2]},
                          {"type":"conjugacy","from":"(1,2)","to":"(3,4)"}]})js");
  auto pr = problem_from_json(j);
  CHECK(pr.constraints.size() == 2);
  CHECK(pr.constraints[0].sets.front() == std::vector<Point>{0, 1});
  CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"degree":3,"constraints":[{"type":"nope"}]})")),
                  Error);
  CHECK_THROWS(problem_from_json(Json::parse(R"({"degree":3,"constraints":[{"type":"set_stab","set":[7]}]})")));
}
