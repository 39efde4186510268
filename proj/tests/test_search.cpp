#include <doctest.h>

#include "fixtures.hpp"
#include "gbt/bench.hpp"
#include "gbt/oracle.hpp"
#include "gbt/search.hpp"

using namespace gbt;

namespace {

constexpr Mode kModes[] = {Mode::Leon, Mode::Orbital, Mode::Strong, Mode::Full};

std::vector<Point> pts(std::initializer_list<int> one_based) {
  std::vector<Point> out;
  for (int p : one_based) out.push_back(static_cast<Point>(p - 1));
  return out;
}

std::vector<ConstraintSpec> example_autos() {
  std::vector<ConstraintSpec> out;
  const auto s = fx::example_stack();
  for (const auto& d : s.entries()) out.push_back(ConstraintSpec::digraph_auto(*d));
  return out;
}

std::vector<Permutation> solve(const std::vector<ConstraintSpec>& specs, std::size_t n, Mode m) {
  return search_all(make_constraints(specs), n, config_for(m)).elements;
}

}  // namespace

TEST_CASE("splitter picks the smallest orbit and ascending targets") {
  SearchEngine e({make_constraint(ConstraintSpec::group(6, {fx::cyc(6, "(1,2)(3,4)(5,6)")}))}, 6);
  DigraphStack s(6);
  s.push_back(fx::digraph(6, fx::all(6, "x"), fx::undirected({{1, 2}, {3, 4}, {5, 6}}, "e")));
  s.push_back(fx::digraph(6, {"a", "a", "b", "b", "c", "c"}, {}));
  auto sp = e.split(s, s);
  CHECK(sp.alpha == 0);
  CHECK(sp.targets == pts({1, 2}));
  CHECK(sp.right.size() == 2);

  DigraphStack empty(6);
  auto full = e.split(empty, empty);
  CHECK(full.alpha == 0);
  CHECK(full.targets.size() == 6);
  CHECK(e.split(s, stack_apply(s, fx::cyc(6, "(1,3,5)"))).left == sp.left);
}

TEST_CASE("refine detects the impossible set-of-sets transport") {
  std::vector<std::vector<Point>> v{pts({1}), pts({1, 2, 3}), pts({2, 4})};
  std::vector<std::vector<Point>> w{pts({5}), pts({2, 3, 4}), pts({3, 4})};
  SearchEngine e({make_constraint(ConstraintSpec::set_of_sets_transport(5, v, w))}, 5);
  auto [s, t] = e.refine(DigraphStack(5), DigraphStack(5));
  CHECK(e.approx(s, t).empty);
  auto r = search_single(make_constraints({ConstraintSpec::set_of_sets_transport(5, v, w)}), 5,
                         config_for(Mode::Strong));
  CHECK_FALSE(r.element);
  CHECK(r.stats.nodes == 0);
}

TEST_CASE("refine without constraints is the identity") {
  SearchEngine e({}, 4);
  DigraphStack s(4);
  s.push_back(point_digraph(4, 2));
  auto [s2, t2] = e.refine(s, s);
  CHECK(s2 == s);
  CHECK(t2 == s);
}

TEST_CASE("example stack automorphisms") {
  const std::vector<Permutation> want{Permutation::identity(6), fx::cyc(6, "(1,2)(3,4)(5,6)")};
  for (Mode m : kModes) {
    INFO(to_string(m));
    CHECK(solve(example_autos(), 6, m) == want);
    auto b = search_bsgs(make_constraints(example_autos()), 6, config_for(m));
    CHECK(b.bsgs.order == 2);
    CHECK(b.bsgs.base.size() == b.bsgs.base_points.size());
  }
  CHECK(brute_iso_stacks(fx::example_stack(), fx::example_stack()) == want);
}

TEST_CASE("isomorphisms of the example stack to its image under (1 2)") {
  const auto s = fx::example_stack();
  const auto t = stack_apply(s, fx::cyc(6, "(1,2)"));
  std::vector<ConstraintSpec> specs;
  for (std::size_t i = 0; i < s.size(); ++i) specs.push_back(ConstraintSpec::digraph_iso(s[i], t[i]));
  std::vector<Permutation> want{fx::cyc(6, "(1,2)"), fx::cyc(6, "(3,4)(5,6)")};
  std::sort(want.begin(), want.end());
  CHECK(brute_iso_stacks(s, t) == want);
  for (Mode m : kModes) CHECK(solve(specs, 6, m) == want);
}

TEST_CASE("centraliser and trivial problems") {
  for (Mode m : kModes) {
    INFO(to_string(m));
    auto c = solve({ConstraintSpec::centralizer(fx::cyc(6, "(1,2)(3,6,5)"))}, 6, m);
    CHECK(c.size() == 6);
    CHECK(solve({ConstraintSpec::set_stab(4, {})}, 4, m).size() == 24);
    auto x = search_single(make_constraints({ConstraintSpec::conjugacy(fx::cyc(4, "(1,2)"),
                                                                       fx::cyc(4, "(3,4)"))}),
                           4, config_for(m));
    REQUIRE(x.element);
    CHECK(fx::cyc(4, "(1,2)").conjugate_by(*x.element) == fx::cyc(4, "(3,4)"));
    auto none = search_single({}, 3, config_for(m));
    REQUIRE(none.element);
    CHECK(none.element->is_identity());
    auto s4 = search_bsgs(make_constraints({ConstraintSpec::group(4, {fx::cyc(4, "(1,2)"),
                                                                     fx::cyc(4, "(1,2,3,4)")})}),
                          4, config_for(m));
    CHECK(s4.bsgs.order == 24);
  }
}

TEST_CASE("grid group intersections match the oracle") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<ConstraintSpec> specs{ConstraintSpec::group(9, gen_grid_group(3)),
                                      ConstraintSpec::set_stab(9, random_subset(9, 4, rng))};
    auto want = brute_solve(specs, 9);
    for (Mode m : kModes) {
      INFO(to_string(m), " trial ", trial);
      auto got = search_all(make_constraints(specs), 9, config_for(m));
      CHECK(got.elements == want);
      CHECK(got.stats.left_sequence_violations == 0);
      auto b = search_bsgs(make_constraints(specs), 9, config_for(m));
      CHECK(b.bsgs.order == want.size());
      CHECK(b.stats.nodes <= got.stats.nodes);
      StabChain ch = build_chain(b.bsgs.strong_gens, 9);
      for (const auto& g : want) CHECK(contains(ch, g));
    }
  }
}

TEST_CASE("coset intersections") {
  const std::vector<Permutation> k{fx::cyc(6, "(1,2)(3,4)(5,6)"), fx::cyc(6, "(2,4,6)")};
  std::vector<ConstraintSpec> specs{ConstraintSpec::coset(6, k, fx::cyc(6, "(1,2)")),
                                    ConstraintSpec::set_stab(6, pts({1, 2}))};
  auto want = brute_solve(specs, 6);
  REQUIRE_FALSE(want.empty());
  for (Mode m : kModes) {
    CHECK(solve(specs, 6, m) == want);
    auto one = search_single(make_constraints(specs), 6, config_for(m));
    REQUIRE(one.element);
    CHECK(std::binary_search(want.begin(), want.end(), *one.element));
  }
}

TEST_CASE("node limit aborts with statistics") {
  SearchConfig cfg = config_for(Mode::Leon);
  cfg.node_limit = 3;
  SearchEngine e({}, 6, cfg);
  try {
    e.search_all();
    FAIL("expected abort");
  } catch (const NodeLimitExceeded& ex) {
    CHECK(ex.stats().nodes == 4);
  }
}

TEST_CASE("mode parsing") {
  for (Mode m : kModes) CHECK(mode_from_string(to_string(m)) == m);
  CHECK_THROWS_AS(mode_from_string("fast"), Error);
  CHECK(config_for(Mode::Leon).digraph_mode == DigraphMode::Arcless);
  CHECK(config_for(Mode::Orbital).approx_kind == ApproxKind::Weak);
}

TEST_CASE("backtracking isomorphism oracle agrees with enumeration") {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 4 + trial % 3;
    DigraphStack s = random_stack(n, 3, rng);
    DigraphStack t = trial % 2 ? stack_apply(s, random_permutation(n, rng)) : random_stack(n, 3, rng);
    CHECK(exact_iso_stacks(s, t) == brute_iso_stacks(s, t));
  }
  CHECK(exact_iso_stacks(fx::example_stack(), fx::example_stack()).size() == 2);
}
