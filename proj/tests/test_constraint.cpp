#include <doctest.h>

#include "fixtures.hpp"
#include "gbt/canon.hpp"
#include "gbt/constraint.hpp"
#include "gbt/oracle.hpp"

using namespace gbt;

namespace {

std::vector<Point> pts(std::initializer_list<int> one_based) {
  std::vector<Point> out;
  for (int p : one_based) out.push_back(static_cast<Point>(p - 1));
  return out;
}

LabelTerm index_set(std::initializer_list<int> idx) {
  std::vector<LabelTerm> items;
  for (int i : idx) items.push_back(LabelTerm::integer(i));
  return LabelTerm::tuple(std::move(items));
}

/// Refiner that leaks the raw input on the right: breaks equivariance on purpose.
class CorruptedConstraint : public Constraint {
 public:
  explicit CorruptedConstraint(std::size_t n) : Constraint(n) {}
  std::string name() const override { return "corrupted"; }
  bool contains(const Permutation&) const override { return true; }
  DigraphStack refine_left(RefinerState*, const DigraphStack&, const RefinerContext&) const override {
    DigraphStack out(degree());
    out.push_back(point_digraph(degree(), 0));
    return out;
  }
  DigraphStack refine_right(RefinerState*, const DigraphStack&, const RefinerContext&) const override {
    return refine_left(nullptr, DigraphStack(degree()), {});
  }
};

}  // namespace

TEST_CASE("membership of constant constraints") {
  CHECK(make_constraint(ConstraintSpec::set_stab(3, pts({1, 2})))->contains(fx::cyc(3, "(1,2)")));
  CHECK_FALSE(make_constraint(ConstraintSpec::set_stab(3, pts({1, 2})))->contains(fx::cyc(3, "(1,3)")));
  auto tr = make_constraint(ConstraintSpec::set_transport(4, pts({1, 2}), pts({3, 4})));
  CHECK(tr->contains(fx::cyc(4, "(1,3)(2,4)")));
  CHECK_FALSE(tr->contains(fx::cyc(4, "(1,2)")));
  auto cj = make_constraint(ConstraintSpec::conjugacy(fx::cyc(4, "(1,2)"), fx::cyc(4, "(3,4)")));
  CHECK(cj->contains(fx::cyc(4, "(1,3)(2,4)")));
  CHECK_FALSE(cj->contains(fx::cyc(4, "(1,3)")));
  auto k = make_constraint(
      ConstraintSpec::group(6, {fx::cyc(6, "(1,2)(3,4)(5,6)"), fx::cyc(6, "(2,4,6)")}));
  CHECK_FALSE(k->contains(fx::cyc(6, "(1,2)")));
  CHECK(k->contains(fx::cyc(6, "(2,4,6)")));
  auto cos = make_constraint(ConstraintSpec::coset(4, {fx::cyc(4, "(1,2)")}, fx::cyc(4, "(3,4)")));
  CHECK(cos->contains(fx::cyc(4, "(3,4)")));
  CHECK(cos->contains(fx::cyc(4, "(1,2)(3,4)")));
  CHECK_FALSE(cos->contains(Permutation::identity(4)));
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(ConstraintSpec::set_stab(3, pts({4})), Error);
  CHECK_THROWS_AS(ConstraintSpec::conjugacy(fx::cyc(3, "(1,2)"), fx::cyc(4, "(1,2)")), Error);
  auto s = ConstraintSpec::set_stab(5, pts({3, 1, 3}));
  CHECK(s.sets.front() == pts({1, 3}));
}

TEST_CASE("permutation digraph captures the centraliser") {
  const auto g = fx::cyc(6, "(1,2)(3,6,5)");
  auto d = permutation_digraph(g);
  CHECK(d.arcs().size() == 6);
  auto aut = canonical_form(d).aut;
  CHECK(aut.order() == 6);
  auto central = brute_solve({ConstraintSpec::centralizer(g)}, 6);
  CHECK(central.size() == 6);
  for (const auto& h : central) CHECK(aut.contains(h));
}

TEST_CASE("list-of-sets digraph labels and automorphisms") {
  std::vector<std::vector<Point>> v{pts({1, 3, 6}), pts({3, 5}), pts({2, 4}), pts({2, 3, 4})};
  auto d = list_of_sets_digraph(6, v);
  CHECK(d.arcs().empty());
  const std::vector<LabelTerm> want{index_set({1}), index_set({3, 4}), index_set({1, 2, 4}),
                                    index_set({3, 4}), index_set({2}), index_set({1})};
  CHECK(d.vlabels() == want);
  auto aut = canonical_form(d).aut;
  CHECK(aut.order() == 4);
  CHECK(aut.contains(fx::cyc(6, "(1,6)")));
  CHECK(aut.contains(fx::cyc(6, "(2,4)")));
  auto stab = brute_solve({ConstraintSpec::list_of_sets_stab(6, v)}, 6);
  CHECK(stab.size() == 4);
  for (const auto& h : stab) CHECK(aut.contains(h));
}

TEST_CASE("set-of-sets digraphs distinguish non-isomorphic families") {
  std::vector<std::vector<Point>> v{pts({1}), pts({1, 2, 3}), pts({2, 4})};
  std::vector<std::vector<Point>> w{pts({5}), pts({2, 3, 4}), pts({3, 4})};
  auto dv = set_of_sets_digraph(5, v);
  auto dw = set_of_sets_digraph(5, w);
  CHECK(dv.arcs().size() == 8);
  CHECK(dw.arcs().size() == 6);
  CHECK(brute_solve({ConstraintSpec::set_of_sets_transport(5, v, w)}, 5).empty());
  // Listing order and duplicates do not matter.
  std::vector<std::vector<Point>> v2{pts({2, 4}), pts({1}), pts({3, 2, 1}), pts({1})};
  CHECK(set_of_sets_digraph(5, v2) == dv);
}

TEST_CASE("set-of-sets digraph is perfect on small families") {
  std::vector<std::vector<Point>> v{pts({1, 2}), pts({3, 4}), pts({5})};
  auto aut = canonical_form(set_of_sets_digraph(5, v)).aut;
  auto stab = brute_solve({ConstraintSpec::set_of_sets_stab(5, v)}, 5);
  CHECK(aut.order() == stab.size());
  CHECK(stab.size() == 8);
}

TEST_CASE("group level stack") {
  const std::vector<Permutation> k{fx::cyc(6, "(1,2)(3,4)(5,6)"), fx::cyc(6, "(2,4,6)")};
  auto v = group_level_stack(k, 6, 8);
  REQUIRE(v.size() >= 2);
  StabChain kc = build_chain(k, 6);
  for (const auto& g : enumerate_elements(kc)) CHECK(stack_apply(v, g) == v);
  // K_1 has orbits {1}, {2,4,6}, {3}, {5}: orbit list plus three orbital graphs.
  CHECK(v.size() == 4);
  CHECK(v[1] == orbital_graph(k, 6, 0, 1));
  CHECK(v[2] == orbital_graph(k, 6, 0, 2));
  CHECK(v[3] == orbital_graph(k, 6, 0, 4));
  CHECK(group_level_stack(k, 6, 2).size() == 3);
  CHECK(group_level_stack(k, 6, 0).size() == 1);
}

TEST_CASE("group refiner maps the fixed-point tuple by a transporter") {
  const std::vector<Permutation> g{fx::cyc(6, "(1,2)"), fx::cyc(6, "(3,4)"), fx::cyc(6, "(5,6)"),
                                   fx::cyc(6, "(1,3,5)(2,4,6)")};
  GroupConstraint c(6, g);
  ApproxCache cache(ApproxKind::Strong);
  RefinerContext ctx{&cache, 8};
  auto state = c.make_state();
  DigraphStack s(6), t(6);
  s.push_back(point_digraph(6, 0));
  s.push_back(point_digraph(6, 1));
  t.push_back(point_digraph(6, 2));
  t.push_back(point_digraph(6, 3));
  REQUIRE(cache.fixed_points(s) == pts({1, 2}));
  REQUIRE(cache.fixed_points(t) == pts({3, 4}));
  auto left = c.refine_left(state.get(), s, ctx);
  auto right = c.refine_right(state.get(), t, ctx);
  REQUIRE(left.size() > 0);
  const auto a = fx::cyc(6, "(1,3,5)(2,4,6)");
  CHECK(stack_apply(left, a) == right);
  CHECK(stack_apply(s, a) == t);

  // No element maps [1,2] to [1,3]: the right side signals a dead end.
  DigraphStack u(6);
  u.push_back(point_digraph(6, 0));
  u.push_back(point_digraph(6, 2));
  CHECK(c.refine_right(state.get(), u, ctx).size() == 0);
}

TEST_CASE("refiner law holds for shipped refiners") {
  const auto k6 = std::vector<Permutation>{fx::cyc(6, "(1,2)(3,4)(5,6)"), fx::cyc(6, "(2,4,6)")};
  std::vector<std::pair<ConstraintSpec, std::size_t>> cases{
      {ConstraintSpec::centralizer(fx::cyc(6, "(1,2)(3,6,5)")), 6},
      {ConstraintSpec::group(6, k6), 6},
      {ConstraintSpec::coset(6, k6, fx::cyc(6, "(1,5)")), 6},
      {ConstraintSpec::set_stab(5, pts({1, 4})), 5},
      {ConstraintSpec::list_of_sets_stab(6, {pts({1, 3, 6}), pts({3, 5}), pts({2, 4})}), 6},
      {ConstraintSpec::set_of_sets_stab(6, {pts({1, 2}), pts({3, 4}), pts({5, 6})}), 6},
      {ConstraintSpec::conjugacy(fx::cyc(5, "(1,2)(3,4)"), fx::cyc(5, "(2,5)(3,4)")), 5},
  };
  for (ApproxKind kind : {ApproxKind::Weak, ApproxKind::Strong, ApproxKind::Full}) {
    for (const auto& [spec, n] : cases) {
      auto c = make_constraint(spec);
      auto rep = verify_refiner_law(*c, 40, 11, kind);
      INFO(c->name(), " ", to_string(kind), " ", rep.counterexample);
      CHECK(rep.checks > 0);
      CHECK(rep.violations == 0);
    }
  }
}

TEST_CASE("refiner law harness reports a corrupted refiner") {
  CorruptedConstraint c(5);
  auto rep = verify_refiner_law(c, 40, 3);
  CHECK(rep.violations > 0);
  CHECK_FALSE(rep.counterexample.empty());
}
