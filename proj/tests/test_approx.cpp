#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "gbt/approx.hpp"
#include "gbt/canon.hpp"

using namespace gbt;

namespace {

constexpr ApproxKind kKinds[] = {ApproxKind::Weak, ApproxKind::Strong, ApproxKind::Full};

Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>(i);
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation(std::move(im));
}

LabelledDigraph random_digraph(std::size_t n, std::mt19937_64& rng, unsigned density) {
  std::vector<LabelTerm> vl;
  for (std::size_t v = 0; v < n; ++v) vl.push_back(LabelTerm::integer(rng() % 4 == 0));
  std::vector<Arc> arcs;
  for (Point a = 0; a < n; ++a) {
    for (Point b = 0; b < n; ++b) {
      if (a != b && rng() % density == 0) arcs.push_back({a, b, LabelTerm::integer(0)});
    }
  }
  return LabelledDigraph(std::move(vl), std::move(arcs));
}

DigraphStack random_stack(std::size_t n, std::mt19937_64& rng) {
  DigraphStack s(n);
  for (std::size_t k = 1 + rng() % 2; k > 0; --k) s.push_back(random_digraph(n, rng, 3 + rng() % 3));
  return s;
}

/// Γ_g: arcs (a, a^g) for every a.
LabelledDigraph perm_digraph(const Permutation& g) {
  std::vector<Arc> arcs;
  for (Point a = 0; a < g.degree(); ++a) arcs.push_back({a, g[a], LabelTerm()});
  return LabelledDigraph(std::vector<LabelTerm>(g.degree()), std::move(arcs));
}

}  // namespace

TEST_CASE("approximators on the comparison stacks") {
  auto [s, t] = fx::comparison_stacks();
  auto weak = approx(ApproxKind::Weak, s, t);
  auto strong = approx(ApproxKind::Strong, s, t);
  auto full = approx(ApproxKind::Full, s, t);
  CHECK(weak.cardinality == 720);
  CHECK(strong.cardinality == 48);
  CHECK(full.cardinality == 4);
  CHECK(full.contains(fx::cyc(6, "(1,2,3,5,6)")));
  CHECK(strong.contains(fx::cyc(6, "(1,2,3,5,6)")));

  std::set<std::vector<Point>> cells(strong.cells.begin(), strong.cells.end());
  CHECK(cells == std::set<std::vector<Point>>{{2, 5}, {0, 1, 3, 4}});

  auto iso = fx::iso_by_enumeration(s, t);
  CHECK(iso.size() == 4);
  for (const auto& g : iso) {
    CHECK(full.contains(g));
    CHECK(strong.contains(g));
    CHECK(weak.contains(g));
  }
}

TEST_CASE("canonical form of the squashed comparison stack") {
  auto [s, t] = fx::comparison_stacks();
  auto c = canonical_form(squash(s));
  CHECK(c.aut.order() == 4);
  CHECK(c.aut.contains(fx::cyc(6, "(1,2)(3,6)(4,5)")));
  CHECK(c.aut.contains(fx::cyc(6, "(1,4)(2,5)(3,6)")));
  CHECK(to_fp(digraph_apply(squash(s), c.canon_perm)) == c.canon_form);
}

TEST_CASE("canonical form of a permutation digraph") {
  auto g = fx::cyc(6, "(1,2)(3,6,5)");
  auto c = canonical_form(perm_digraph(g));
  CHECK(c.aut.order() == 6);
  CHECK(c.aut.contains(fx::cyc(6, "(1,2)")));
  CHECK(c.aut.contains(fx::cyc(6, "(3,6,5)")));
}

TEST_CASE("canonical forms characterise isomorphism") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 60; ++t) {
    std::size_t n = 3 + rng() % 4;
    auto d = random_digraph(n, rng, 2 + rng() % 3);
    auto e = random_digraph(n, rng, 2 + rng() % 3);
    auto g = random_perm(n, rng);
    auto cd = canonical_form(d);
    CHECK(canonical_form(digraph_apply(d, g)).canon_form == cd.canon_form);
    bool iso = false;
    std::size_t auts = 0;
    for (const auto& h : fx::symmetric_group(n)) {
      iso = iso || digraph_apply(d, h) == e;
      auts += digraph_apply(d, h) == d;
    }
    CHECK((canonical_form(e).canon_form == cd.canon_form) == iso);
    CHECK(cd.aut.order() == auts);
  }
  CHECK_THROWS_AS(canonical_form(LabelledDigraph(5), 4), Error);
}

TEST_CASE("length mismatch gives empty") {
  auto s = fx::example_stack();
  DigraphStack one(6);
  one.push_back(s[0]);
  for (auto k : kKinds) {
    CHECK(approx(k, one, s).empty);
    CHECK(approx(k, one, s).cardinality == 0);
  }
}

TEST_CASE("reflexive approximation contains the identity") {
  auto s = fx::example_stack();
  for (auto k : kKinds) {
    auto a = approx(k, s, s);
    CHECK_FALSE(a.empty);
    CHECK(a.contains(Permutation(6)));
  }
  CHECK(approx(ApproxKind::Full, s, s).cardinality == 2);
}

TEST_CASE("approximator laws on random stacks") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 4 + rng() % 3;
    auto s = random_stack(n, rng);
    DigraphStack t = rng() % 2 ? stack_apply(s, random_perm(n, rng)) : random_stack(n, rng);
    if (t.size() != s.size()) continue;
    auto iso = fx::iso_by_enumeration(s, t);
    BigCard prev = 0;
    for (auto k : kKinds) {
      auto a = approx(k, s, t);
      for (const auto& g : iso) CHECK(a.contains(g));
      if (!a.empty) {
        auto self = approx(k, s, s);
        CHECK(self.cardinality == a.cardinality);
        CHECK(self.contains(a.rep * a.rep.inverse()));
        // Same group part: g in group(S,S) iff g*rep in coset(S,T).
        for (int j = 0; j < 10; ++j) {
          auto g = random_perm(n, rng);
          CHECK(self.contains(g) == a.contains(g * a.rep));
        }
      }
      if (k != ApproxKind::Weak) CHECK(a.cardinality <= prev);
      prev = a.cardinality;
      if (k == ApproxKind::Full) CHECK(a.cardinality == iso.size());
    }
  }
}

TEST_CASE("fixed points") {
  DigraphStack s(6);
  s.push_back(fx::digraph(6, {"black", "grey", "white", "white", "white", "white"}, {}));
  for (auto k : kKinds) {
    auto f = fixed_points(k, s);
    CHECK(std::set<Point>(f.begin(), f.end()) == std::set<Point>{0, 1});
  }
  CHECK(fixed_points(ApproxKind::Weak, DigraphStack(4)).empty());
  CHECK(fixed_points(ApproxKind::Strong, DigraphStack(4)).empty());

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 4 + rng() % 3;
    auto st = random_stack(n, rng);
    auto g = random_perm(n, rng);
    auto auts = fx::iso_by_enumeration(st, st);
    for (auto k : kKinds) {
      auto f = fixed_points(k, st);
      CHECK(fixed_points(k, stack_apply(st, g)) == act_tuple(g, f));
      for (const auto& a : auts) {
        for (Point p : f) CHECK(a[p] == p);
      }
    }
  }
}

TEST_CASE("cache agrees with direct evaluation") {
  auto [s, t] = fx::comparison_stacks();
  for (auto k : kKinds) {
    ApproxCache cache(k);
    auto a = cache.approx(s, t);
    auto b = approx(k, s, t);
    CHECK(a.cardinality == b.cardinality);
    CHECK(a.rep == b.rep);
    cache.approx(s, t);
    CHECK(cache.evaluations() == 2);
    CHECK(cache.fixed_points(s) == fixed_points(k, s));
  }
}
