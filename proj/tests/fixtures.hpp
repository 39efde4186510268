#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "gbt/digraph.hpp"
#include "gbt/perm.hpp"

namespace fx {

using gbt::Arc;
using gbt::DigraphStack;
using gbt::LabelledDigraph;
using gbt::LabelTerm;
using gbt::Permutation;
using gbt::Point;

inline Permutation cyc(std::size_t n, const std::string& text) { return gbt::parse_cycles(text, n); }

/// Digraph with string labels; vertices and arcs are 1-based.
inline LabelledDigraph digraph(std::size_t n, const std::vector<std::string>& vlabels,
                               const std::vector<std::tuple<int, int, std::string>>& arcs) {
  std::vector<LabelTerm> vl;
  for (const auto& s : vlabels) vl.push_back(LabelTerm::string(s));
  std::vector<Arc> as;
  for (const auto& [a, b, l] : arcs) {
    as.push_back({static_cast<Point>(a - 1), static_cast<Point>(b - 1), LabelTerm::string(l)});
  }
  if (vl.size() != n) throw std::invalid_argument("vertex label count");
  return LabelledDigraph(std::move(vl), std::move(as));
}

/// Both directions of each listed edge.
inline std::vector<std::tuple<int, int, std::string>> undirected(
    const std::vector<std::pair<int, int>>& edges, const std::string& label) {
  std::vector<std::tuple<int, int, std::string>> out;
  for (auto [a, b] : edges) {
    out.emplace_back(a, b, label);
    out.emplace_back(b, a, label);
  }
  return out;
}

inline std::vector<std::string> all(std::size_t n, const std::string& s) {
  return std::vector<std::string>(n, s);
}

/// The length-3 stack built from an orbital graph of <(1 2)(3 4)(5 6), (2 4 6)>.
inline DigraphStack example_stack() {
  DigraphStack s(6);
  s.push_back(digraph(6, all(6, "white"),
                      {{1, 3, "solid"}, {2, 4, "solid"}, {3, 5, "solid"},
                       {4, 6, "solid"}, {5, 1, "solid"}, {6, 2, "solid"}}));
  s.push_back(digraph(6, {"black", "black", "white", "white", "white", "white"}, {}));
  s.push_back(digraph(6, {"white", "white", "white", "white", "black", "black"},
                      {{5, 1, "dashed"}, {6, 1, "dashed"}, {5, 2, "dashed"}, {6, 2, "dashed"},
                       {3, 5, "solid"}, {4, 6, "solid"}, {3, 4, "solid"}, {4, 3, "solid"}}));
  return s;
}

/// The two length-2 stacks on which the three approximators disagree.
inline std::pair<DigraphStack, DigraphStack> comparison_stacks() {
  DigraphStack s(6), t(6);
  s.push_back(digraph(6, all(6, "white"),
                      undirected({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 1}}, "solid")));
  s.push_back(digraph(6, all(6, "white"), undirected({{1, 2}, {3, 6}, {4, 5}}, "dashed")));
  t.push_back(digraph(6, all(6, "white"),
                      undirected({{6, 4}, {4, 5}, {5, 3}, {3, 2}, {2, 1}, {1, 6}}, "solid")));
  t.push_back(digraph(6, all(6, "white"), undirected({{6, 4}, {5, 1}, {3, 2}}, "dashed")));
  return {s, t};
}

/// Naive closure of a generating set, independent of the stabiliser chain code.
inline std::vector<Permutation> closure(const std::vector<Permutation>& gens, std::size_t n) {
  std::set<Permutation> seen{Permutation(n)};
  std::vector<Permutation> queue{Permutation(n)};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& g : gens) {
      Permutation p = queue[i] * g;
      if (seen.insert(p).second) queue.push_back(p);
    }
  }
  return {seen.begin(), seen.end()};
}

/// All permutations of degree n in image-sequence order.
inline std::vector<Permutation> symmetric_group(std::size_t n) {
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>(i);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

/// {g : S^g = T} by enumeration, comparing digraphs arc by arc.
inline std::vector<Permutation> iso_by_enumeration(const DigraphStack& s, const DigraphStack& t) {
  std::vector<Permutation> out;
  if (s.size() != t.size()) return out;
  for (const auto& g : symmetric_group(s.degree())) {
    if (gbt::stack_apply(s, g) == t) out.push_back(g);
  }
  return out;
}

}  // namespace fx
