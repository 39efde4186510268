#pragma once

#include <memory>
#include <vector>

#include "gbt/label.hpp"
#include "gbt/perm.hpp"
#include "gbt/stab_chain.hpp"

namespace gbt {

struct Arc {
  Point from = 0;
  Point to = 0;
  LabelTerm label;
};

/// Vertices 0..n-1 with labels, at most one labelled arc per ordered pair.
class LabelledDigraph {
 public:
  LabelledDigraph() = default;
  /// All vertex labels Base(0), no arcs.
  explicit LabelledDigraph(std::size_t n);
  LabelledDigraph(std::vector<LabelTerm> vlabels, std::vector<Arc> arcs);

  std::size_t degree() const { return vlabels_.size(); }
  const std::vector<LabelTerm>& vlabels() const { return vlabels_; }
  /// Sorted by (from, to).
  const std::vector<Arc>& arcs() const { return arcs_; }
  Fp fp() const { return fp_; }

  friend bool operator==(const LabelledDigraph& a, const LabelledDigraph& b);

 private:
  void finish();
  std::vector<LabelTerm> vlabels_;
  std::vector<Arc> arcs_;
  Fp fp_ = 0;
};

/// Fingerprint-only view used by refinement and canonisation.
struct FpArc {
  Point from;
  Point to;
  Fp label;
  friend auto operator<=>(const FpArc&, const FpArc&) = default;
};

struct FpDigraph {
  std::size_t n = 0;
  std::vector<Fp> vlabels;
  std::vector<FpArc> arcs;  // sorted by (from, to)
  friend bool operator==(const FpDigraph&, const FpDigraph&) = default;
};

FpDigraph to_fp(const LabelledDigraph& g);

LabelledDigraph digraph_apply(const LabelledDigraph& g, const Permutation& p);
LabelledDigraph strip_arcs(const LabelledDigraph& g);

using DigraphPtr = std::shared_ptr<const LabelledDigraph>;

class DigraphStack {
 public:
  DigraphStack() = default;
  explicit DigraphStack(std::size_t n) : n_(n) {}
  DigraphStack(std::size_t n, std::vector<DigraphPtr> entries);

  std::size_t degree() const { return n_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const LabelledDigraph& operator[](std::size_t i) const { return *entries_[i]; }
  const std::vector<DigraphPtr>& entries() const { return entries_; }

  void push_back(LabelledDigraph g);
  void push_back(DigraphPtr g);
  void append(const DigraphStack& other);
  /// Keeps only the first k entries.
  void truncate(std::size_t k);

  std::vector<Fp> entry_fps() const;
  Fp fp() const;

  friend bool operator==(const DigraphStack& a, const DigraphStack& b);

 private:
  std::size_t n_ = 0;
  std::vector<DigraphPtr> entries_;
};

DigraphStack stack_append(const DigraphStack& s, const DigraphStack& t);
DigraphStack stack_apply(const DigraphStack& s, const Permutation& p);

/// The squashed digraph, with Tuple labels and Gap for missing arcs.
LabelledDigraph squash(const DigraphStack& s);
/// Equal to to_fp(squash(s)) without building label terms.
FpDigraph squash_fp(const DigraphStack& s);

/// Orbit of the arc (alpha, beta) under the group; vertex and arc labels Base(0).
LabelledDigraph orbital_graph(const StabChain& chain, Point alpha, Point beta);
LabelledDigraph orbital_graph(const std::vector<Permutation>& gens, std::size_t n, Point alpha,
                              Point beta);

/// Arcless digraph with vertex label 1 at alpha and 0 elsewhere.
LabelledDigraph point_digraph(std::size_t n, Point alpha);

}  // namespace gbt
