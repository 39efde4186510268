#pragma once

#include <vector>

#include "gbt/digraph.hpp"

namespace gbt {

/// Cells of an equitable vertex labelling, sorted by label.
struct EquitableCell {
  LabelTerm label;
  std::vector<Point> cell;  // ascending
};
using EquitableResult = std::vector<EquitableCell>;

/// Per-vertex refined labels in fingerprint form; labels order as signed integers.
struct FpLabelling {
  std::vector<std::int64_t> vlabel;
  std::size_t num_cells = 0;
  std::size_t rounds = 0;
};

/// Synchronous colour refinement. Each round relabels v by the fingerprint of
/// Tuple(old(v), Multiset{Tuple(old(w), arc) : v->w}, Multiset{Tuple(old(u), arc) : u->v}).
/// Stops after the first round that splits nothing and returns that round's labels.
FpLabelling equitable_fp(const FpDigraph& g);
/// Refines starting from the given vertex labels instead of g.vlabels.
FpLabelling equitable_fp(const FpDigraph& g, std::vector<std::int64_t> start);

EquitableResult cells_of(const FpLabelling& lab);
EquitableResult equitable(const LabelledDigraph& g);

/// Checks the equitable property of g relabelled by `lab` by direct counting.
bool is_equitable(const FpDigraph& g, const std::vector<std::int64_t>& lab);

}  // namespace gbt
