#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "gbt/canon.hpp"
#include "gbt/digraph.hpp"
#include "gbt/equitable.hpp"
#include "gbt/stab_chain.hpp"

namespace gbt {

enum class ApproxKind { Weak, Strong, Full };

const char* to_string(ApproxKind k);

/// Empty, or the right coset group * rep. For Weak/Strong the group is the
/// stabiliser of an ordered partition (`cells`); for Full it is `chain`.
struct CosetApprox {
  bool empty = true;
  std::vector<std::vector<Point>> cells;
  std::shared_ptr<const StabChain> chain;
  Permutation rep;
  BigCard cardinality = 0;
  std::vector<std::vector<Point>> orbits;  // of the group part, sorted by minimum

  bool contains(const Permutation& g) const;
  /// Chain for the group part (built on demand for partition groups).
  StabChain group_chain() const;
  /// Image of point a under the coset: {a^(x*rep) : x in group}, ascending.
  std::vector<Point> images_of(Point a) const;
};

/// Per-stack data from which both Approx(S,T) and Fixed(S) are derived.
struct StackSummary {
  ApproxKind kind{};
  // Weak/Strong: ordered cells and the per-cell key that must match positionally.
  std::vector<std::vector<Point>> cells;
  std::vector<std::vector<std::int64_t>> keys;
  // Weak only: the sorted equitable labels of each entry.
  std::vector<std::vector<std::int64_t>> entry_labels;
  std::size_t length = 0;
  // Full.
  std::shared_ptr<const CanonResult> canon;
  std::vector<Point> fixed;
};

/// Equitable labellings of single digraphs, keyed by digraph fingerprint.
using EntryCache = std::unordered_map<Fp, std::shared_ptr<const FpLabelling>>;

StackSummary summarise(ApproxKind kind, const DigraphStack& s, EntryCache* entries = nullptr);

CosetApprox approx_from(const StackSummary& s, const StackSummary& t);
CosetApprox approx(ApproxKind kind, const DigraphStack& s, const DigraphStack& t);
std::vector<Point> fixed_points(ApproxKind kind, const DigraphStack& s);

/// Memoises summaries by stack fingerprint; one per search.
class ApproxCache {
 public:
  explicit ApproxCache(ApproxKind kind, std::size_t capacity = 4096)
      : kind_(kind), capacity_(capacity) {}
  ApproxKind kind() const { return kind_; }
  std::shared_ptr<const StackSummary> summary(const DigraphStack& s);
  CosetApprox approx(const DigraphStack& s, const DigraphStack& t);
  std::vector<Point> fixed_points(const DigraphStack& s);
  std::size_t evaluations() const { return evaluations_; }

 private:
  ApproxKind kind_;
  std::size_t capacity_;
  std::size_t evaluations_ = 0;
  std::unordered_map<Fp, std::pair<std::vector<Fp>, std::shared_ptr<const StackSummary>>> map_;
  EntryCache entries_;
};

}  // namespace gbt
