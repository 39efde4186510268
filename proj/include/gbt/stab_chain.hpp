#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <span>
#include <vector>

#include "gbt/perm.hpp"

namespace gbt {

using BigCard = boost::multiprecision::cpp_int;

/// Stabiliser chain with explicit transversals. Level i holds the group
/// fixing base[0..i-1] pointwise, its generators and the orbit of base[i].
class StabChain {
 public:
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<Point> orbit;
    // transversal[p] maps base to p; inv_transversal[p] is its inverse.
    std::vector<std::optional<Permutation>> transversal;
    std::vector<std::optional<Permutation>> inv_transversal;
  };

  StabChain() = default;
  explicit StabChain(std::size_t degree) : degree_(degree) {}

  std::size_t degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }
  std::vector<Point> base() const;
  /// Strong generating set (generators of level 0).
  std::vector<Permutation> strong_generators() const;

  BigCard order() const;
  bool contains(const Permutation& p) const;
  bool is_trivial() const;

  /// Sifts g from level `from`; returns the residue and the level where sifting stopped.
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from = 0) const;

  /// Level-by-level direct construction; used by the builders in stab_chain.cpp.
  std::vector<Level>& mutable_levels() { return levels_; }

 private:
  std::size_t degree_ = 0;
  std::vector<Level> levels_;
};

/// Deterministic Schreier-Sims. The base starts with `base_prefix` (duplicates dropped).
/// If `known_order` is given, construction stops as soon as the chain reaches it.
StabChain build_chain(const std::vector<Permutation>& gens, std::size_t degree,
                      std::span<const Point> base_prefix = {},
                      const std::optional<BigCard>& known_order = std::nullopt);

bool contains(const StabChain& chain, const Permutation& p);
BigCard order(const StabChain& chain);

/// Orbits of <gens> on {0..degree-1}; each sorted, list sorted by minimum.
std::vector<std::vector<Point>> orbits(const std::vector<Permutation>& gens, std::size_t degree);

/// Chain for the pointwise stabiliser of F.
StabChain pointwise_stabilizer(const StabChain& chain, std::span<const Point> F);

/// Some a in the group with F^a = F2 (deterministic for a given chain), or nullopt.
std::optional<Permutation> tuple_transporter(const StabChain& chain, std::span<const Point> F,
                                             std::span<const Point> F2);

/// Same, for a chain whose base already begins with the distinct entries of F in order.
std::optional<Permutation> tuple_transporter_prefixed(const StabChain& chain,
                                                      std::span<const Point> F,
                                                      std::span<const Point> F2);

/// All elements; throws if the order exceeds `cap`.
std::vector<Permutation> enumerate_elements(const StabChain& chain, std::size_t cap = 1000000);

/// Element selected by one transversal index per level (indices reduced modulo orbit size).
Permutation element_from_indices(const StabChain& chain, std::span<const std::uint64_t> idx);

/// Direct chain for the stabiliser of an ordered partition: the product of Sym(cell).
StabChain symmetric_product(const std::vector<std::vector<Point>>& cells, std::size_t degree);

BigCard factorial(std::size_t m);

}  // namespace gbt
