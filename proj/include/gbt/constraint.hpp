#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gbt/approx.hpp"
#include "gbt/digraph.hpp"
#include "gbt/rng.hpp"
#include "gbt/stab_chain.hpp"

namespace gbt {

enum class ConstraintType {
  Group,
  Coset,
  SetStab,
  SetTransport,
  ListOfSetsStab,
  ListOfSetsTransport,
  SetOfSetsStab,
  SetOfSetsTransport,
  Centralizer,
  Conjugacy,
  DigraphAuto,
  DigraphIso,
};

const char* to_string(ConstraintType t);
ConstraintType constraint_type_from_string(const std::string& s);

/// Plain description of a constraint. Sets are 0-based and sorted.
/// Set variants use sets[0] (and sets2[0]); Coset uses perm as the representative;
/// Centralizer uses perm; Conjugacy maps perm to perm2.
struct ConstraintSpec {
  ConstraintType type = ConstraintType::Group;
  std::size_t degree = 0;
  std::vector<Permutation> gens;
  Permutation perm, perm2;
  std::vector<std::vector<Point>> sets, sets2;
  std::optional<LabelledDigraph> digraph, digraph2;

  static ConstraintSpec group(std::size_t n, std::vector<Permutation> gens);
  static ConstraintSpec coset(std::size_t n, std::vector<Permutation> gens, Permutation rep);
  static ConstraintSpec set_stab(std::size_t n, std::vector<Point> set);
  static ConstraintSpec set_transport(std::size_t n, std::vector<Point> from, std::vector<Point> to);
  static ConstraintSpec list_of_sets_stab(std::size_t n, std::vector<std::vector<Point>> sets);
  static ConstraintSpec list_of_sets_transport(std::size_t n, std::vector<std::vector<Point>> from,
                                               std::vector<std::vector<Point>> to);
  static ConstraintSpec set_of_sets_stab(std::size_t n, std::vector<std::vector<Point>> sets);
  static ConstraintSpec set_of_sets_transport(std::size_t n, std::vector<std::vector<Point>> from,
                                              std::vector<std::vector<Point>> to);
  static ConstraintSpec centralizer(Permutation g);
  static ConstraintSpec conjugacy(Permutation from, Permutation to);
  static ConstraintSpec digraph_auto(LabelledDigraph g);
  static ConstraintSpec digraph_iso(LabelledDigraph from, LabelledDigraph to);
};

enum class DigraphMode { Arcless, Full };

/// What a refiner may consult while extending a stack.
struct RefinerContext {
  ApproxCache* approx = nullptr;  // supplies Fixed(S) for the run's approximator kind
  std::size_t orbital_cap = 8;
  // Group refiners refine the current partition through their digraphs and return
  // only the resulting labelling (the Orbital technique).
  bool filter_orbitals = false;
};

class RefinerState {
 public:
  virtual ~RefinerState() = default;
};

/// A set U of permutations with a membership test and a refiner pair (f_L, f_R).
/// refine_left/refine_right return the extension only; the caller appends it.
class Constraint {
 public:
  explicit Constraint(std::size_t degree) : degree_(degree) {}
  virtual ~Constraint() = default;

  std::size_t degree() const { return degree_; }
  virtual std::string name() const = 0;
  virtual bool contains(const Permutation& g) const = 0;
  virtual std::unique_ptr<RefinerState> make_state() const { return nullptr; }
  virtual DigraphStack refine_left(RefinerState* state, const DigraphStack& s,
                                   const RefinerContext& ctx) const = 0;
  virtual DigraphStack refine_right(RefinerState* state, const DigraphStack& t,
                                    const RefinerContext& ctx) const = 0;

 private:
  std::size_t degree_;
};

using ConstraintPtr = std::shared_ptr<const Constraint>;
using ConstraintList = std::vector<ConstraintPtr>;

/// Refiner pair built from two fixed digraphs.
class ConstantConstraint : public Constraint {
 public:
  ConstantConstraint(std::size_t degree, LabelledDigraph left, LabelledDigraph right);
  const LabelledDigraph& left() const { return *left_; }
  const LabelledDigraph& right() const { return *right_; }
  DigraphStack refine_left(RefinerState*, const DigraphStack&, const RefinerContext&) const override;
  DigraphStack refine_right(RefinerState*, const DigraphStack&, const RefinerContext&) const override;

 private:
  DigraphPtr left_, right_;
};

/// Group <gens> (or its right coset G*rep) refined through fixed points of the
/// current stack: f(S) = V_i^a where F_i^a = Fixed(S), V_i fixed per stack length i.
class GroupConstraint : public Constraint {
 public:
  GroupConstraint(std::size_t degree, std::vector<Permutation> gens,
                  std::optional<Permutation> rep = std::nullopt);
  std::string name() const override { return rep_ ? "coset" : "group"; }
  bool contains(const Permutation& g) const override;
  std::unique_ptr<RefinerState> make_state() const override;
  DigraphStack refine_left(RefinerState* state, const DigraphStack& s,
                           const RefinerContext& ctx) const override;
  DigraphStack refine_right(RefinerState* state, const DigraphStack& t,
                            const RefinerContext& ctx) const override;
  const StabChain& chain() const { return chain_; }
  const std::vector<Permutation>& generators() const { return gens_; }

 private:
  DigraphStack apply_f(RefinerState* state, std::size_t length, const std::vector<Point>& fixed,
                       const RefinerContext& ctx) const;
  std::vector<Permutation> gens_;
  StabChain chain_;
  std::optional<Permutation> rep_;
};

ConstraintPtr make_constraint(const ConstraintSpec& spec);
ConstraintList make_constraints(const std::vector<ConstraintSpec>& specs);

// Digraph encodings shared with tests and tools.

/// Arcless; vertex a labelled by the 1-based indices {i : a in sets[i]} as a Tuple.
LabelledDigraph list_of_sets_digraph(std::size_t n, const std::vector<std::vector<Point>>& sets);
/// Arcs between distinct points sharing a set; vertex and arc labels count, per set
/// size, the sets containing the vertex (arc), paired with the number of sets.
LabelledDigraph set_of_sets_digraph(std::size_t n, const std::vector<std::vector<Point>>& sets);
/// Arcs (a, a^g), all labels 0.
LabelledDigraph permutation_digraph(const Permutation& g);

/// Stack V for a group level: orbit list of <gens> followed by orbital graphs with
/// base pair (min, second min) of the non-singleton orbits, smallest orbits first.
DigraphStack group_level_stack(const std::vector<Permutation>& gens, std::size_t n,
                               std::size_t orbital_cap);

struct RefinerLawReport {
  std::size_t checks = 0;
  std::size_t violations = 0;
  bool identity_checked = false;
  std::string counterexample;
};

/// Samples stacks S and g in U (U enumerated over Sym(n), n <= 8) and checks
/// f_L(S)^g = f_R(S^g), plus f_L(S) = f_R(S) when id is in U.
RefinerLawReport verify_refiner_law(const Constraint& c, std::size_t trials, std::uint64_t seed,
                                    ApproxKind kind = ApproxKind::Strong,
                                    std::size_t orbital_cap = 8, bool filter_orbitals = false);

/// Arcless digraph labelling each point by its class in the equitable refinement of
/// Squash(v) started from the partition the approximator assigns to s.
LabelledDigraph filter_through(const DigraphStack& v, const DigraphStack& s, ApproxCache& approx);

/// Random stack of length 0..max_len with small label alphabets; used by law checks.
DigraphStack random_stack(std::size_t n, std::size_t max_len, SplitMix64& rng);

}  // namespace gbt
