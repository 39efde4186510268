#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "gbt/approx.hpp"
#include "gbt/constraint.hpp"

namespace gbt {

struct SearchConfig {
  ApproxKind approx_kind = ApproxKind::Strong;
  DigraphMode digraph_mode = DigraphMode::Full;
  std::size_t orbital_cap = 8;
  bool filter_orbitals = false;  // see RefinerContext
  std::optional<std::uint64_t> node_limit;
};

struct SearchStats {
  std::uint64_t nodes = 0;  // recursive invocations; the root call is not a node
  std::uint64_t refine_rounds = 0;
  std::size_t max_depth = 0;
  std::uint64_t left_sequence_violations = 0;
};

class NodeLimitExceeded : public Error {
 public:
  explicit NodeLimitExceeded(const SearchStats& s)
      : Error("search node limit exceeded after " + std::to_string(s.nodes) + " nodes"),
        stats_(s) {}
  const SearchStats& stats() const { return stats_; }

 private:
  SearchStats stats_;
};

struct StackPair {
  DigraphStack s, t;
};

struct SplitResult {
  Point alpha = 0;
  DigraphStack left;                // S_1 = [Gamma_alpha]
  std::vector<Point> targets;       // ascending images of alpha
  std::vector<DigraphStack> right;  // T_i = [Gamma_target_i]
};

struct BsgsResult {
  std::vector<DigraphStack> base;
  std::vector<Point> base_points;
  std::vector<Permutation> strong_gens;
  BigCard order = 1;
};

/// One search over a fixed list of constraints. Refiner state and the left-hand
/// sequence record persist across calls on the same engine.
class SearchEngine {
 public:
  SearchEngine(ConstraintList constraints, std::size_t degree, SearchConfig config = {});

  std::size_t degree() const { return n_; }
  const SearchConfig& config() const { return cfg_; }
  const SearchStats& stats() const { return stats_; }

  CosetApprox approx(const DigraphStack& s, const DigraphStack& t);
  StackPair refine(DigraphStack s, DigraphStack t);
  /// Fixed-point splitter; requires |Approx(S,T)| >= 2.
  SplitResult split(const DigraphStack& s, const DigraphStack& t);

  std::vector<Permutation> search_all();
  std::optional<Permutation> search_single();
  BsgsResult search_bsgs();

 private:
  void search(const DigraphStack& s, const DigraphStack& t, std::size_t depth, bool single,
              std::vector<Permutation>& out);
  void bsgs(const DigraphStack& s, std::size_t depth, BsgsResult& out);
  void enter_node(std::size_t depth);
  void record_left(std::size_t depth, const DigraphStack& s);
  bool accepts(const Permutation& h) const;
  DigraphStack postprocess(DigraphStack ext) const;

  ConstraintList cs_;
  std::size_t n_;
  SearchConfig cfg_;
  ApproxCache cache_;
  std::vector<std::unique_ptr<RefinerState>> states_;
  SearchStats stats_;
  std::map<std::size_t, Fp> left_by_depth_;
};

struct SearchAllResult {
  std::vector<Permutation> elements;  // sorted by image sequence
  SearchStats stats;
};

struct SearchSingleResult {
  std::optional<Permutation> element;
  SearchStats stats;
};

struct BsgsSearchResult {
  BsgsResult bsgs;
  SearchStats stats;
};

SearchAllResult search_all(const ConstraintList& cs, std::size_t degree, const SearchConfig& cfg);
SearchSingleResult search_single(const ConstraintList& cs, std::size_t degree,
                                 const SearchConfig& cfg);
BsgsSearchResult search_bsgs(const ConstraintList& cs, std::size_t degree, const SearchConfig& cfg);

/// The four benchmark techniques.
enum class Mode { Leon, Orbital, Strong, Full };
const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);
SearchConfig config_for(Mode m);

}  // namespace gbt
