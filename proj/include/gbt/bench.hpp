#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbt/json_io.hpp"
#include "gbt/rng.hpp"
#include "gbt/search.hpp"

namespace gbt {

/// S_n x S_n on the n x n grid; cell (r,c) (1-based) is point (r-1)*n + c.
std::vector<Permutation> gen_grid_group(std::size_t n);

/// S_m wr S_d on m*d points with blocks {1..m}, {m+1..2m}, ...
std::vector<Permutation> gen_wreath(std::size_t m, std::size_t d);

struct CatalogGroup {
  std::string name;
  std::vector<Permutation> gens;
};

/// Built-in transitive groups of degree n: cyclic, dihedral (n >= 4), alternating, symmetric,
/// V4 (n = 4), F20 (5), PSL(2,5) and PGL(2,5) (6), F21 and F42 (7), AGL(1,8) (8).
std::vector<CatalogGroup> transitive_catalog(std::size_t n);

struct Subdirect {
  std::vector<Permutation> gens;          // the proper subdirect product
  std::vector<Permutation> ambient_gens;  // the direct product of the factors
  std::vector<std::string> factors;
  BigCard order, ambient_order;
};

/// A proper (k,n)-subdirect product, or nullopt after 50 failed attempts. k >= 2.
std::optional<Subdirect> gen_subdirect(std::size_t k, std::size_t n, SplitMix64& rng);

/// Uniform random element of the group generated by `gens`.
Permutation random_element(const StabChain& chain, SplitMix64& rng);

enum class ProblemKind { GridSet, GridRows, GridPartition, Subdirect };
const char* to_string(ProblemKind k);
ProblemKind problem_kind_from_string(const std::string& s);

struct Instance {
  ProblemKind kind{};
  std::size_t n = 0, k = 0, index = 0;
  std::uint64_t seed = 0;
  Problem problem;
  bool group_problem = true;  // BSGS for groups, SearchSingle for coset intersections
  bool generated = true;      // false when subdirect generation gave up
};

/// Deterministic per-instance seed derived from the suite seed and coordinates.
std::uint64_t instance_seed(std::uint64_t seed, ProblemKind kind, std::size_t n, std::size_t k,
                            std::size_t index);
Instance make_instance(ProblemKind kind, std::size_t n, std::size_t k, std::size_t index,
                       std::uint64_t suite_seed);

struct SuiteSpec {
  ProblemKind kind{};
  std::vector<std::size_t> ns;
  std::size_t k = 0;
  std::size_t instances = 50;
  std::vector<Mode> modes{Mode::Leon, Mode::Orbital, Mode::Strong, Mode::Full};
};

struct InstanceResult {
  ProblemKind kind{};
  std::size_t n = 0, k = 0, index = 0;
  std::uint64_t seed = 0;
  Mode mode{};
  std::uint64_t nodes = 0;
  bool aborted = false;
  bool skipped = false;
  std::string answer;  // group order, or "empty"/"nonempty"
  bool oracle_checked = false;
  bool oracle_ok = true;
  std::uint64_t left_sequence_violations = 0;
};

struct GroupSummary {
  ProblemKind kind{};
  std::size_t n = 0, k = 0;
  Mode mode{};
  std::size_t count = 0, aborted = 0;
  std::uint64_t total = 0;
  double mean = 0, median = 0, zero_pct = 0;
};

struct BenchReport {
  std::vector<InstanceResult> rows;
  std::vector<GroupSummary> groups;
  std::size_t mode_disagreements = 0;
  std::size_t oracle_failures = 0;

  std::string to_csv() const;
  Json to_json() const;
  const GroupSummary* find(ProblemKind kind, std::size_t n, std::size_t k, Mode mode) const;
};

InstanceResult run_instance(const Instance& inst, Mode mode, std::uint64_t node_limit);

/// Runs every (instance, mode) pair on `jobs` threads; output order is fixed.
BenchReport run_bench(const std::vector<SuiteSpec>& suites, std::uint64_t seed, std::size_t jobs = 1,
                      std::uint64_t node_limit = 10000000);

std::vector<SuiteSpec> suites_from_json(const Json& j);

}  // namespace gbt
