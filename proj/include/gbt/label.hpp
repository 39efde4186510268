#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gbt {

using Fp = std::uint64_t;

/// Structural label value: Base(int or string) | Gap | Tuple | Multiset.
/// Every term carries a 64-bit structural fingerprint; a per-thread intern
/// table detects fingerprint collisions, so equal fingerprints imply equal terms.
class LabelTerm {
 public:
  enum class Kind : std::uint8_t { Base = 0, Gap = 1, Tuple = 2, Multiset = 3 };

  LabelTerm();  // Base(0)
  static LabelTerm integer(std::int64_t v);
  static LabelTerm string(std::string s);
  static LabelTerm gap();
  static LabelTerm tuple(std::vector<LabelTerm> items);
  /// Entries are merged and sorted; counts must be positive.
  static LabelTerm multiset(std::vector<std::pair<LabelTerm, std::uint64_t>> entries);

  Kind kind() const;
  Fp fp() const;
  bool is_int() const;
  std::int64_t as_int() const;
  const std::string& as_string() const;
  const std::vector<LabelTerm>& items() const;  // Tuple entries or Multiset keys
  const std::vector<std::uint64_t>& counts() const;

  std::string to_string() const;

  friend bool operator==(const LabelTerm& a, const LabelTerm& b) { return a.fp() == b.fp(); }
  friend std::strong_ordering operator<=>(const LabelTerm& a, const LabelTerm& b);

 private:
  struct Node;
  explicit LabelTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Fingerprint arithmetic shared by terms and by the fast paths that never
// materialise terms. Each function also records the shallow structure in
// the intern table and throws std::logic_error on a collision.
Fp fp_int(std::int64_t v);
Fp fp_string(const std::string& s);
Fp fp_gap();
Fp fp_tuple(std::span<const Fp> items);
/// `entries` are (item fp, count); order does not matter.
Fp fp_multiset(std::vector<std::pair<Fp, std::uint64_t>> entries);

/// Drops the calling thread's intern table.
void clear_intern_table();
std::size_t intern_table_size();

}  // namespace gbt
