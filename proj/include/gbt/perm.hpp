#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gbt {

/// Points are stored 0-based; every text/JSON boundary converts to 1-based.
using Point = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A permutation of {0..degree-1}, acting on the right: i^(p*q) = (i^p)^q.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);  // identity
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree) { return Permutation(degree); }
  /// From 1-based images, e.g. [2,1,4,3].
  static Permutation from_images_1based(std::span<const std::int64_t> images);
  /// Builds a permutation of the given degree from 1-based disjoint cycles.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles_1based);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point i) const { return images_[i]; }
  Point image(Point i) const;  // range-checked
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;

  /// Left-to-right composition: first *this, then q.
  Permutation operator*(const Permutation& q) const;
  Permutation& operator*=(const Permutation& q);

  /// p^-1 * this * p
  Permutation conjugate_by(const Permutation& p) const;

  /// Smallest point moved, or degree() if none.
  Point first_moved() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);

Point act_point(const Permutation& p, Point i);
std::vector<Point> act_tuple(const Permutation& p, std::span<const Point> t);
/// Returns the image set, sorted ascending.
std::vector<Point> act_set(const Permutation& p, std::span<const Point> s);

/// Parses "(1,2)(3,4)" (commas or spaces between points, "()" for identity).
Permutation parse_cycles(std::string_view text, std::size_t degree);
/// Formats as "(1,3,5)(2,4)"; the identity is "()".
std::string format_cycles(const Permutation& p);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace gbt
