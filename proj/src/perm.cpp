#include "gbt/perm.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gbt {

namespace {

void require_bijection(const std::vector<Point>& images) {
  std::vector<bool> seen(images.size(), false);
  for (Point x : images) {
    if (x >= images.size() || seen[x]) {
      throw Error("permutation images are not a bijection");
    }
    seen[x] = true;
  }
}

}  // namespace

Permutation::Permutation(std::size_t degree) : images_(degree) {
  for (std::size_t i = 0; i < degree; ++i) images_[i] = static_cast<Point>(i);
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  require_bijection(images_);
}

Permutation Permutation::from_images_1based(std::span<const std::int64_t> images) {
  std::vector<Point> im;
  im.reserve(images.size());
  for (auto x : images) {
    if (x < 1 || static_cast<std::size_t>(x) > images.size()) {
      throw Error("image " + std::to_string(x) + " out of range");
    }
    im.push_back(static_cast<Point>(x - 1));
  }
  return Permutation(std::move(im));
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<Point>>& cycles) {
  Permutation p(degree);
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycles) {
    for (std::size_t j = 0; j < cyc.size(); ++j) {
      Point a = cyc[j];
      if (a < 1 || a > degree) {
        throw Error("point " + std::to_string(a) + " out of range for degree " +
                    std::to_string(degree));
      }
      if (used[a - 1]) throw Error("point " + std::to_string(a) + " repeated in cycles");
      used[a - 1] = true;
      Point b = cyc[(j + 1) % cyc.size()];
      if (b < 1 || b > degree) throw Error("point out of range");
      p.images_[a - 1] = b - 1;
    }
  }
  return p;
}

Point Permutation::image(Point i) const {
  if (i >= images_.size()) {
    throw Error("point " + std::to_string(i + 1) + " out of range for degree " +
                std::to_string(images_.size()));
  }
  return images_[i];
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

Permutation Permutation::operator*(const Permutation& q) const {
  if (degree() != q.degree()) {
    throw Error("degree mismatch: " + std::to_string(degree()) + " vs " +
                std::to_string(q.degree()));
  }
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = q.images_[images_[i]];
  return r;
}

Permutation& Permutation::operator*=(const Permutation& q) {
  if (degree() != q.degree()) throw Error("degree mismatch");
  for (auto& x : images_) x = q.images_[x];
  return *this;
}

Permutation Permutation::conjugate_by(const Permutation& p) const {
  return p.inverse() * *this * p;
}

Point Permutation::first_moved() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return static_cast<Point>(i);
  }
  return static_cast<Point>(images_.size());
}

Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }
Permutation inverse(const Permutation& p) { return p.inverse(); }

Point act_point(const Permutation& p, Point i) { return p.image(i); }

std::vector<Point> act_tuple(const Permutation& p, std::span<const Point> t) {
  std::vector<Point> out;
  out.reserve(t.size());
  for (Point x : t) out.push_back(p.image(x));
  return out;
}

std::vector<Point> act_set(const Permutation& p, std::span<const Point> s) {
  auto out = act_tuple(p, s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw Error("empty cycle text");
  while (i < text.size()) {
    if (text[i] != '(') throw Error("expected '(' in cycle text: " + std::string(text));
    ++i;
    std::vector<Point> cyc;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw Error("unterminated cycle: " + std::string(text));
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        if (cyc.empty()) throw Error("unexpected ',' in cycle text");
        ++i;
        skip_ws();
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw Error("expected a point in cycle text: " + std::string(text));
      }
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > degree) throw Error("point out of range in cycle text: " + std::string(text));
        ++i;
      }
      cyc.push_back(static_cast<Point>(v));
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return Permutation::from_cycles(degree, cycles);
}

std::string format_cycles(const Permutation& p) {
  std::ostringstream os;
  std::vector<bool> done(p.degree(), false);
  for (Point i = 0; i < p.degree(); ++i) {
    if (done[i] || p[i] == i) continue;
    os << '(' << i + 1;
    done[i] = true;
    for (Point j = p[i]; j != i; j = p[j]) {
      os << ',' << j + 1;
      done[j] = true;
    }
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Point x : p.images()) {
    h ^= x;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace gbt
