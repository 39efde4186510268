#include "gbt/label.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace gbt {

struct LabelTerm::Node {
  Kind kind = Kind::Base;
  bool is_string = false;
  std::int64_t ival = 0;
  std::string sval;
  std::vector<LabelTerm> items;
  std::vector<std::uint64_t> counts;
  Fp fp = 0;
};

namespace {

constexpr std::size_t kInternLimit = std::size_t{1} << 18;

Fp mix(Fp z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Fp combine(Fp h, Fp v) { return mix(h * 0x100000001B3ULL + v + 0x9E3779B97F4A7C15ULL); }

struct Shallow {
  std::uint8_t kind;
  std::int64_t ival;
  std::string sval;
  std::vector<Fp> children;
  std::vector<std::uint64_t> counts;
  bool operator==(const Shallow&) const = default;
};

struct InternTable {
  std::unordered_map<Fp, Shallow> map;
};

InternTable& table() {
  thread_local InternTable t;
  return t;
}

void intern(Fp fp, Shallow&& rec) {
  auto& t = table();
  if (t.map.size() >= kInternLimit) t.map.clear();
  auto [it, inserted] = t.map.try_emplace(fp, std::move(rec));
  if (!inserted && !(it->second == rec)) {
    throw std::logic_error("label fingerprint collision");
  }
}

}  // namespace

Fp fp_int(std::int64_t v) {
  Fp h = combine(0x42A5E, static_cast<Fp>(v));
  intern(h, Shallow{0, v, {}, {}, {}});
  return h;
}

Fp fp_string(const std::string& s) {
  Fp h = 0x5781;
  for (unsigned char c : s) h = combine(h, c);
  h = combine(h, s.size());
  intern(h, Shallow{4, 0, s, {}, {}});
  return h;
}

Fp fp_gap() {
  static const Fp h = combine(0x6A9, 0x23);
  return h;
}

Fp fp_tuple(std::span<const Fp> items) {
  Fp h = combine(0x7091E, items.size());
  for (Fp c : items) h = combine(h, c);
  intern(h, Shallow{2, 0, {}, std::vector<Fp>(items.begin(), items.end()), {}});
  return h;
}

Fp fp_multiset(std::vector<std::pair<Fp, std::uint64_t>> entries) {
  std::sort(entries.begin(), entries.end());
  // Merge duplicate keys.
  std::vector<Fp> keys;
  std::vector<std::uint64_t> counts;
  for (const auto& [k, c] : entries) {
    if (!keys.empty() && keys.back() == k) {
      counts.back() += c;
    } else {
      keys.push_back(k);
      counts.push_back(c);
    }
  }
  Fp h = combine(0x3B17A, keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) h = combine(combine(h, keys[i]), counts[i]);
  intern(h, Shallow{3, 0, {}, std::move(keys), std::move(counts)});
  return h;
}

void clear_intern_table() { table().map.clear(); }
std::size_t intern_table_size() { return table().map.size(); }

LabelTerm::LabelTerm() : LabelTerm(integer(0)) {}

LabelTerm LabelTerm::integer(std::int64_t v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Base;
  n->ival = v;
  n->fp = fp_int(v);
  return LabelTerm(std::move(n));
}

LabelTerm LabelTerm::string(std::string s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Base;
  n->is_string = true;
  n->fp = fp_string(s);
  n->sval = std::move(s);
  return LabelTerm(std::move(n));
}

LabelTerm LabelTerm::gap() {
  static const LabelTerm g = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Gap;
    n->fp = fp_gap();
    return LabelTerm(std::move(n));
  }();
  return g;
}

LabelTerm LabelTerm::tuple(std::vector<LabelTerm> items) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tuple;
  std::vector<Fp> fps;
  fps.reserve(items.size());
  for (const auto& t : items) fps.push_back(t.fp());
  n->fp = fp_tuple(fps);
  n->items = std::move(items);
  return LabelTerm(std::move(n));
}

LabelTerm LabelTerm::multiset(std::vector<std::pair<LabelTerm, std::uint64_t>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  auto n = std::make_shared<Node>();
  n->kind = Kind::Multiset;
  std::vector<std::pair<Fp, std::uint64_t>> fps;
  for (auto& [t, c] : entries) {
    if (c == 0) throw std::invalid_argument("multiset counts must be positive");
    fps.emplace_back(t.fp(), c);
    if (!n->items.empty() && n->items.back() == t) {
      n->counts.back() += c;
    } else {
      n->items.push_back(t);
      n->counts.push_back(c);
    }
  }
  n->fp = fp_multiset(std::move(fps));
  return LabelTerm(std::move(n));
}

LabelTerm::Kind LabelTerm::kind() const { return node_->kind; }
Fp LabelTerm::fp() const { return node_->fp; }
bool LabelTerm::is_int() const { return node_->kind == Kind::Base && !node_->is_string; }
std::int64_t LabelTerm::as_int() const { return node_->ival; }
const std::string& LabelTerm::as_string() const { return node_->sval; }
const std::vector<LabelTerm>& LabelTerm::items() const { return node_->items; }
const std::vector<std::uint64_t>& LabelTerm::counts() const { return node_->counts; }

std::strong_ordering operator<=>(const LabelTerm& a, const LabelTerm& b) {
  if (a.node_ == b.node_ || a.fp() == b.fp()) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return x.kind <=> y.kind;
  switch (x.kind) {
    case LabelTerm::Kind::Base:
      if (x.is_string != y.is_string) return x.is_string <=> y.is_string;
      if (x.is_string) return x.sval <=> y.sval;
      return x.ival <=> y.ival;
    case LabelTerm::Kind::Gap:
      return std::strong_ordering::equal;
    case LabelTerm::Kind::Tuple:
    case LabelTerm::Kind::Multiset: {
      std::size_t m = std::min(x.items.size(), y.items.size());
      for (std::size_t i = 0; i < m; ++i) {
        if (auto c = x.items[i] <=> y.items[i]; c != 0) return c;
        if (x.kind == LabelTerm::Kind::Multiset) {
          if (auto c = x.counts[i] <=> y.counts[i]; c != 0) return c;
        }
      }
      return x.items.size() <=> y.items.size();
    }
  }
  return std::strong_ordering::equal;
}

std::string LabelTerm::to_string() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Base:
      if (node_->is_string) {
        os << '"' << node_->sval << '"';
      } else {
        os << node_->ival;
      }
      break;
    case Kind::Gap:
      os << '#';
      break;
    case Kind::Tuple:
      os << '(';
      for (std::size_t i = 0; i < items().size(); ++i) {
        if (i) os << ',';
        os << items()[i].to_string();
      }
      os << ')';
      break;
    case Kind::Multiset:
      os << '{';
      for (std::size_t i = 0; i < items().size(); ++i) {
        if (i) os << ',';
        os << items()[i].to_string() << 'x' << counts()[i];
      }
      os << '}';
      break;
  }
  return os.str();
}

}  // namespace gbt
