#include "gbt/approx.hpp"

#include <algorithm>
#include <map>

namespace gbt {

const char* to_string(ApproxKind k) {
  switch (k) {
    case ApproxKind::Weak:
      return "weak";
    case ApproxKind::Strong:
      return "strong";
    case ApproxKind::Full:
      return "full";
  }
  return "?";
}

bool CosetApprox::contains(const Permutation& g) const {
  if (empty) return false;
  Permutation x = g * rep.inverse();
  if (chain) return chain->contains(x);
  std::vector<std::size_t> cell_of(x.degree());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (Point p : cells[i]) cell_of[p] = i;
  }
  for (Point p = 0; p < x.degree(); ++p) {
    if (cell_of[x[p]] != cell_of[p]) return false;
  }
  return true;
}

StabChain CosetApprox::group_chain() const {
  if (empty) throw Error("empty coset has no group part");
  if (chain) return *chain;
  return symmetric_product(cells, rep.degree());
}

std::vector<Point> CosetApprox::images_of(Point a) const {
  for (const auto& o : orbits) {
    if (std::binary_search(o.begin(), o.end(), a)) {
      std::vector<Point> out;
      out.reserve(o.size());
      for (Point p : o) out.push_back(rep[p]);
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  throw Error("point not covered by orbits");
}

namespace {

std::vector<std::vector<Point>> cells_by_label(const std::vector<std::int64_t>& lab,
                                               std::vector<std::int64_t>* labels) {
  std::map<std::int64_t, std::vector<Point>> m;
  for (std::size_t v = 0; v < lab.size(); ++v) m[lab[v]].push_back(static_cast<Point>(v));
  std::vector<std::vector<Point>> out;
  out.reserve(m.size());
  for (auto& [l, c] : m) {
    if (labels) labels->push_back(l);
    out.push_back(std::move(c));
  }
  return out;
}

std::shared_ptr<const FpLabelling> entry_labelling(const LabelledDigraph& g, EntryCache* cache) {
  if (cache) {
    if (auto it = cache->find(g.fp()); it != cache->end()) return it->second;
  }
  auto lab = std::make_shared<const FpLabelling>(equitable_fp(to_fp(g)));
  if (cache) {
    if (cache->size() > 100000) cache->clear();
    cache->emplace(g.fp(), lab);
  }
  return lab;
}

std::vector<Point> singletons(const std::vector<std::vector<Point>>& cells) {
  std::vector<Point> out;
  for (const auto& c : cells) {
    if (c.size() == 1) out.push_back(c[0]);
  }
  return out;
}

}  // namespace

StackSummary summarise(ApproxKind kind, const DigraphStack& s, EntryCache* entries) {
  StackSummary out;
  out.kind = kind;
  out.length = s.size();
  const std::size_t n = s.degree();
  switch (kind) {
    case ApproxKind::Strong: {
      auto lab = equitable_fp(squash_fp(s));
      std::vector<std::int64_t> labels;
      out.cells = cells_by_label(lab.vlabel, &labels);
      for (std::size_t i = 0; i < out.cells.size(); ++i) {
        out.keys.push_back({labels[i], static_cast<std::int64_t>(out.cells[i].size())});
      }
      out.fixed = singletons(out.cells);
      break;
    }
    case ApproxKind::Weak: {
      // f(v)[i] is the 1-based index of v's cell in entry i.
      std::vector<std::vector<std::int64_t>> f(n);
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto lab = entry_labelling(s[i], entries);
        std::vector<std::int64_t> labels;
        auto cells = cells_by_label(lab->vlabel, &labels);
        for (std::size_t j = 0; j < cells.size(); ++j) {
          for (Point v : cells[j]) f[v].push_back(static_cast<std::int64_t>(j + 1));
        }
        out.entry_labels.push_back(std::move(labels));
      }
      std::map<std::vector<std::int64_t>, std::vector<Point>> parts;
      for (Point v = 0; v < n; ++v) parts[f[v]].push_back(v);
      for (auto& [key, cell] : parts) {
        auto k = key;
        k.push_back(static_cast<std::int64_t>(cell.size()));
        out.keys.push_back(std::move(k));
        out.cells.push_back(std::move(cell));
      }
      out.fixed = singletons(out.cells);
      break;
    }
    case ApproxKind::Full: {
      auto canon = std::make_shared<CanonResult>(canonical_form_fp(squash_fp(s)));
      // Fixed points of Aut, ordered by their canonical positions.
      std::vector<std::pair<Point, Point>> fixed;
      for (Point v = 0; v < n; ++v) {
        bool fixed_by_all = std::all_of(canon->aut_gens.begin(), canon->aut_gens.end(),
                                        [&](const Permutation& g) { return g[v] == v; });
        if (fixed_by_all) fixed.emplace_back(canon->canon_perm[v], v);
      }
      std::sort(fixed.begin(), fixed.end());
      for (auto& [pos, v] : fixed) out.fixed.push_back(v);
      out.canon = std::move(canon);
      break;
    }
  }
  return out;
}

CosetApprox approx_from(const StackSummary& s, const StackSummary& t) {
  CosetApprox r;
  if (s.kind != t.kind) throw Error("approximator kinds differ");
  if (s.length != t.length) return r;
  if (s.kind == ApproxKind::Full) {
    if (!(s.canon->canon_form == t.canon->canon_form)) return r;
    const std::size_t n = s.canon->canon_perm.degree();
    r.empty = false;
    r.chain = std::shared_ptr<const StabChain>(s.canon, &s.canon->aut);
    r.rep = s.canon->canon_perm * t.canon->canon_perm.inverse();
    r.cardinality = s.canon->aut.order();
    r.orbits = orbits(s.canon->aut_gens, n);
    return r;
  }
  if (s.entry_labels != t.entry_labels) return r;
  if (s.keys != t.keys) return r;
  std::size_t n = 0;
  for (const auto& c : s.cells) n += c.size();
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    for (std::size_t j = 0; j < s.cells[i].size(); ++j) im[s.cells[i][j]] = t.cells[i][j];
  }
  r.empty = false;
  r.rep = Permutation(std::move(im));
  r.cells = s.cells;
  r.cardinality = 1;
  for (const auto& c : s.cells) r.cardinality *= factorial(c.size());
  r.orbits = s.cells;
  std::sort(r.orbits.begin(), r.orbits.end());
  return r;
}

CosetApprox approx(ApproxKind kind, const DigraphStack& s, const DigraphStack& t) {
  if (s.degree() != t.degree()) throw Error("stack degrees differ");
  return approx_from(summarise(kind, s), summarise(kind, t));
}

std::vector<Point> fixed_points(ApproxKind kind, const DigraphStack& s) {
  return summarise(kind, s).fixed;
}

std::shared_ptr<const StackSummary> ApproxCache::summary(const DigraphStack& s) {
  Fp key = s.fp();
  auto fps = s.entry_fps();
  if (auto it = map_.find(key); it != map_.end() && it->second.first == fps) {
    return it->second.second;
  }
  ++evaluations_;
  auto sum = std::make_shared<const StackSummary>(summarise(kind_, s, &entries_));
  if (map_.size() >= capacity_) map_.clear();
  map_[key] = {std::move(fps), sum};
  return sum;
}

CosetApprox ApproxCache::approx(const DigraphStack& s, const DigraphStack& t) {
  if (s.degree() != t.degree()) throw Error("stack degrees differ");
  auto a = summary(s);
  auto b = summary(t);
  return approx_from(*a, *b);
}

std::vector<Point> ApproxCache::fixed_points(const DigraphStack& s) { return summary(s)->fixed; }

}  // namespace gbt
