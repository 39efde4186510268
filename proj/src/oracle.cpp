#include "gbt/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace gbt {

namespace {

constexpr std::size_t kGroupCap = 1000000;

std::vector<Point> image_set(const Permutation& g, const std::vector<Point>& s) {
  std::vector<Point> out;
  out.reserve(s.size());
  for (Point p : s) out.push_back(g[p]);
  std::sort(out.begin(), out.end());
  return out;
}

bool digraph_maps(const LabelledDigraph& a, const LabelledDigraph& b, const Permutation& g) {
  const std::size_t n = a.degree();
  if (b.degree() != n || a.arcs().size() != b.arcs().size()) return false;
  for (Point v = 0; v < n; ++v) {
    if (!(a.vlabels()[v] == b.vlabels()[g[v]])) return false;
  }
  std::map<std::pair<Point, Point>, Fp> target;
  for (const auto& arc : b.arcs()) target[{arc.from, arc.to}] = arc.label.fp();
  for (const auto& arc : a.arcs()) {
    auto it = target.find({g[arc.from], g[arc.to]});
    if (it == target.end() || it->second != arc.label.fp()) return false;
  }
  return true;
}

// Breadth-first closure; nullopt once the cap is passed.
std::optional<std::vector<Permutation>> closure(const std::vector<Permutation>& gens,
                                                std::size_t n) {
  std::unordered_set<Permutation, PermutationHash> seen{Permutation(n)};
  std::vector<Permutation> queue{Permutation(n)};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& g : gens) {
      Permutation p = queue[i] * g;
      if (seen.insert(p).second) {
        queue.push_back(std::move(p));
        if (queue.size() > kGroupCap) return std::nullopt;
      }
    }
  }
  return queue;
}

}  // namespace

bool oracle_contains(const ConstraintSpec& c, const Permutation& g) {
  switch (c.type) {
    case ConstraintType::Group:
    case ConstraintType::Coset: {
      Permutation x = c.type == ConstraintType::Coset ? g * c.perm.inverse() : g;
      auto elems = closure(c.gens, c.degree);
      if (!elems) throw Error("group too large for the oracle");
      return std::find(elems->begin(), elems->end(), x) != elems->end();
    }
    case ConstraintType::SetStab:
      return image_set(g, c.sets[0]) == c.sets[0];
    case ConstraintType::SetTransport:
      return image_set(g, c.sets[0]) == c.sets2[0];
    case ConstraintType::ListOfSetsStab:
    case ConstraintType::ListOfSetsTransport: {
      const auto& to = c.type == ConstraintType::ListOfSetsStab ? c.sets : c.sets2;
      if (to.size() != c.sets.size()) return false;
      for (std::size_t i = 0; i < c.sets.size(); ++i) {
        if (image_set(g, c.sets[i]) != to[i]) return false;
      }
      return true;
    }
    case ConstraintType::SetOfSetsStab:
    case ConstraintType::SetOfSetsTransport: {
      const auto& to = c.type == ConstraintType::SetOfSetsStab ? c.sets : c.sets2;
      std::set<std::vector<Point>> want(to.begin(), to.end()), got;
      for (const auto& s : c.sets) got.insert(image_set(g, s));
      return got == want;
    }
    case ConstraintType::Centralizer:
    case ConstraintType::Conjugacy: {
      const Permutation& to = c.type == ConstraintType::Centralizer ? c.perm : c.perm2;
      // x^g = to  <=>  g * to = x * g, checked pointwise.
      for (Point p = 0; p < g.degree(); ++p) {
        if (to[g[p]] != g[c.perm[p]]) return false;
      }
      return true;
    }
    case ConstraintType::DigraphAuto:
      return digraph_maps(*c.digraph, *c.digraph, g);
    case ConstraintType::DigraphIso:
      return digraph_maps(*c.digraph, *c.digraph2, g);
  }
  return false;
}

std::vector<Permutation> brute_solve(const std::vector<ConstraintSpec>& specs, std::size_t degree) {
  for (const auto& c : specs) {
    if (c.degree != degree) throw Error("constraint degree mismatch");
  }
  // Domain: the smallest enumerable group or coset among the specs.
  std::optional<std::vector<Permutation>> domain;
  std::size_t domain_spec = specs.size();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& c = specs[i];
    if (c.type != ConstraintType::Group && c.type != ConstraintType::Coset) continue;
    auto elems = closure(c.gens, degree);
    if (!elems || (domain && domain->size() <= elems->size())) continue;
    if (c.type == ConstraintType::Coset) {
      for (auto& e : *elems) e = e * c.perm;
    }
    domain = std::move(elems);
    domain_spec = i;
  }
  if (!domain) {
    if (degree > 8) throw Error("oracle domain too large");
    std::vector<Point> im(degree);
    for (std::size_t i = 0; i < degree; ++i) im[i] = static_cast<Point>(i);
    domain.emplace();
    do {
      domain->emplace_back(im);
    } while (std::next_permutation(im.begin(), im.end()));
  }

  // Group membership via a hash set of each group's elements, built once.
  std::vector<std::optional<std::unordered_set<Permutation, PermutationHash>>> groups(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& c = specs[i];
    if (i == domain_spec) continue;
    if (c.type == ConstraintType::Group || c.type == ConstraintType::Coset) {
      auto elems = closure(c.gens, degree);
      if (!elems) throw Error("group too large for the oracle");
      groups[i].emplace(elems->begin(), elems->end());
    }
  }
  std::vector<Permutation> out;
  for (const auto& g : *domain) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < specs.size(); ++i) {
      if (i == domain_spec) continue;
      const auto& c = specs[i];
      if (groups[i]) {
        Permutation x = c.type == ConstraintType::Coset ? g * c.perm.inverse() : g;
        ok = groups[i]->count(x) > 0;
      } else {
        ok = oracle_contains(c, g);
      }
    }
    if (ok) out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Permutation> brute_iso_stacks(const DigraphStack& s, const DigraphStack& t) {
  const std::size_t n = s.degree();
  if (n > 7) throw Error("stack isomorphism oracle limited to degree 7");
  std::vector<Permutation> out;
  if (s.size() != t.size() || t.degree() != n) return out;
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>(i);
  do {
    Permutation g(im);
    bool ok = true;
    for (std::size_t i = 0; ok && i < s.size(); ++i) ok = digraph_maps(s[i], t[i], g);
    if (ok) out.push_back(std::move(g));
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

namespace {

/// Per-entry vertex labels and a dense arc table of (present, label) pairs.
struct DenseStack {
  std::size_t n = 0;
  std::vector<std::vector<Fp>> vl;
  std::vector<std::vector<std::pair<bool, Fp>>> arc;
};

DenseStack densify(const DigraphStack& s) {
  DenseStack d;
  d.n = s.degree();
  for (const auto& e : s.entries()) {
    std::vector<Fp> vl(d.n);
    std::vector<std::pair<bool, Fp>> arc(d.n * d.n, {false, 0});
    for (Point v = 0; v < d.n; ++v) vl[v] = e->vlabels()[v].fp();
    for (const auto& a : e->arcs()) arc[a.from * d.n + a.to] = {true, a.label.fp()};
    d.vl.push_back(std::move(vl));
    d.arc.push_back(std::move(arc));
  }
  return d;
}

struct IsoSearch {
  const DenseStack& s;
  const DenseStack& t;
  std::vector<Point> img;
  std::vector<bool> used;
  std::vector<Permutation> out;

  bool consistent(Point i, Point b) const {
    const std::size_t n = s.n;
    for (std::size_t e = 0; e < s.vl.size(); ++e) {
      if (s.vl[e][i] != t.vl[e][b]) return false;
      if (s.arc[e][i * n + i] != t.arc[e][b * n + b]) return false;
      for (Point j = 0; j < i; ++j) {
        const Point c = img[j];
        if (s.arc[e][i * n + j] != t.arc[e][b * n + c]) return false;
        if (s.arc[e][j * n + i] != t.arc[e][c * n + b]) return false;
      }
    }
    return true;
  }

  void run(Point i) {
    if (i == s.n) {
      out.emplace_back(img);
      return;
    }
    for (Point b = 0; b < s.n; ++b) {
      if (used[b] || !consistent(i, b)) continue;
      used[b] = true;
      img[i] = b;
      run(i + 1);
      used[b] = false;
    }
  }
};

}  // namespace

std::vector<Permutation> exact_iso_stacks(const DigraphStack& s, const DigraphStack& t) {
  if (s.degree() != t.degree()) throw Error("stack degrees differ");
  if (s.size() != t.size()) return {};
  const DenseStack ds = densify(s), dt = densify(t);
  IsoSearch search{ds, dt, std::vector<Point>(s.degree()), std::vector<bool>(s.degree()), {}};
  search.run(0);
  std::sort(search.out.begin(), search.out.end());
  return search.out;
}

}  // namespace gbt
