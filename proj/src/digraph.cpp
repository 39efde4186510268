#include "gbt/digraph.hpp"

#include <algorithm>

namespace gbt {

namespace {

bool arc_less(const Arc& a, const Arc& b) {
  return a.from != b.from ? a.from < b.from : a.to < b.to;
}

Fp digraph_fp(const std::vector<LabelTerm>& vl, const std::vector<Arc>& arcs) {
  std::vector<Fp> parts;
  parts.reserve(1 + vl.size() + 3 * arcs.size());
  parts.push_back(vl.size());
  for (const auto& l : vl) parts.push_back(l.fp());
  for (const auto& a : arcs) {
    parts.push_back(a.from);
    parts.push_back(a.to);
    parts.push_back(a.label.fp());
  }
  // Hash without interning; digraphs are compared structurally when needed.
  Fp h = 0x1D16A9;
  for (Fp x : parts) {
    h = (h ^ x) * 0x100000001B3ULL;
    h ^= h >> 29;
  }
  return h;
}

}  // namespace

LabelledDigraph::LabelledDigraph(std::size_t n) : vlabels_(n, LabelTerm::integer(0)) { finish(); }

LabelledDigraph::LabelledDigraph(std::vector<LabelTerm> vlabels, std::vector<Arc> arcs)
    : vlabels_(std::move(vlabels)), arcs_(std::move(arcs)) {
  const std::size_t n = vlabels_.size();
  for (const auto& l : vlabels_) {
    if (l.kind() == LabelTerm::Kind::Gap) throw Error("Gap is not a valid vertex label");
  }
  for (const auto& a : arcs_) {
    if (a.from >= n || a.to >= n) throw Error("arc endpoint out of range");
    if (a.label.kind() == LabelTerm::Kind::Gap) throw Error("Gap is not a valid arc label");
  }
  std::sort(arcs_.begin(), arcs_.end(), arc_less);
  for (std::size_t i = 1; i < arcs_.size(); ++i) {
    if (arcs_[i].from == arcs_[i - 1].from && arcs_[i].to == arcs_[i - 1].to) {
      throw Error("more than one arc on an ordered pair");
    }
  }
  finish();
}

void LabelledDigraph::finish() { fp_ = digraph_fp(vlabels_, arcs_); }

bool operator==(const LabelledDigraph& a, const LabelledDigraph& b) {
  if (a.fp_ != b.fp_ || a.vlabels_.size() != b.vlabels_.size() ||
      a.arcs_.size() != b.arcs_.size()) {
    return false;
  }
  if (a.vlabels_ != b.vlabels_) return false;
  for (std::size_t i = 0; i < a.arcs_.size(); ++i) {
    const auto& x = a.arcs_[i];
    const auto& y = b.arcs_[i];
    if (x.from != y.from || x.to != y.to || !(x.label == y.label)) return false;
  }
  return true;
}

FpDigraph to_fp(const LabelledDigraph& g) {
  FpDigraph d;
  d.n = g.degree();
  d.vlabels.reserve(d.n);
  for (const auto& l : g.vlabels()) d.vlabels.push_back(l.fp());
  d.arcs.reserve(g.arcs().size());
  for (const auto& a : g.arcs()) d.arcs.push_back({a.from, a.to, a.label.fp()});
  return d;
}

LabelledDigraph digraph_apply(const LabelledDigraph& g, const Permutation& p) {
  if (p.degree() != g.degree()) throw Error("degree mismatch applying permutation to digraph");
  std::vector<LabelTerm> vl(g.degree());
  for (Point v = 0; v < g.degree(); ++v) vl[p[v]] = g.vlabels()[v];
  std::vector<Arc> arcs;
  arcs.reserve(g.arcs().size());
  for (const auto& a : g.arcs()) arcs.push_back({p[a.from], p[a.to], a.label});
  return LabelledDigraph(std::move(vl), std::move(arcs));
}

LabelledDigraph strip_arcs(const LabelledDigraph& g) { return LabelledDigraph(g.vlabels(), {}); }

DigraphStack::DigraphStack(std::size_t n, std::vector<DigraphPtr> entries)
    : n_(n), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e->degree() != n_) throw Error("stack entry degree mismatch");
  }
}

void DigraphStack::push_back(LabelledDigraph g) {
  push_back(std::make_shared<const LabelledDigraph>(std::move(g)));
}

void DigraphStack::push_back(DigraphPtr g) {
  if (g->degree() != n_) throw Error("stack entry degree mismatch");
  entries_.push_back(std::move(g));
}

void DigraphStack::append(const DigraphStack& other) {
  if (other.n_ != n_) throw Error("stack degree mismatch");
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

void DigraphStack::truncate(std::size_t k) {
  if (k < entries_.size()) entries_.resize(k);
}

std::vector<Fp> DigraphStack::entry_fps() const {
  std::vector<Fp> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e->fp());
  return out;
}

Fp DigraphStack::fp() const {
  Fp h = 0x57AC4 ^ n_;
  for (const auto& e : entries_) {
    h = (h ^ e->fp()) * 0x100000001B3ULL;
    h ^= h >> 31;
  }
  return h;
}

bool operator==(const DigraphStack& a, const DigraphStack& b) {
  if (a.n_ != b.n_ || a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (a.entries_[i] != b.entries_[i] && !(*a.entries_[i] == *b.entries_[i])) return false;
  }
  return true;
}

DigraphStack stack_append(const DigraphStack& s, const DigraphStack& t) {
  DigraphStack r = s;
  r.append(t);
  return r;
}

DigraphStack stack_apply(const DigraphStack& s, const Permutation& p) {
  if (p.degree() != s.degree()) throw Error("degree mismatch applying permutation to stack");
  DigraphStack r(s.degree());
  for (const auto& e : s.entries()) r.push_back(digraph_apply(*e, p));
  return r;
}

LabelledDigraph squash(const DigraphStack& s) {
  const std::size_t n = s.degree();
  const std::size_t k = s.size();
  std::vector<LabelTerm> vl;
  vl.reserve(n);
  for (Point v = 0; v < n; ++v) {
    std::vector<LabelTerm> parts;
    parts.reserve(k);
    for (std::size_t i = 0; i < k; ++i) parts.push_back(s[i].vlabels()[v]);
    vl.push_back(LabelTerm::tuple(std::move(parts)));
  }
  std::vector<std::pair<Point, Point>> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& a : s[i].arcs()) pairs.emplace_back(a.from, a.to);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<std::size_t> cursor(k, 0);
  std::vector<Arc> arcs;
  arcs.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    std::vector<LabelTerm> parts;
    parts.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& ai = s[i].arcs();
      auto& c = cursor[i];
      if (c < ai.size() && ai[c].from == a && ai[c].to == b) {
        parts.push_back(ai[c].label);
        ++c;
      } else {
        parts.push_back(LabelTerm::gap());
      }
    }
    arcs.push_back({a, b, LabelTerm::tuple(std::move(parts))});
  }
  return LabelledDigraph(std::move(vl), std::move(arcs));
}

FpDigraph squash_fp(const DigraphStack& s) {
  const std::size_t n = s.degree();
  const std::size_t k = s.size();
  FpDigraph d;
  d.n = n;
  d.vlabels.reserve(n);
  std::vector<Fp> parts(k);
  for (Point v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < k; ++i) parts[i] = s[i].vlabels()[v].fp();
    d.vlabels.push_back(fp_tuple(parts));
  }
  // Dense per-pair slots; degrees are small.
  std::vector<std::int32_t> slot(n * n, -1);
  std::vector<std::pair<Point, Point>> pairs;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& a : s[i].arcs()) {
      auto& sl = slot[static_cast<std::size_t>(a.from) * n + a.to];
      if (sl < 0) {
        sl = static_cast<std::int32_t>(pairs.size());
        pairs.emplace_back(a.from, a.to);
      }
    }
  }
  std::vector<Fp> labels(pairs.size() * k, fp_gap());
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& a : s[i].arcs()) {
      auto sl = static_cast<std::size_t>(slot[static_cast<std::size_t>(a.from) * n + a.to]);
      labels[sl * k + i] = a.label.fp();
    }
  }
  d.arcs.reserve(pairs.size());
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    d.arcs.push_back({pairs[j].first, pairs[j].second,
                      fp_tuple(std::span<const Fp>(labels.data() + j * k, k))});
  }
  std::sort(d.arcs.begin(), d.arcs.end());
  return d;
}

LabelledDigraph orbital_graph(const std::vector<Permutation>& gens, std::size_t n, Point alpha,
                              Point beta) {
  if (alpha == beta) throw Error("orbital graph base pair must have distinct points");
  if (alpha >= n || beta >= n) throw Error("base pair out of range");
  std::vector<char> seen(n * n, 0);
  std::vector<std::pair<Point, Point>> orb{{alpha, beta}};
  seen[alpha * n + beta] = 1;
  for (std::size_t i = 0; i < orb.size(); ++i) {
    for (const auto& g : gens) {
      Point a = g[orb[i].first], b = g[orb[i].second];
      if (!seen[a * n + b]) {
        seen[a * n + b] = 1;
        orb.emplace_back(a, b);
      }
    }
  }
  std::vector<Arc> arcs;
  arcs.reserve(orb.size());
  const LabelTerm zero = LabelTerm::integer(0);
  for (const auto& [a, b] : orb) arcs.push_back({a, b, zero});
  return LabelledDigraph(std::vector<LabelTerm>(n, zero), std::move(arcs));
}

LabelledDigraph orbital_graph(const StabChain& chain, Point alpha, Point beta) {
  return orbital_graph(chain.strong_generators(), chain.degree(), alpha, beta);
}

LabelledDigraph point_digraph(std::size_t n, Point alpha) {
  if (alpha >= n) throw Error("point out of range");
  std::vector<LabelTerm> vl(n, LabelTerm::integer(0));
  vl[alpha] = LabelTerm::integer(1);
  return LabelledDigraph(std::move(vl), {});
}

}  // namespace gbt
