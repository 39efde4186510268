#include "gbt/search.hpp"

#include <algorithm>

namespace gbt {

SearchEngine::SearchEngine(ConstraintList constraints, std::size_t degree, SearchConfig config)
    : cs_(std::move(constraints)), n_(degree), cfg_(config), cache_(config.approx_kind) {
  for (const auto& c : cs_) {
    if (c->degree() != n_) throw Error("constraint degree does not match search degree");
    states_.push_back(c->make_state());
  }
}

CosetApprox SearchEngine::approx(const DigraphStack& s, const DigraphStack& t) {
  return cache_.approx(s, t);
}

DigraphStack SearchEngine::postprocess(DigraphStack ext) const {
  if (cfg_.digraph_mode == DigraphMode::Full) return ext;
  DigraphStack out(n_);
  for (const auto& e : ext.entries()) out.push_back(strip_arcs(*e));
  return out;
}

StackPair SearchEngine::refine(DigraphStack s, DigraphStack t) {
  RefinerContext ctx{&cache_, cfg_.orbital_cap, cfg_.filter_orbitals};
  CosetApprox cur = approx(s, t);
  while (!cur.empty) {
    ++stats_.refine_rounds;
    DigraphStack s0 = s, t0 = t;
    for (std::size_t i = 0; i < cs_.size() && s.size() == t.size(); ++i) {
      DigraphStack ls = postprocess(cs_[i]->refine_left(states_[i].get(), s, ctx));
      DigraphStack rt = postprocess(cs_[i]->refine_right(states_[i].get(), t, ctx));
      s.append(ls);
      t.append(rt);
    }
    CosetApprox next = approx(s, t);
    if (!(next.cardinality < cur.cardinality)) return {std::move(s0), std::move(t0)};
    cur = std::move(next);
  }
  return {std::move(s), std::move(t)};
}

SplitResult SearchEngine::split(const DigraphStack& s, const DigraphStack& t) {
  CosetApprox st = approx(s, t);
  if (st.empty || st.cardinality < 2) throw Error("split needs at least two candidates");
  // The orbits of the group part depend on S alone.
  const std::vector<Point>* best = nullptr;
  for (const auto& o : st.orbits) {
    if (o.size() >= 2 && (!best || o.size() < best->size() ||
                          (o.size() == best->size() && o[0] < (*best)[0]))) {
      best = &o;
    }
  }
  if (!best) throw Error("approximation has no orbit of size two or more");
  SplitResult r;
  r.alpha = (*best)[0];
  r.left = DigraphStack(n_);
  r.left.push_back(point_digraph(n_, r.alpha));
  r.targets = st.images_of(r.alpha);
  for (Point b : r.targets) {
    DigraphStack ti(n_);
    ti.push_back(point_digraph(n_, b));
    r.right.push_back(std::move(ti));
  }
  return r;
}

void SearchEngine::enter_node(std::size_t depth) {
  ++stats_.nodes;
  stats_.max_depth = std::max(stats_.max_depth, depth);
  if (cfg_.node_limit && stats_.nodes > *cfg_.node_limit) throw NodeLimitExceeded(stats_);
}

void SearchEngine::record_left(std::size_t depth, const DigraphStack& s) {
  auto [it, fresh] = left_by_depth_.emplace(depth, s.fp());
  if (!fresh && it->second != s.fp()) ++stats_.left_sequence_violations;
}

bool SearchEngine::accepts(const Permutation& h) const {
  return std::all_of(cs_.begin(), cs_.end(), [&](const ConstraintPtr& c) { return c->contains(h); });
}

void SearchEngine::search(const DigraphStack& s0, const DigraphStack& t0, std::size_t depth,
                          bool single, std::vector<Permutation>& out) {
  auto [s, t] = refine(s0, t0);
  CosetApprox a = approx(s, t);
  if (a.empty) return;
  record_left(depth, s);
  if (a.cardinality == 1) {
    if (stack_apply(s, a.rep) == t && accepts(a.rep)) out.push_back(a.rep);
    return;
  }
  SplitResult sp = split(s, t);
  DigraphStack left = stack_append(s, sp.left);
  for (const auto& ti : sp.right) {
    enter_node(depth + 1);
    search(left, stack_append(t, ti), depth + 1, single, out);
    if (single && !out.empty()) return;
  }
}

std::vector<Permutation> SearchEngine::search_all() {
  std::vector<Permutation> out;
  search(DigraphStack(n_), DigraphStack(n_), 0, false, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Permutation> SearchEngine::search_single() {
  std::vector<Permutation> out;
  search(DigraphStack(n_), DigraphStack(n_), 0, true, out);
  if (out.empty()) return std::nullopt;
  return out.front();
}

void SearchEngine::bsgs(const DigraphStack& s0, std::size_t depth, BsgsResult& out) {
  auto [s, t] = refine(s0, s0);
  CosetApprox a = approx(s, t);
  if (a.empty) throw Error("intersection is not a group: Approx(S,S) is empty");
  record_left(depth, s);
  if (a.cardinality == 1) return;

  SplitResult sp = split(s, t);
  DigraphStack left = stack_append(s, sp.left);
  enter_node(depth + 1);
  bsgs(left, depth + 1, out);
  out.base.insert(out.base.begin(), sp.left);
  out.base_points.insert(out.base_points.begin(), sp.alpha);

  std::vector<Point> done{sp.alpha};
  for (std::size_t i = 0; i < sp.targets.size(); ++i) {
    Point beta = sp.targets[i];
    if (beta == sp.alpha) continue;
    // Skip beta if it lies in the <X>-orbit of an earlier target.
    bool pruned = false;
    for (const auto& o : orbits(out.strong_gens, n_)) {
      if (std::binary_search(o.begin(), o.end(), beta)) {
        pruned = std::any_of(done.begin(), done.end(), [&](Point d) {
          return std::binary_search(o.begin(), o.end(), d);
        });
        break;
      }
    }
    done.push_back(beta);
    if (pruned) continue;
    std::vector<Permutation> found;
    enter_node(depth + 1);
    search(left, stack_append(s, sp.right[i]), depth + 1, true, found);
    if (!found.empty()) out.strong_gens.push_back(found.front());
  }
}

BsgsResult SearchEngine::search_bsgs() {
  BsgsResult r;
  bsgs(DigraphStack(n_), 0, r);
  r.order = build_chain(r.strong_gens, n_).order();
  return r;
}

SearchAllResult search_all(const ConstraintList& cs, std::size_t degree, const SearchConfig& cfg) {
  SearchEngine e(cs, degree, cfg);
  auto el = e.search_all();
  return {std::move(el), e.stats()};
}

SearchSingleResult search_single(const ConstraintList& cs, std::size_t degree,
                                 const SearchConfig& cfg) {
  SearchEngine e(cs, degree, cfg);
  auto el = e.search_single();
  return {std::move(el), e.stats()};
}

BsgsSearchResult search_bsgs(const ConstraintList& cs, std::size_t degree, const SearchConfig& cfg) {
  SearchEngine e(cs, degree, cfg);
  auto r = e.search_bsgs();
  return {std::move(r), e.stats()};
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Leon:
      return "leon";
    case Mode::Orbital:
      return "orbital";
    case Mode::Strong:
      return "strong";
    case Mode::Full:
      return "full";
  }
  return "?";
}

Mode mode_from_string(const std::string& s) {
  for (Mode m : {Mode::Leon, Mode::Orbital, Mode::Strong, Mode::Full}) {
    if (s == to_string(m)) return m;
  }
  throw Error("unknown mode '" + s + "'");
}

SearchConfig config_for(Mode m) {
  SearchConfig c;
  switch (m) {
    case Mode::Leon:
      c.digraph_mode = DigraphMode::Arcless;
      c.approx_kind = ApproxKind::Weak;
      break;
    case Mode::Orbital:
      c.approx_kind = ApproxKind::Weak;
      c.filter_orbitals = true;
      break;
    case Mode::Strong:
      c.approx_kind = ApproxKind::Strong;
      break;
    case Mode::Full:
      c.approx_kind = ApproxKind::Full;
      break;
  }
  return c;
}

}  // namespace gbt
