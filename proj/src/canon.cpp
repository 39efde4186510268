#include "gbt/canon.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "gbt/equitable.hpp"

namespace gbt {

namespace {

FpDigraph relabel(const FpDigraph& g, const Permutation& lambda) {
  FpDigraph d;
  d.n = g.n;
  d.vlabels.resize(g.n);
  for (Point v = 0; v < g.n; ++v) d.vlabels[lambda[v]] = g.vlabels[v];
  d.arcs.reserve(g.arcs.size());
  for (const auto& a : g.arcs) d.arcs.push_back({lambda[a.from], lambda[a.to], a.label});
  std::sort(d.arcs.begin(), d.arcs.end());
  return d;
}

bool cert_less(const FpDigraph& a, const FpDigraph& b) {
  if (a.vlabels != b.vlabels) return a.vlabels < b.vlabels;
  return a.arcs < b.arcs;
}

class Canoniser {
 public:
  explicit Canoniser(const FpDigraph& g) : g_(g), n_(g.n) {}

  CanonResult run() {
    std::vector<std::int64_t> start(n_);
    for (std::size_t v = 0; v < n_; ++v) start[v] = static_cast<std::int64_t>(g_.vlabels[v]);
    dfs(std::move(start), 0);
    CanonResult r;
    r.canon_perm = *best_lambda_;
    r.canon_form = std::move(*best_cert_);
    r.aut = build_chain(gens_, n_);
    r.aut_gens = std::move(gens_);
    r.leaves = leaves_;
    return r;
  }

 private:
  // Returns the depth to unwind to, or -1 to continue normally.
  std::ptrdiff_t dfs(std::vector<std::int64_t> lab, std::size_t depth) {
    auto refined = equitable_fp(g_, std::move(lab));
    lab = std::move(refined.vlabel);
    if (refined.num_cells == n_) return leaf(lab);

    std::map<std::int64_t, std::vector<Point>> cells;
    for (Point v = 0; v < n_; ++v) cells[lab[v]].push_back(v);
    const std::vector<Point>* target = nullptr;
    for (const auto& [l, c] : cells) {
      if (c.size() >= 2 && (!target || c.size() < target->size())) target = &c;
    }
    std::vector<Point> tried;
    for (Point v : *target) {
      if (!tried.empty() && !gens_.empty() && pruned(v, tried)) continue;
      std::vector<std::int64_t> child(n_);
      const Fp one = fp_int(1), zero = fp_int(0);
      for (Point u = 0; u < n_; ++u) {
        Fp parts[2] = {fp_int(lab[u]), u == v ? one : zero};
        child[u] = static_cast<std::int64_t>(fp_tuple(parts));
      }
      path_.push_back(v);
      auto up = dfs(std::move(child), depth + 1);
      path_.pop_back();
      tried.push_back(v);
      if (up >= 0 && static_cast<std::size_t>(up) < depth) return up;
    }
    return -1;
  }

  bool pruned(Point v, const std::vector<Point>& tried) {
    if (stab_path_ != path_ || stab_gens_ != gens_.size()) {
      StabChain c = build_chain(gens_, n_, path_);
      std::vector<Permutation> sg;
      if (c.levels().size() > path_.size()) sg = c.levels()[path_.size()].gens;
      auto orbs = orbits(sg, n_);
      orbit_id_.assign(n_, 0);
      for (std::size_t i = 0; i < orbs.size(); ++i) {
        for (Point p : orbs[i]) orbit_id_[p] = i;
      }
      stab_path_ = path_;
      stab_gens_ = gens_.size();
    }
    return std::any_of(tried.begin(), tried.end(),
                       [&](Point t) { return orbit_id_[t] == orbit_id_[v]; });
  }

  std::ptrdiff_t leaf(const std::vector<std::int64_t>& lab) {
    ++leaves_;
    std::vector<std::pair<std::int64_t, Point>> order;
    order.reserve(n_);
    for (Point v = 0; v < n_; ++v) order.emplace_back(lab[v], v);
    std::sort(order.begin(), order.end());
    std::vector<Point> im(n_);
    for (std::size_t r = 0; r < n_; ++r) im[order[r].second] = static_cast<Point>(r);
    Permutation lambda(std::move(im));
    FpDigraph cert = relabel(g_, lambda);
    if (!first_cert_) {
      first_cert_ = cert;
      first_lambda_ = lambda;
      first_path_ = path_;
      best_cert_ = std::move(cert);
      best_lambda_ = lambda;
      return -1;
    }
    if (cert == *first_cert_) {
      add_gen(lambda * first_lambda_->inverse());
      std::size_t common = 0;
      while (common < path_.size() && common < first_path_.size() &&
             path_[common] == first_path_[common]) {
        ++common;
      }
      return static_cast<std::ptrdiff_t>(common);
    }
    if (cert == *best_cert_) {
      add_gen(lambda * best_lambda_->inverse());
      return -1;
    }
    if (cert_less(cert, *best_cert_)) {
      best_cert_ = std::move(cert);
      best_lambda_ = lambda;
    }
    return -1;
  }

  void add_gen(Permutation p) {
    if (p.is_identity()) return;
    if (std::find(gens_.begin(), gens_.end(), p) == gens_.end()) gens_.push_back(std::move(p));
  }

  const FpDigraph& g_;
  std::size_t n_;
  std::vector<Point> path_;
  std::vector<Point> first_path_;
  std::optional<FpDigraph> first_cert_, best_cert_;
  std::optional<Permutation> first_lambda_, best_lambda_;
  std::vector<Permutation> gens_;
  std::size_t leaves_ = 0;
  std::vector<Point> stab_path_;
  std::size_t stab_gens_ = static_cast<std::size_t>(-1);
  std::vector<std::size_t> orbit_id_;
};

}  // namespace

CanonResult canonical_form_fp(const FpDigraph& g, std::size_t cap) {
  if (g.n > cap) {
    throw Error("canonical form requested for degree " + std::to_string(g.n) +
                " above the cap of " + std::to_string(cap) + "; use the Strong approximator");
  }
  if (g.n == 0) {
    CanonResult r;
    r.canon_perm = Permutation(0);
    r.canon_form = g;
    r.aut = StabChain(0);
    return r;
  }
  return Canoniser(g).run();
}

CanonResult canonical_form(const LabelledDigraph& g, std::size_t cap) {
  return canonical_form_fp(to_fp(g), cap);
}

}  // namespace gbt
