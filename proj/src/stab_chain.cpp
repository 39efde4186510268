#include "gbt/stab_chain.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gbt {

namespace {

void extend_orbit(StabChain::Level& lv, std::size_t n) {
  if (lv.transversal.empty()) {
    lv.transversal.assign(n, std::nullopt);
    lv.inv_transversal.assign(n, std::nullopt);
    lv.transversal[lv.base] = Permutation(n);
    lv.inv_transversal[lv.base] = Permutation(n);
    lv.orbit = {lv.base};
  }
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    Point p = lv.orbit[k];
    for (const auto& g : lv.gens) {
      Point q = g[p];
      if (lv.transversal[q]) continue;
      lv.transversal[q] = *lv.transversal[p] * g;
      lv.inv_transversal[q] = lv.transversal[q]->inverse();
      lv.orbit.push_back(q);
    }
  }
}

BigCard product_of_orbits(const std::vector<StabChain::Level>& levels) {
  BigCard c = 1;
  for (const auto& lv : levels) c *= lv.orbit.size();
  return c;
}

}  // namespace

std::vector<Point> StabChain::base() const {
  std::vector<Point> b;
  b.reserve(levels_.size());
  for (const auto& lv : levels_) b.push_back(lv.base);
  return b;
}

std::vector<Permutation> StabChain::strong_generators() const {
  if (levels_.empty()) return {};
  return levels_.front().gens;
}

BigCard StabChain::order() const { return product_of_orbits(levels_); }

std::pair<Permutation, std::size_t> StabChain::strip(Permutation g, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const auto& lv = levels_[l];
    Point b = g[lv.base];
    if (!lv.transversal[b]) return {std::move(g), l};
    g *= *lv.inv_transversal[b];
  }
  return {std::move(g), levels_.size()};
}

bool StabChain::contains(const Permutation& p) const {
  if (p.degree() != degree_) throw Error("degree mismatch in membership test");
  auto [h, lvl] = strip(p);
  return lvl == levels_.size() && h.is_identity();
}

bool StabChain::is_trivial() const {
  return std::all_of(levels_.begin(), levels_.end(),
                     [](const Level& lv) { return lv.orbit.size() == 1; });
}

StabChain build_chain(const std::vector<Permutation>& gens, std::size_t n,
                      std::span<const Point> base_prefix,
                      const std::optional<BigCard>& known_order) {
  for (const auto& g : gens) {
    if (g.degree() != n) {
      throw Error("generator degree " + std::to_string(g.degree()) + " does not match " +
                  std::to_string(n));
    }
  }
  StabChain chain(n);
  auto& lv = chain.mutable_levels();

  std::vector<Point> base;
  for (Point b : base_prefix) {
    if (b >= n) throw Error("base point out of range");
    if (std::find(base.begin(), base.end(), b) == base.end()) base.push_back(b);
  }
  std::vector<Permutation> strong;
  for (const auto& g : gens) {
    if (g.is_identity()) continue;
    if (std::find(strong.begin(), strong.end(), g) != strong.end()) continue;
    strong.push_back(g);
    bool fixes_all =
        std::all_of(base.begin(), base.end(), [&](Point b) { return g[b] == b; });
    if (fixes_all) base.push_back(g.first_moved());
  }
  for (Point b : base) {
    StabChain::Level l;
    l.base = b;
    lv.push_back(std::move(l));
  }
  for (std::size_t i = 0; i < lv.size(); ++i) {
    for (const auto& g : strong) {
      bool fixes_prefix = true;
      for (std::size_t j = 0; j < i; ++j) fixes_prefix = fixes_prefix && g[lv[j].base] == lv[j].base;
      if (fixes_prefix) lv[i].gens.push_back(g);
    }
    extend_orbit(lv[i], n);
  }

  auto reached = [&] { return known_order && product_of_orbits(lv) == *known_order; };

  // checked[i] holds (orbit position, generator index) pairs whose Schreier
  // generator sifted to the identity.
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> checked(lv.size());
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(lv.size()) - 1;
  while (i >= 0 && !reached()) {
    bool restarted = false;
    const auto& level = lv[i];  // not used after lv grows
    for (std::size_t pos = 0; !restarted && pos < lv[i].orbit.size(); ++pos) {
      for (std::size_t gi = 0; gi < level.gens.size(); ++gi) {
        if (checked[i].count({pos, gi})) continue;
        Point beta = level.orbit[pos];
        const auto& s = level.gens[gi];
        Permutation y = *level.transversal[beta] * s * *level.inv_transversal[s[beta]];
        auto [h, j] = chain.strip(std::move(y), static_cast<std::size_t>(i) + 1);
        if (h.is_identity()) {
          checked[i].insert({pos, gi});
          continue;
        }
        if (j == lv.size()) {
          StabChain::Level nl;
          nl.base = h.first_moved();
          lv.push_back(std::move(nl));
          checked.emplace_back();
          extend_orbit(lv.back(), n);
        }
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
          lv[l].gens.push_back(h);
          extend_orbit(lv[l], n);
        }
        i = static_cast<std::ptrdiff_t>(j);
        restarted = true;
        break;
      }
    }
    if (!restarted) --i;
  }
  return chain;
}

bool contains(const StabChain& chain, const Permutation& p) { return chain.contains(p); }
BigCard order(const StabChain& chain) { return chain.order(); }

std::vector<std::vector<Point>> orbits(const std::vector<Permutation>& gens, std::size_t n) {
  std::vector<std::ptrdiff_t> comp(n, -1);
  std::vector<std::vector<Point>> out;
  for (Point s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Point> orb{s};
    comp[s] = static_cast<std::ptrdiff_t>(out.size());
    for (std::size_t k = 0; k < orb.size(); ++k) {
      for (const auto& g : gens) {
        Point q = g[orb[k]];
        if (comp[q] < 0) {
          comp[q] = comp[s];
          orb.push_back(q);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

StabChain pointwise_stabilizer(const StabChain& chain, std::span<const Point> F) {
  std::vector<Point> distinct;
  for (Point f : F) {
    if (f >= chain.degree()) throw Error("point out of range");
    if (std::find(distinct.begin(), distinct.end(), f) == distinct.end()) distinct.push_back(f);
  }
  StabChain full = build_chain(chain.strong_generators(), chain.degree(), distinct, chain.order());
  StabChain out(chain.degree());
  auto& src = full.mutable_levels();
  for (std::size_t l = distinct.size(); l < src.size(); ++l) {
    out.mutable_levels().push_back(std::move(src[l]));
  }
  return out;
}

std::optional<Permutation> tuple_transporter_prefixed(const StabChain& chain,
                                                      std::span<const Point> F,
                                                      std::span<const Point> F2) {
  if (F.size() != F2.size()) throw Error("tuple lengths differ");
  const std::size_t n = chain.degree();
  // Repeated entries in F must be matched by repeated entries in F2.
  std::vector<Point> distinct, targets;
  for (std::size_t k = 0; k < F.size(); ++k) {
    if (F[k] >= n || F2[k] >= n) throw Error("point out of range");
    auto it = std::find(distinct.begin(), distinct.end(), F[k]);
    if (it == distinct.end()) {
      distinct.push_back(F[k]);
      targets.push_back(F2[k]);
    } else if (targets[it - distinct.begin()] != F2[k]) {
      return std::nullopt;
    }
  }
  {
    auto sorted = targets;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
  }
  const auto& lv = chain.levels();
  if (lv.size() < distinct.size()) throw Error("chain base does not start with the tuple");
  Permutation a(n);
  for (std::size_t l = 0; l < distinct.size(); ++l) {
    if (lv[l].base != distinct[l]) throw Error("chain base does not start with the tuple");
    const auto& u = lv[l].transversal[targets[l]];
    if (!u) return std::nullopt;
    const auto& uinv = *lv[l].inv_transversal[targets[l]];
    for (std::size_t m = l + 1; m < targets.size(); ++m) targets[m] = uinv[targets[m]];
    a = *u * a;
  }
  return a;
}

std::optional<Permutation> tuple_transporter(const StabChain& chain, std::span<const Point> F,
                                             std::span<const Point> F2) {
  if (F.size() != F2.size()) throw Error("tuple lengths differ");
  std::vector<Point> distinct;
  for (Point f : F) {
    if (f >= chain.degree()) throw Error("point out of range");
    if (std::find(distinct.begin(), distinct.end(), f) == distinct.end()) distinct.push_back(f);
  }
  auto b = chain.base();
  if (b.size() >= distinct.size() && std::equal(distinct.begin(), distinct.end(), b.begin())) {
    return tuple_transporter_prefixed(chain, F, F2);
  }
  StabChain re = build_chain(chain.strong_generators(), chain.degree(), distinct, chain.order());
  return tuple_transporter_prefixed(re, F, F2);
}

std::vector<Permutation> enumerate_elements(const StabChain& chain, std::size_t cap) {
  if (chain.order() > cap) throw Error("group order exceeds enumeration cap");
  std::vector<Permutation> out{Permutation(chain.degree())};
  const auto& lv = chain.levels();
  // Element = u_{k-1} * ... * u_0, built from the deepest level outward.
  for (std::size_t l = lv.size(); l-- > 0;) {
    std::vector<Permutation> next;
    next.reserve(out.size() * lv[l].orbit.size());
    for (const auto& e : out) {
      for (Point p : lv[l].orbit) next.push_back(e * *lv[l].transversal[p]);
    }
    out = std::move(next);
  }
  return out;
}

Permutation element_from_indices(const StabChain& chain, std::span<const std::uint64_t> idx) {
  const auto& lv = chain.levels();
  Permutation a(chain.degree());
  for (std::size_t l = 0; l < lv.size() && l < idx.size(); ++l) {
    Point p = lv[l].orbit[idx[l] % lv[l].orbit.size()];
    a = *lv[l].transversal[p] * a;
  }
  return a;
}

StabChain symmetric_product(const std::vector<std::vector<Point>>& cells, std::size_t n) {
  StabChain chain(n);
  auto& lv = chain.mutable_levels();
  for (const auto& cell : cells) {
    auto c = cell;
    std::sort(c.begin(), c.end());
    for (std::size_t j = 0; j + 1 < c.size(); ++j) {
      StabChain::Level l;
      l.base = c[j];
      l.transversal.assign(n, std::nullopt);
      l.inv_transversal.assign(n, std::nullopt);
      for (std::size_t t = j; t < c.size(); ++t) {
        Permutation tr(n);
        if (t != j) {
          std::vector<Point> im = tr.images();
          std::swap(im[c[j]], im[c[t]]);
          tr = Permutation(std::move(im));
        }
        l.orbit.push_back(c[t]);
        l.transversal[c[t]] = tr;
        l.inv_transversal[c[t]] = tr;
      }
      for (std::size_t t = j; t + 1 < c.size(); ++t) {
        std::vector<Point> im = Permutation(n).images();
        std::swap(im[c[t]], im[c[t + 1]]);
        l.gens.emplace_back(std::move(im));
      }
      lv.push_back(std::move(l));
    }
  }
  // Level gens must also include the generators of later cells.
  for (std::size_t i = lv.size(); i-- > 1;) {
    auto& prev = lv[i - 1].gens;
    for (const auto& g : lv[i].gens) {
      if (std::find(prev.begin(), prev.end(), g) == prev.end()) prev.push_back(g);
    }
  }
  return chain;
}

BigCard factorial(std::size_t m) {
  BigCard r = 1;
  for (std::size_t i = 2; i <= m; ++i) r *= i;
  return r;
}

}  // namespace gbt
