#include "gbt/constraint.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gbt {

namespace {

const std::pair<ConstraintType, const char*> kTypeNames[] = {
    {ConstraintType::Group, "group"},
    {ConstraintType::Coset, "coset"},
    {ConstraintType::SetStab, "set_stab"},
    {ConstraintType::SetTransport, "set_transport"},
    {ConstraintType::ListOfSetsStab, "list_of_sets_stab"},
    {ConstraintType::ListOfSetsTransport, "list_of_sets_transport"},
    {ConstraintType::SetOfSetsStab, "set_of_sets_stab"},
    {ConstraintType::SetOfSetsTransport, "set_of_sets_transport"},
    {ConstraintType::Centralizer, "centralizer"},
    {ConstraintType::Conjugacy, "conjugacy"},
    {ConstraintType::DigraphAuto, "digraph_auto"},
    {ConstraintType::DigraphIso, "digraph_iso"},
};

std::vector<Point> normalise_set(std::vector<Point> s, std::size_t n) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (!s.empty() && s.back() >= n) throw Error("set point out of range");
  return s;
}

std::vector<std::vector<Point>> normalise_sets(std::vector<std::vector<Point>> sets, std::size_t n) {
  for (auto& s : sets) s = normalise_set(std::move(s), n);
  return sets;
}

std::set<std::vector<Point>> set_of_sets(const std::vector<std::vector<Point>>& sets) {
  return {sets.begin(), sets.end()};
}

DigraphStack single(std::size_t n, const DigraphPtr& g) {
  DigraphStack s(n);
  s.push_back(g);
  return s;
}

// Each concrete constant refiner differs only in its membership test.
class SetConstraint : public ConstantConstraint {
 public:
  SetConstraint(std::size_t n, std::vector<Point> from, std::vector<Point> to, bool stab)
      : ConstantConstraint(n, list_of_sets_digraph(n, {from}), list_of_sets_digraph(n, {to})),
        from_(std::move(from)),
        to_(std::move(to)),
        stab_(stab) {}
  std::string name() const override { return stab_ ? "set_stab" : "set_transport"; }
  bool contains(const Permutation& g) const override { return act_set(g, from_) == to_; }

 private:
  std::vector<Point> from_, to_;
  bool stab_;
};

class ListOfSetsConstraint : public ConstantConstraint {
 public:
  ListOfSetsConstraint(std::size_t n, std::vector<std::vector<Point>> from,
                       std::vector<std::vector<Point>> to, bool stab)
      : ConstantConstraint(n, list_of_sets_digraph(n, from), list_of_sets_digraph(n, to)),
        from_(std::move(from)),
        to_(std::move(to)),
        stab_(stab) {}
  std::string name() const override { return stab_ ? "list_of_sets_stab" : "list_of_sets_transport"; }
  bool contains(const Permutation& g) const override {
    if (from_.size() != to_.size()) return false;
    for (std::size_t i = 0; i < from_.size(); ++i) {
      if (act_set(g, from_[i]) != to_[i]) return false;
    }
    return true;
  }

 private:
  std::vector<std::vector<Point>> from_, to_;
  bool stab_;
};

class SetOfSetsConstraint : public ConstantConstraint {
 public:
  SetOfSetsConstraint(std::size_t n, std::vector<std::vector<Point>> from,
                      std::vector<std::vector<Point>> to, bool stab)
      : ConstantConstraint(n, set_of_sets_digraph(n, from), set_of_sets_digraph(n, to)),
        from_(set_of_sets(from)),
        to_(set_of_sets(to)),
        stab_(stab) {}
  std::string name() const override { return stab_ ? "set_of_sets_stab" : "set_of_sets_transport"; }
  bool contains(const Permutation& g) const override {
    if (from_.size() != to_.size()) return false;
    for (const auto& s : from_) {
      if (!to_.count(act_set(g, s))) return false;
    }
    return true;
  }

 private:
  std::set<std::vector<Point>> from_, to_;
  bool stab_;
};

class ConjugacyConstraint : public ConstantConstraint {
 public:
  ConjugacyConstraint(Permutation from, Permutation to, bool centralizer)
      : ConstantConstraint(from.degree(), permutation_digraph(from), permutation_digraph(to)),
        from_(std::move(from)),
        to_(std::move(to)),
        centralizer_(centralizer) {}
  std::string name() const override { return centralizer_ ? "centralizer" : "conjugacy"; }
  bool contains(const Permutation& g) const override { return from_.conjugate_by(g) == to_; }

 private:
  Permutation from_, to_;
  bool centralizer_;
};

class DigraphConstraint : public ConstantConstraint {
 public:
  DigraphConstraint(LabelledDigraph from, LabelledDigraph to, bool autos)
      : ConstantConstraint(from.degree(), from, to), autos_(autos) {}
  std::string name() const override { return autos_ ? "digraph_auto" : "digraph_iso"; }
  bool contains(const Permutation& g) const override {
    return digraph_apply(left(), g) == right();
  }

 private:
  bool autos_;
};

struct GroupLevel {
  std::vector<Point> fixed;
  StabChain chain;  // base begins with `fixed`
  DigraphStack v;
};

struct GroupState : RefinerState {
  std::map<std::size_t, GroupLevel> levels;
};

}  // namespace

const char* to_string(ConstraintType t) {
  for (const auto& [k, name] : kTypeNames) {
    if (k == t) return name;
  }
  return "?";
}

ConstraintType constraint_type_from_string(const std::string& s) {
  for (const auto& [k, name] : kTypeNames) {
    if (s == name) return k;
  }
  throw Error("unknown constraint type '" + s + "'");
}

ConstraintSpec ConstraintSpec::group(std::size_t n, std::vector<Permutation> gens) {
  ConstraintSpec c;
  c.type = ConstraintType::Group;
  c.degree = n;
  c.gens = std::move(gens);
  return c;
}

ConstraintSpec ConstraintSpec::coset(std::size_t n, std::vector<Permutation> gens, Permutation rep) {
  ConstraintSpec c = group(n, std::move(gens));
  c.type = ConstraintType::Coset;
  c.perm = std::move(rep);
  return c;
}

ConstraintSpec ConstraintSpec::set_stab(std::size_t n, std::vector<Point> set) {
  ConstraintSpec c;
  c.type = ConstraintType::SetStab;
  c.degree = n;
  c.sets = {normalise_set(std::move(set), n)};
  return c;
}

ConstraintSpec ConstraintSpec::set_transport(std::size_t n, std::vector<Point> from,
                                             std::vector<Point> to) {
  ConstraintSpec c = set_stab(n, std::move(from));
  c.type = ConstraintType::SetTransport;
  c.sets2 = {normalise_set(std::move(to), n)};
  return c;
}

ConstraintSpec ConstraintSpec::list_of_sets_stab(std::size_t n,
                                                 std::vector<std::vector<Point>> sets) {
  ConstraintSpec c;
  c.type = ConstraintType::ListOfSetsStab;
  c.degree = n;
  c.sets = normalise_sets(std::move(sets), n);
  return c;
}

ConstraintSpec ConstraintSpec::list_of_sets_transport(std::size_t n,
                                                      std::vector<std::vector<Point>> from,
                                                      std::vector<std::vector<Point>> to) {
  ConstraintSpec c = list_of_sets_stab(n, std::move(from));
  c.type = ConstraintType::ListOfSetsTransport;
  c.sets2 = normalise_sets(std::move(to), n);
  return c;
}

ConstraintSpec ConstraintSpec::set_of_sets_stab(std::size_t n,
                                                std::vector<std::vector<Point>> sets) {
  ConstraintSpec c = list_of_sets_stab(n, std::move(sets));
  c.type = ConstraintType::SetOfSetsStab;
  return c;
}

ConstraintSpec ConstraintSpec::set_of_sets_transport(std::size_t n,
                                                     std::vector<std::vector<Point>> from,
                                                     std::vector<std::vector<Point>> to) {
  ConstraintSpec c = list_of_sets_transport(n, std::move(from), std::move(to));
  c.type = ConstraintType::SetOfSetsTransport;
  return c;
}

ConstraintSpec ConstraintSpec::centralizer(Permutation g) {
  ConstraintSpec c;
  c.type = ConstraintType::Centralizer;
  c.degree = g.degree();
  c.perm = std::move(g);
  return c;
}

ConstraintSpec ConstraintSpec::conjugacy(Permutation from, Permutation to) {
  if (from.degree() != to.degree()) throw Error("conjugacy degrees differ");
  ConstraintSpec c = centralizer(std::move(from));
  c.type = ConstraintType::Conjugacy;
  c.perm2 = std::move(to);
  return c;
}

ConstraintSpec ConstraintSpec::digraph_auto(LabelledDigraph g) {
  ConstraintSpec c;
  c.type = ConstraintType::DigraphAuto;
  c.degree = g.degree();
  c.digraph = std::move(g);
  return c;
}

ConstraintSpec ConstraintSpec::digraph_iso(LabelledDigraph from, LabelledDigraph to) {
  if (from.degree() != to.degree()) throw Error("digraph degrees differ");
  ConstraintSpec c = digraph_auto(std::move(from));
  c.type = ConstraintType::DigraphIso;
  c.digraph2 = std::move(to);
  return c;
}

ConstantConstraint::ConstantConstraint(std::size_t degree, LabelledDigraph left,
                                       LabelledDigraph right)
    : Constraint(degree),
      left_(std::make_shared<const LabelledDigraph>(std::move(left))),
      right_(std::make_shared<const LabelledDigraph>(std::move(right))) {
  if (left_->degree() != degree || right_->degree() != degree) {
    throw Error("refiner digraph degree mismatch");
  }
}

DigraphStack ConstantConstraint::refine_left(RefinerState*, const DigraphStack&,
                                             const RefinerContext&) const {
  return single(degree(), left_);
}

DigraphStack ConstantConstraint::refine_right(RefinerState*, const DigraphStack&,
                                              const RefinerContext&) const {
  return single(degree(), right_);
}

GroupConstraint::GroupConstraint(std::size_t degree, std::vector<Permutation> gens,
                                 std::optional<Permutation> rep)
    : Constraint(degree), gens_(std::move(gens)), chain_(build_chain(gens_, degree)),
      rep_(std::move(rep)) {
  if (rep_ && rep_->degree() != degree) throw Error("coset representative degree mismatch");
}

bool GroupConstraint::contains(const Permutation& g) const {
  if (g.degree() != degree()) return false;
  return chain_.contains(rep_ ? g * rep_->inverse() : g);
}

std::unique_ptr<RefinerState> GroupConstraint::make_state() const {
  return std::make_unique<GroupState>();
}

DigraphStack GroupConstraint::apply_f(RefinerState* state, std::size_t length,
                                      const std::vector<Point>& fixed,
                                      const RefinerContext& ctx) const {
  auto& levels = static_cast<GroupState*>(state)->levels;
  const std::size_t n = degree();
  auto it = levels.find(length);
  if (it == levels.end()) {
    GroupLevel lv;
    lv.fixed = fixed;
    lv.chain = build_chain(chain_.strong_generators(), n, fixed, chain_.order());
    std::vector<Permutation> stab;
    if (lv.chain.levels().size() > fixed.size()) stab = lv.chain.levels()[fixed.size()].gens;
    lv.v = group_level_stack(stab, n, ctx.orbital_cap);
    it = levels.emplace(length, std::move(lv)).first;
  }
  const GroupLevel& lv = it->second;
  if (fixed == lv.fixed) return lv.v;
  if (fixed.size() != lv.fixed.size()) return DigraphStack(n);
  auto a = tuple_transporter_prefixed(lv.chain, lv.fixed, fixed);
  if (!a) return DigraphStack(n);
  return stack_apply(lv.v, *a);
}

LabelledDigraph filter_through(const DigraphStack& v, const DigraphStack& s, ApproxCache& approx) {
  const std::size_t n = v.degree();
  FpDigraph g = squash_fp(v);
  std::vector<std::int64_t> start(n);
  auto summary = approx.summary(s);
  std::vector<Fp> cell_of(n, 0);
  for (std::size_t i = 0; i < summary->cells.size(); ++i) {
    for (Point p : summary->cells[i]) cell_of[p] = i + 1;
  }
  for (Point p = 0; p < n; ++p) {
    const Fp parts[] = {g.vlabels[p], fp_int(static_cast<std::int64_t>(cell_of[p]))};
    start[p] = static_cast<std::int64_t>(fp_tuple(parts));
  }
  FpLabelling lab = equitable_fp(g, std::move(start));
  std::vector<LabelTerm> labels;
  labels.reserve(n);
  for (Point p = 0; p < n; ++p) labels.push_back(LabelTerm::integer(lab.vlabel[p]));
  return LabelledDigraph(std::move(labels), {});
}

namespace {

DigraphStack filtered(DigraphStack ext, const DigraphStack& s, const RefinerContext& ctx) {
  if (!ctx.filter_orbitals || ext.size() == 0) return ext;
  DigraphStack out(ext.degree());
  out.push_back(filter_through(ext, s, *ctx.approx));
  return out;
}

}  // namespace

DigraphStack GroupConstraint::refine_left(RefinerState* state, const DigraphStack& s,
                                          const RefinerContext& ctx) const {
  return filtered(apply_f(state, s.size(), ctx.approx->fixed_points(s), ctx), s, ctx);
}

DigraphStack GroupConstraint::refine_right(RefinerState* state, const DigraphStack& t,
                                           const RefinerContext& ctx) const {
  auto fixed = ctx.approx->fixed_points(t);
  if (!rep_) return filtered(apply_f(state, t.size(), fixed, ctx), t, ctx);
  // f_R(T) = f(T^(x^-1))^x, using Fixed(T^(x^-1)) = Fixed(T)^(x^-1).
  auto pulled = act_tuple(rep_->inverse(), fixed);
  return filtered(stack_apply(apply_f(state, t.size(), pulled, ctx), *rep_), t, ctx);
}

ConstraintPtr make_constraint(const ConstraintSpec& c) {
  const std::size_t n = c.degree;
  auto first = [](const std::vector<std::vector<Point>>& s) {
    if (s.size() != 1) throw Error("set constraint needs exactly one set");
    return s[0];
  };
  switch (c.type) {
    case ConstraintType::Group:
      return std::make_shared<GroupConstraint>(n, c.gens);
    case ConstraintType::Coset:
      return std::make_shared<GroupConstraint>(n, c.gens, c.perm);
    case ConstraintType::SetStab:
      return std::make_shared<SetConstraint>(n, first(c.sets), first(c.sets), true);
    case ConstraintType::SetTransport:
      return std::make_shared<SetConstraint>(n, first(c.sets), first(c.sets2), false);
    case ConstraintType::ListOfSetsStab:
      return std::make_shared<ListOfSetsConstraint>(n, c.sets, c.sets, true);
    case ConstraintType::ListOfSetsTransport:
      return std::make_shared<ListOfSetsConstraint>(n, c.sets, c.sets2, false);
    case ConstraintType::SetOfSetsStab:
      return std::make_shared<SetOfSetsConstraint>(n, c.sets, c.sets, true);
    case ConstraintType::SetOfSetsTransport:
      return std::make_shared<SetOfSetsConstraint>(n, c.sets, c.sets2, false);
    case ConstraintType::Centralizer:
      return std::make_shared<ConjugacyConstraint>(c.perm, c.perm, true);
    case ConstraintType::Conjugacy:
      return std::make_shared<ConjugacyConstraint>(c.perm, c.perm2, false);
    case ConstraintType::DigraphAuto:
      if (!c.digraph) throw Error("digraph_auto needs a digraph");
      return std::make_shared<DigraphConstraint>(*c.digraph, *c.digraph, true);
    case ConstraintType::DigraphIso:
      if (!c.digraph || !c.digraph2) throw Error("digraph_iso needs two digraphs");
      return std::make_shared<DigraphConstraint>(*c.digraph, *c.digraph2, false);
  }
  throw Error("unknown constraint type");
}

ConstraintList make_constraints(const std::vector<ConstraintSpec>& specs) {
  ConstraintList out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back(make_constraint(s));
  return out;
}

LabelledDigraph list_of_sets_digraph(std::size_t n, const std::vector<std::vector<Point>>& sets) {
  std::vector<std::vector<LabelTerm>> idx(n);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (Point p : sets[i]) {
      if (p >= n) throw Error("set point out of range");
      idx[p].push_back(LabelTerm::integer(static_cast<std::int64_t>(i + 1)));
    }
  }
  std::vector<LabelTerm> vl;
  vl.reserve(n);
  for (auto& l : idx) {
    l.erase(std::unique(l.begin(), l.end()), l.end());
    vl.push_back(LabelTerm::tuple(std::move(l)));
  }
  return LabelledDigraph(std::move(vl), {});
}

LabelledDigraph set_of_sets_digraph(std::size_t n, const std::vector<std::vector<Point>>& sets) {
  std::set<std::vector<Point>> uniq;
  for (const auto& s : sets) uniq.insert(normalise_set(s, n));
  const auto k = static_cast<std::int64_t>(uniq.size());
  std::size_t width = 0;
  for (const auto& s : uniq) width = std::max(width, s.size());

  // counts[v][i]: sets of size i+1 containing v; pair counts likewise.
  std::vector<std::vector<std::int64_t>> vcount(n, std::vector<std::int64_t>(width, 0));
  std::map<std::pair<Point, Point>, std::vector<std::int64_t>> acount;
  for (const auto& s : uniq) {
    if (s.empty()) continue;
    const std::size_t i = s.size() - 1;
    for (Point a : s) {
      ++vcount[a][i];
      for (Point b : s) {
        if (a == b) continue;
        auto& c = acount[{a, b}];
        if (c.empty()) c.assign(width, 0);
        ++c[i];
      }
    }
  }
  auto label = [k](const std::vector<std::int64_t>& counts) {
    std::vector<LabelTerm> items;
    items.reserve(counts.size());
    for (auto c : counts) {
      items.push_back(LabelTerm::tuple({LabelTerm::integer(c), LabelTerm::integer(k)}));
    }
    return LabelTerm::tuple(std::move(items));
  };
  std::vector<LabelTerm> vl;
  vl.reserve(n);
  for (const auto& c : vcount) vl.push_back(label(c));
  std::vector<Arc> arcs;
  arcs.reserve(acount.size());
  for (const auto& [ab, c] : acount) arcs.push_back({ab.first, ab.second, label(c)});
  return LabelledDigraph(std::move(vl), std::move(arcs));
}

LabelledDigraph permutation_digraph(const Permutation& g) {
  const LabelTerm zero = LabelTerm::integer(0);
  std::vector<Arc> arcs;
  arcs.reserve(g.degree());
  for (Point a = 0; a < g.degree(); ++a) arcs.push_back({a, g[a], zero});
  return LabelledDigraph(std::vector<LabelTerm>(g.degree(), zero), std::move(arcs));
}

DigraphStack group_level_stack(const std::vector<Permutation>& gens, std::size_t n,
                               std::size_t orbital_cap) {
  auto orbs = orbits(gens, n);
  DigraphStack v(n);
  v.push_back(list_of_sets_digraph(n, orbs));
  std::vector<const std::vector<Point>*> big;
  for (const auto& o : orbs) {
    if (o.size() >= 2) big.push_back(&o);
  }
  std::stable_sort(big.begin(), big.end(),
                   [](const auto* a, const auto* b) { return a->size() < b->size(); });
  // Base pairs (min O, min P) for each orbit P of the stabiliser of min O inside O.
  std::size_t added = 0;
  for (const auto* o : big) {
    const Point a = (*o)[0];
    const Point first[] = {a};
    StabChain ch = build_chain(gens, n, first);
    std::vector<Permutation> stab;
    if (ch.levels().size() > 1 && ch.levels()[0].base == a) stab = ch.levels()[1].gens;
    for (const auto& p : orbits(stab, n)) {
      if (added == orbital_cap) return v;
      if (p[0] == a || !std::binary_search(o->begin(), o->end(), p[0])) continue;
      v.push_back(orbital_graph(gens, n, a, p[0]));
      ++added;
    }
  }
  return v;
}

DigraphStack random_stack(std::size_t n, std::size_t max_len, SplitMix64& rng) {
  DigraphStack s(n);
  const std::size_t len = rng.below(max_len + 1);
  for (std::size_t e = 0; e < len; ++e) {
    switch (rng.below(3)) {
      case 0:
        s.push_back(point_digraph(n, static_cast<Point>(rng.below(n))));
        break;
      case 1: {
        std::vector<std::vector<Point>> sets(1 + rng.below(2));
        for (auto& st : sets) st = random_subset(n, rng.below(n + 1), rng);
        s.push_back(list_of_sets_digraph(n, sets));
        break;
      }
      default: {
        std::vector<LabelTerm> vl;
        for (std::size_t v = 0; v < n; ++v) vl.push_back(LabelTerm::integer(rng.below(2)));
        std::vector<Arc> arcs;
        const std::uint64_t density = 2 + rng.below(4);
        for (Point a = 0; a < n; ++a) {
          for (Point b = 0; b < n; ++b) {
            if (rng.below(density) == 0) {
              arcs.push_back({a, b, LabelTerm::integer(static_cast<std::int64_t>(rng.below(2)))});
            }
          }
        }
        s.push_back(LabelledDigraph(std::move(vl), std::move(arcs)));
      }
    }
  }
  return s;
}

RefinerLawReport verify_refiner_law(const Constraint& c, std::size_t trials, std::uint64_t seed,
                                    ApproxKind kind, std::size_t orbital_cap,
                                    bool filter_orbitals) {
  const std::size_t n = c.degree();
  if (n > 8) throw Error("refiner law check limited to degree 8");
  std::vector<Permutation> members;
  {
    std::vector<Point> im(n);
    for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>(i);
    do {
      Permutation g(im);
      if (c.contains(g)) members.push_back(std::move(g));
    } while (std::next_permutation(im.begin(), im.end()));
  }
  RefinerLawReport rep;
  if (members.empty()) return rep;
  const bool has_id = c.contains(Permutation(n));
  SplitMix64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    DigraphStack s = random_stack(n, 3, rng);
    const Permutation& g = members[rng.below(members.size())];
    ApproxCache cache(kind);
    RefinerContext ctx{&cache, orbital_cap, filter_orbitals};

    auto state = c.make_state();
    DigraphStack left = c.refine_left(state.get(), s, ctx);
    DigraphStack right = c.refine_right(state.get(), stack_apply(s, g), ctx);
    ++rep.checks;
    if (!(stack_apply(left, g) == right)) {
      if (rep.violations++ == 0) {
        rep.counterexample = "trial " + std::to_string(t) + ": stack length " +
                             std::to_string(s.size()) + ", g = " + format_cycles(g);
      }
    }
    if (has_id) {
      rep.identity_checked = true;
      auto fresh = c.make_state();
      DigraphStack l2 = c.refine_left(fresh.get(), s, ctx);
      DigraphStack r2 = c.refine_right(fresh.get(), s, ctx);
      ++rep.checks;
      if (!(l2 == r2)) {
        if (rep.violations++ == 0) {
          rep.counterexample = "trial " + std::to_string(t) + ": f_L(S) != f_R(S)";
        }
      }
    }
  }
  return rep;
}

}  // namespace gbt
