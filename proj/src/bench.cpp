#include "gbt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "gbt/oracle.hpp"

namespace gbt {

namespace {

Permutation from_images(std::vector<Point> im) { return Permutation(std::move(im)); }

std::vector<Permutation> symmetric_gens(std::size_t n) {
  std::vector<Permutation> out;
  if (n < 2) return out;
  std::vector<Point> t(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = static_cast<Point>(i);
    c[i] = static_cast<Point>((i + 1) % n);
  }
  std::swap(t[0], t[1]);
  out.push_back(from_images(t));
  if (n > 2) out.push_back(from_images(c));
  return out;
}

/// Embeds g (degree m) acting on points offset..offset+m-1 of degree n.
Permutation embed(const Permutation& g, std::size_t offset, std::size_t n) {
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>(i);
  for (std::size_t i = 0; i < g.degree(); ++i) im[offset + i] = static_cast<Point>(offset + g[i]);
  return from_images(std::move(im));
}

Permutation restrict_block(const Permutation& g, std::size_t offset, std::size_t m) {
  std::vector<Point> im(m);
  for (std::size_t i = 0; i < m; ++i) im[i] = static_cast<Point>(g[offset + i] - offset);
  return from_images(std::move(im));
}

std::string format_double(double v, int prec) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

Permutation agl18_mult() {
  // Multiplication by w in GF(8) = GF(2)[w]/(w^3 + w + 1); bit i is the coefficient of w^i.
  std::vector<Point> im(8);
  for (Point v = 0; v < 8; ++v) {
    Point b0 = v & 1, b1 = (v >> 1) & 1, b2 = (v >> 2) & 1;
    im[v] = static_cast<Point>(b2 | ((b0 ^ b2) << 1) | (b1 << 2));
  }
  return from_images(std::move(im));
}

}  // namespace

std::vector<Permutation> gen_grid_group(std::size_t n) {
  if (n < 2) throw Error("grid group needs n >= 2");
  std::vector<Permutation> out;
  for (const auto& g : symmetric_gens(n)) {
    std::vector<Point> rows(n * n), cols(n * n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        rows[r * n + c] = static_cast<Point>(g[r] * n + c);
        cols[r * n + c] = static_cast<Point>(r * n + g[c]);
      }
    }
    out.push_back(from_images(std::move(rows)));
    out.push_back(from_images(std::move(cols)));
  }
  return out;
}

std::vector<Permutation> gen_wreath(std::size_t m, std::size_t d) {
  if (m < 1 || d < 1) throw Error("wreath product needs m, d >= 1");
  const std::size_t n = m * d;
  std::vector<Permutation> out;
  for (const auto& g : symmetric_gens(m)) out.push_back(embed(g, 0, n));
  for (const auto& b : symmetric_gens(d)) {
    std::vector<Point> im(n);
    for (std::size_t blk = 0; blk < d; ++blk) {
      for (std::size_t i = 0; i < m; ++i) im[blk * m + i] = static_cast<Point>(b[blk] * m + i);
    }
    out.push_back(from_images(std::move(im)));
  }
  return out;
}

std::vector<CatalogGroup> transitive_catalog(std::size_t n) {
  if (n < 2) throw Error("catalog needs degree >= 2");
  auto cyc = [n](const char* text) { return parse_cycles(text, n); };
  std::vector<CatalogGroup> out;
  std::vector<Point> c(n), r(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = static_cast<Point>((i + 1) % n);
    r[i] = static_cast<Point>(n - 1 - i);
  }
  out.push_back({"C" + std::to_string(n), {from_images(c)}});
  if (n >= 4) out.push_back({"D" + std::to_string(2 * n), {from_images(c), from_images(r)}});
  if (n >= 4) {
    // A_n: (1 2 3) with an n-cycle (n odd) or an (n-1)-cycle on 2..n (n even).
    std::vector<Point> im(n);
    for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>(i);
    if (n % 2 == 1) {
      im = c;
    } else {
      for (std::size_t i = 1; i < n; ++i) im[i] = static_cast<Point>(i + 1 == n ? 1 : i + 1);
    }
    out.push_back({"A" + std::to_string(n), {cyc("(1,2,3)"), from_images(im)}});
  }
  if (n >= 3) out.push_back({"S" + std::to_string(n), symmetric_gens(n)});
  switch (n) {
    case 4:
      out.push_back({"V4", {cyc("(1,2)(3,4)"), cyc("(1,3)(2,4)")}});
      break;
    case 5:
      out.push_back({"F20", {cyc("(1,2,3,4,5)"), cyc("(2,3,5,4)")}});
      break;
    case 6:
      out.push_back({"PSL(2,5)", {cyc("(1,2,3,4,5)"), cyc("(1,6)(2,5)")}});
      out.push_back({"PGL(2,5)", {cyc("(1,2,3,4,5)"), cyc("(1,6)(2,5)"), cyc("(2,3,5,4)")}});
      break;
    case 7:
      out.push_back({"F21", {cyc("(1,2,3,4,5,6,7)"), cyc("(2,3,5)(4,7,6)")}});
      out.push_back({"F42", {cyc("(1,2,3,4,5,6,7)"), cyc("(2,4,3,7,5,6)")}});
      break;
    case 8:
      out.push_back({"AGL(1,8)", {cyc("(1,2)(3,4)(5,6)(7,8)"), agl18_mult()}});
      break;
    default:
      break;
  }
  return out;
}

Permutation random_element(const StabChain& chain, SplitMix64& rng) {
  std::vector<std::uint64_t> idx;
  for (const auto& lv : chain.levels()) idx.push_back(rng.below(lv.orbit.size()));
  return element_from_indices(chain, idx);
}

std::optional<Subdirect> gen_subdirect(std::size_t k, std::size_t n, SplitMix64& rng) {
  if (k < 2) throw Error("a proper (k,n)-subdirect product needs k >= 2");
  const auto catalog = transitive_catalog(n);
  const std::size_t degree = k * n;
  for (int attempt = 0; attempt < 50; ++attempt) {
    Subdirect sd;
    std::vector<BigCard> factor_orders;
    for (std::size_t b = 0; b < k; ++b) {
      const auto& f = catalog[rng.below(catalog.size())];
      Permutation conj = random_permutation(n, rng);
      std::vector<Permutation> fg;
      for (const auto& g : f.gens) fg.push_back(g.conjugate_by(conj));
      factor_orders.push_back(build_chain(fg, n).order());
      for (const auto& g : fg) sd.ambient_gens.push_back(embed(g, b * n, degree));
      sd.factors.push_back(f.name);
    }
    StabChain ambient = build_chain(sd.ambient_gens, degree);
    sd.ambient_order = ambient.order();
    bool proper = false;
    while (true) {
      sd.gens.push_back(random_element(ambient, rng));
      StabChain h = build_chain(sd.gens, degree);
      if (h.order() == sd.ambient_order) break;
      bool subdirect = true;
      for (std::size_t b = 0; b < k && subdirect; ++b) {
        std::vector<Permutation> proj;
        for (const auto& g : sd.gens) proj.push_back(restrict_block(g, b * n, n));
        subdirect = build_chain(proj, n).order() == factor_orders[b];
      }
      if (subdirect) {
        sd.order = h.order();
        proper = true;
        break;
      }
    }
    if (proper) return sd;
  }
  return std::nullopt;
}

const char* to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::GridSet:
      return "grid_set";
    case ProblemKind::GridRows:
      return "grid_rows";
    case ProblemKind::GridPartition:
      return "grid_partition";
    case ProblemKind::Subdirect:
      return "subdirect";
  }
  return "?";
}

ProblemKind problem_kind_from_string(const std::string& s) {
  for (auto k : {ProblemKind::GridSet, ProblemKind::GridRows, ProblemKind::GridPartition,
                 ProblemKind::Subdirect}) {
    if (s == to_string(k)) return k;
  }
  throw Error("unknown problem kind '" + s + "'");
}

std::uint64_t instance_seed(std::uint64_t seed, ProblemKind kind, std::size_t n, std::size_t k,
                            std::size_t index) {
  SplitMix64 r(seed);
  std::uint64_t h = r.next();
  for (std::uint64_t v : {static_cast<std::uint64_t>(kind), std::uint64_t(n), std::uint64_t(k),
                          std::uint64_t(index)}) {
    SplitMix64 step(h ^ v);
    h = step.next();
  }
  return h;
}

Instance make_instance(ProblemKind kind, std::size_t n, std::size_t k, std::size_t index,
                       std::uint64_t suite_seed) {
  Instance inst;
  inst.kind = kind;
  inst.n = n;
  inst.k = k;
  inst.index = index;
  inst.seed = instance_seed(suite_seed, kind, n, k, index);
  SplitMix64 rng(inst.seed);
  switch (kind) {
    case ProblemKind::GridSet:
    case ProblemKind::GridRows:
    case ProblemKind::GridPartition: {
      const std::size_t deg = n * n;
      inst.problem.degree = deg;
      inst.problem.constraints.push_back(ConstraintSpec::group(deg, gen_grid_group(n)));
      if (kind == ProblemKind::GridSet) {
        inst.problem.constraints.push_back(ConstraintSpec::set_stab(deg, random_subset(deg, deg / 2, rng)));
      } else if (kind == ProblemKind::GridRows) {
        std::vector<Point> set;
        for (std::size_t r = 0; r < n; ++r) {
          for (Point c : random_subset(n, n / 2, rng)) set.push_back(static_cast<Point>(r * n + c));
        }
        inst.problem.constraints.push_back(ConstraintSpec::set_stab(deg, set));
      } else {
        if (deg % 2 != 0) throw Error("partition problem needs an even number of points");
        const std::size_t m = deg / 2;
        auto c1 = random_subset(deg, m, rng);
        std::vector<Point> c2;
        for (Point p = 0; p < deg; ++p) {
          if (!std::binary_search(c1.begin(), c1.end(), p)) c2.push_back(p);
        }
        inst.problem.constraints.push_back(ConstraintSpec::set_of_sets_stab(deg, {c1, c2}));
        // Conjugate S_m wr S_2 so that its blocks become c1 and c2.
        std::vector<Point> im(deg);
        for (std::size_t i = 0; i < m; ++i) {
          im[i] = c1[i];
          im[m + i] = c2[i];
        }
        Permutation x(std::move(im));
        std::vector<Permutation> w;
        for (const auto& g : gen_wreath(m, 2)) w.push_back(g.conjugate_by(x));
        inst.problem.constraints.push_back(ConstraintSpec::group(deg, std::move(w)));
      }
      break;
    }
    case ProblemKind::Subdirect: {
      const std::size_t deg = k * n;
      inst.problem.degree = deg;
      inst.group_problem = false;
      for (int side = 0; side < 2; ++side) {
        auto sd = gen_subdirect(k, n, rng);
        if (!sd) {
          inst.generated = false;
          inst.problem.constraints.clear();
          return inst;
        }
        Permutation rep = random_element(build_chain(sd->ambient_gens, deg), rng);
        inst.problem.constraints.push_back(ConstraintSpec::coset(deg, sd->gens, rep));
      }
      break;
    }
  }
  return inst;
}

InstanceResult run_instance(const Instance& inst, Mode mode, std::uint64_t node_limit) {
  InstanceResult r;
  r.kind = inst.kind;
  r.n = inst.n;
  r.k = inst.k;
  r.index = inst.index;
  r.seed = inst.seed;
  r.mode = mode;
  if (!inst.generated) {
    r.skipped = true;
    r.answer = "retry-exhausted";
    return r;
  }
  SearchConfig cfg = config_for(mode);
  cfg.node_limit = node_limit;
  auto cs = make_constraints(inst.problem.constraints);
  const std::size_t deg = inst.problem.degree;
  try {
    if (inst.group_problem) {
      auto res = search_bsgs(cs, deg, cfg);
      r.nodes = res.stats.nodes;
      r.left_sequence_violations = res.stats.left_sequence_violations;
      r.answer = res.bsgs.order.str();
      if (deg <= 7) {
        r.oracle_checked = true;
        r.oracle_ok = brute_solve(inst.problem.constraints, deg).size() == res.bsgs.order;
      }
    } else {
      auto res = search_single(cs, deg, cfg);
      r.nodes = res.stats.nodes;
      r.left_sequence_violations = res.stats.left_sequence_violations;
      r.answer = res.element ? "nonempty" : "empty";
      if (deg <= 7) {
        r.oracle_checked = true;
        auto all = brute_solve(inst.problem.constraints, deg);
        r.oracle_ok = res.element ? std::binary_search(all.begin(), all.end(), *res.element)
                                  : all.empty();
      }
    }
  } catch (const NodeLimitExceeded& e) {
    r.aborted = true;
    r.nodes = e.stats().nodes;
    r.answer = "aborted";
  }
  return r;
}

BenchReport run_bench(const std::vector<SuiteSpec>& suites, std::uint64_t seed, std::size_t jobs,
                      std::uint64_t node_limit) {
  struct Task {
    std::size_t instance;
    Mode mode;
  };
  std::vector<Instance> instances;
  std::vector<Task> tasks;
  for (const auto& s : suites) {
    for (std::size_t n : s.ns) {
      for (std::size_t i = 0; i < s.instances; ++i) {
        instances.push_back(make_instance(s.kind, n, s.k, i, seed));
        for (Mode m : s.modes) tasks.push_back({instances.size() - 1, m});
      }
    }
  }
  BenchReport rep;
  rep.rows.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      rep.rows[t] = run_instance(instances[tasks[t].instance], tasks[t].mode, node_limit);
    }
  };
  jobs = std::max<std::size_t>(1, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Mode agreement per instance, oracle failures, per-group aggregates.
  std::map<std::size_t, std::string> answer_of;
  std::map<std::tuple<int, std::size_t, std::size_t, int>, std::vector<const InstanceResult*>> grouped;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto& r = rep.rows[t];
    if (!r.oracle_ok) ++rep.oracle_failures;
    if (!r.aborted && !r.skipped) {
      auto [it, fresh] = answer_of.emplace(tasks[t].instance, r.answer);
      if (!fresh && it->second != r.answer) ++rep.mode_disagreements;
    }
    grouped[{static_cast<int>(r.kind), r.n, r.k, static_cast<int>(r.mode)}].push_back(&r);
  }
  for (const auto& [key, rows] : grouped) {
    GroupSummary g;
    g.kind = rows.front()->kind;
    g.n = rows.front()->n;
    g.k = rows.front()->k;
    g.mode = rows.front()->mode;
    std::vector<std::uint64_t> nodes;
    std::size_t zero = 0;
    for (const auto* r : rows) {
      if (r->skipped) continue;
      if (r->aborted) ++g.aborted;
      nodes.push_back(r->nodes);
      g.total += r->nodes;
      zero += r->nodes == 0;
    }
    g.count = nodes.size();
    if (g.count > 0) {
      std::sort(nodes.begin(), nodes.end());
      g.mean = static_cast<double>(g.total) / static_cast<double>(g.count);
      g.median = g.count % 2 ? static_cast<double>(nodes[g.count / 2])
                             : (static_cast<double>(nodes[g.count / 2 - 1]) +
                                static_cast<double>(nodes[g.count / 2])) / 2.0;
      g.zero_pct = 100.0 * static_cast<double>(zero) / static_cast<double>(g.count);
    }
    rep.groups.push_back(g);
  }
  return rep;
}

const GroupSummary* BenchReport::find(ProblemKind kind, std::size_t n, std::size_t k,
                                      Mode mode) const {
  for (const auto& g : groups) {
    if (g.kind == kind && g.n == n && g.k == k && g.mode == mode) return &g;
  }
  return nullptr;
}

std::string BenchReport::to_csv() const {
  std::ostringstream os;
  os << "problem,n,k,instance,seed,mode,nodes,answer,aborted\n";
  for (const auto& r : rows) {
    os << to_string(r.kind) << ',' << r.n << ',' << r.k << ',' << r.index << ',' << r.seed << ','
       << to_string(r.mode) << ',' << r.nodes << ',' << r.answer << ',' << (r.aborted ? 1 : 0)
       << '\n';
  }
  os << "\nproblem,n,k,mode,count,total,mean,median,zero_pct,aborted\n";
  for (const auto& g : groups) {
    os << to_string(g.kind) << ',' << g.n << ',' << g.k << ',' << to_string(g.mode) << ','
       << g.count << ',' << g.total << ',' << format_double(g.mean, 3) << ','
       << format_double(g.median, 1) << ',' << format_double(g.zero_pct, 2) << ',' << g.aborted
       << '\n';
  }
  return os.str();
}

Json BenchReport::to_json() const {
  Json rows_j = Json::array();
  for (const auto& r : rows) {
    rows_j.push_back({{"problem", to_string(r.kind)},
                      {"n", r.n},
                      {"k", r.k},
                      {"instance", r.index},
                      {"seed", r.seed},
                      {"mode", to_string(r.mode)},
                      {"nodes", r.nodes},
                      {"answer", r.answer},
                      {"aborted", r.aborted}});
  }
  Json groups_j = Json::array();
  for (const auto& g : groups) {
    groups_j.push_back({{"problem", to_string(g.kind)},
                        {"n", g.n},
                        {"k", g.k},
                        {"mode", to_string(g.mode)},
                        {"count", g.count},
                        {"total", g.total},
                        {"mean", format_double(g.mean, 3)},
                        {"median", format_double(g.median, 1)},
                        {"zero_pct", format_double(g.zero_pct, 2)},
                        {"aborted", g.aborted}});
  }
  return Json{{"instances", rows_j},
              {"groups", groups_j},
              {"mode_disagreements", mode_disagreements},
              {"oracle_failures", oracle_failures}};
}

std::vector<SuiteSpec> suites_from_json(const Json& j) {
  std::vector<SuiteSpec> out;
  const Json& list = j.is_object() && j.contains("suites") ? j.at("suites") : j;
  if (!list.is_array()) throw Error("suite file must be an array or {\"suites\": [...]}");
  for (const auto& s : list) {
    SuiteSpec spec;
    spec.kind = problem_kind_from_string(s.at("problem").get<std::string>());
    if (s.at("n").is_array()) {
      spec.ns = s.at("n").get<std::vector<std::size_t>>();
    } else {
      spec.ns = {s.at("n").get<std::size_t>()};
    }
    spec.k = s.value("k", std::size_t{0});
    spec.instances = s.value("instances", std::size_t{50});
    if (s.contains("modes")) {
      spec.modes.clear();
      for (const auto& m : s.at("modes")) spec.modes.push_back(mode_from_string(m.get<std::string>()));
    }
    out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace gbt
