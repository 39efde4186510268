#include "gbt/equitable.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace gbt {

namespace {

std::size_t count_distinct(const std::vector<std::int64_t>& v) {
  std::unordered_set<std::int64_t> s(v.begin(), v.end());
  return s.size();
}

}  // namespace

FpLabelling equitable_fp(const FpDigraph& g) {
  std::vector<std::int64_t> start(g.n);
  for (std::size_t v = 0; v < g.n; ++v) start[v] = static_cast<std::int64_t>(g.vlabels[v]);
  return equitable_fp(g, std::move(start));
}

FpLabelling equitable_fp(const FpDigraph& g, std::vector<std::int64_t> lab) {
  const std::size_t n = g.n;
  std::vector<std::vector<std::pair<Point, Fp>>> out(n), in(n);
  for (const auto& a : g.arcs) {
    out[a.from].emplace_back(a.to, a.label);
    in[a.to].emplace_back(a.from, a.label);
  }
  FpLabelling res;
  std::size_t cells = count_distinct(lab);
  std::vector<std::int64_t> next(n);
  std::vector<std::pair<Fp, std::uint64_t>> ms;
  for (;;) {
    for (std::size_t v = 0; v < n; ++v) {
      Fp parts[3];
      parts[0] = fp_int(lab[v]);
      for (int dir = 0; dir < 2; ++dir) {
        const auto& adj = dir == 0 ? out[v] : in[v];
        ms.clear();
        for (const auto& [w, al] : adj) {
          Fp pair[2] = {fp_int(lab[w]), al};
          ms.emplace_back(fp_tuple(pair), 1);
        }
        parts[1 + dir] = fp_multiset(ms);
      }
      next[v] = static_cast<std::int64_t>(fp_tuple(parts));
    }
    ++res.rounds;
    lab.swap(next);
    std::size_t c = count_distinct(lab);
    if (c == cells) break;
    cells = c;
  }
  res.vlabel = std::move(lab);
  res.num_cells = cells;
  return res;
}

EquitableResult cells_of(const FpLabelling& lab) {
  std::map<std::int64_t, std::vector<Point>> m;
  for (std::size_t v = 0; v < lab.vlabel.size(); ++v) {
    m[lab.vlabel[v]].push_back(static_cast<Point>(v));
  }
  EquitableResult r;
  r.reserve(m.size());
  for (auto& [l, c] : m) r.push_back({LabelTerm::integer(l), std::move(c)});
  return r;
}

EquitableResult equitable(const LabelledDigraph& g) { return cells_of(equitable_fp(to_fp(g))); }

bool is_equitable(const FpDigraph& g, const std::vector<std::int64_t>& lab) {
  const std::size_t n = g.n;
  // counts[v] = multiset of (direction, neighbour label, arc label).
  std::vector<std::map<std::tuple<int, std::int64_t, Fp>, std::size_t>> counts(n);
  for (const auto& a : g.arcs) {
    ++counts[a.from][{0, lab[a.to], a.label}];
    ++counts[a.to][{1, lab[a.from], a.label}];
  }
  std::map<std::int64_t, std::size_t> rep;
  for (std::size_t v = 0; v < n; ++v) {
    auto [it, fresh] = rep.try_emplace(lab[v], v);
    if (!fresh && counts[it->second] != counts[v]) return false;
  }
  return true;
}

}  // namespace gbt
