#include "gbt/json_io.hpp"

namespace gbt {

namespace {

Point point_from_json(const Json& j, std::size_t degree) {
  if (!j.is_number_integer()) throw Error("point must be an integer");
  auto v = j.get<std::int64_t>();
  if (v < 1 || static_cast<std::size_t>(v) > degree) {
    throw Error("point " + std::to_string(v) + " out of range 1.." + std::to_string(degree));
  }
  return static_cast<Point>(v - 1);
}

std::vector<Point> set_from_json(const Json& j, std::size_t degree) {
  if (!j.is_array()) throw Error("set must be an array");
  std::vector<Point> out;
  for (const auto& e : j) out.push_back(point_from_json(e, degree));
  return out;
}

std::vector<std::vector<Point>> sets_from_json(const Json& j, std::size_t degree) {
  if (!j.is_array()) throw Error("list of sets must be an array");
  std::vector<std::vector<Point>> out;
  for (const auto& s : j) out.push_back(set_from_json(s, degree));
  return out;
}

Json set_to_json(const std::vector<Point>& s) {
  Json a = Json::array();
  for (Point p : s) a.push_back(p + 1);
  return a;
}

Json sets_to_json(const std::vector<std::vector<Point>>& sets) {
  Json a = Json::array();
  for (const auto& s : sets) a.push_back(set_to_json(s));
  return a;
}

std::vector<Permutation> gens_from_json(const Json& j, std::size_t degree) {
  if (!j.is_array()) throw Error("gens must be an array");
  std::vector<Permutation> out;
  for (const auto& g : j) out.push_back(perm_from_json(g, degree));
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Permutation perm_from_json(const Json& j, std::size_t degree) {
  if (j.is_string()) return parse_cycles(j.get<std::string>(), degree);
  if (j.is_array()) {
    std::vector<std::int64_t> im;
    for (const auto& e : j) {
      if (!e.is_number_integer()) throw Error("image list must hold integers");
      im.push_back(e.get<std::int64_t>());
    }
    if (im.size() != degree) throw Error("image list length differs from degree");
    return Permutation::from_images_1based(im);
  }
  throw Error("permutation must be a cycle string or an image array");
}

Json perm_to_json(const Permutation& p) { return format_cycles(p); }

LabelTerm label_from_json(const Json& j) {
  if (j.is_number_integer()) return LabelTerm::integer(j.get<std::int64_t>());
  if (j.is_string()) return LabelTerm::string(j.get<std::string>());
  if (j.is_array()) {
    std::vector<LabelTerm> items;
    for (const auto& e : j) items.push_back(label_from_json(e));
    return LabelTerm::tuple(std::move(items));
  }
  if (j.is_object()) {
    if (j.contains("gap")) return LabelTerm::gap();
    if (j.contains("multiset")) {
      std::vector<std::pair<LabelTerm, std::uint64_t>> entries;
      for (const auto& e : j.at("multiset")) {
        if (!e.is_array() || e.size() != 2) throw Error("multiset entries are [term, count]");
        entries.emplace_back(label_from_json(e[0]), e[1].get<std::uint64_t>());
      }
      return LabelTerm::multiset(std::move(entries));
    }
  }
  throw Error("unrecognised label term");
}

Json label_to_json(const LabelTerm& t) {
  switch (t.kind()) {
    case LabelTerm::Kind::Base:
      if (t.is_int()) return t.as_int();
      return t.as_string();
    case LabelTerm::Kind::Gap:
      return Json{{"gap", true}};
    case LabelTerm::Kind::Tuple: {
      Json a = Json::array();
      for (const auto& e : t.items()) a.push_back(label_to_json(e));
      return a;
    }
    case LabelTerm::Kind::Multiset: {
      Json a = Json::array();
      for (std::size_t i = 0; i < t.items().size(); ++i) {
        a.push_back(Json::array({label_to_json(t.items()[i]), t.counts()[i]}));
      }
      return Json{{"multiset", a}};
    }
  }
  return nullptr;
}

LabelledDigraph digraph_from_json(const Json& j) {
  const std::size_t n = field(j, "n").get<std::size_t>();
  std::vector<LabelTerm> vl(n, LabelTerm::integer(0));
  if (j.contains("vlabels")) {
    const auto& a = j.at("vlabels");
    if (!a.is_array() || a.size() != n) throw Error("vlabels must list n labels");
    for (std::size_t v = 0; v < n; ++v) vl[v] = label_from_json(a[v]);
  }
  std::vector<Arc> arcs;
  if (j.contains("arcs")) {
    for (const auto& a : j.at("arcs")) {
      if (!a.is_array() || a.size() < 2 || a.size() > 3) throw Error("arc must be [a,b] or [a,b,label]");
      arcs.push_back({point_from_json(a[0], n), point_from_json(a[1], n),
                      a.size() == 3 ? label_from_json(a[2]) : LabelTerm::integer(0)});
    }
  }
  return LabelledDigraph(std::move(vl), std::move(arcs));
}

Json digraph_to_json(const LabelledDigraph& g) {
  Json vl = Json::array();
  for (const auto& l : g.vlabels()) vl.push_back(label_to_json(l));
  Json arcs = Json::array();
  for (const auto& a : g.arcs()) arcs.push_back(Json::array({a.from + 1, a.to + 1, label_to_json(a.label)}));
  return Json{{"n", g.degree()}, {"vlabels", vl}, {"arcs", arcs}};
}

ConstraintSpec constraint_from_json(const Json& j, std::size_t n) {
  const auto type = constraint_type_from_string(field(j, "type").get<std::string>());
  switch (type) {
    case ConstraintType::Group:
      return ConstraintSpec::group(n, gens_from_json(field(j, "gens"), n));
    case ConstraintType::Coset:
      return ConstraintSpec::coset(n, gens_from_json(field(j, "gens"), n),
                                   perm_from_json(field(j, "rep"), n));
    case ConstraintType::SetStab:
      return ConstraintSpec::set_stab(n, set_from_json(field(j, "set"), n));
    case ConstraintType::SetTransport:
      return ConstraintSpec::set_transport(n, set_from_json(field(j, "from"), n),
                                           set_from_json(field(j, "to"), n));
    case ConstraintType::ListOfSetsStab:
      return ConstraintSpec::list_of_sets_stab(n, sets_from_json(field(j, "sets"), n));
    case ConstraintType::ListOfSetsTransport:
      return ConstraintSpec::list_of_sets_transport(n, sets_from_json(field(j, "from"), n),
                                                    sets_from_json(field(j, "to"), n));
    case ConstraintType::SetOfSetsStab:
      return ConstraintSpec::set_of_sets_stab(n, sets_from_json(field(j, "sets"), n));
    case ConstraintType::SetOfSetsTransport:
      return ConstraintSpec::set_of_sets_transport(n, sets_from_json(field(j, "from"), n),
                                                   sets_from_json(field(j, "to"), n));
    case ConstraintType::Centralizer:
      return ConstraintSpec::centralizer(perm_from_json(field(j, "perm"), n));
    case ConstraintType::Conjugacy:
      return ConstraintSpec::conjugacy(perm_from_json(field(j, "from"), n),
                                       perm_from_json(field(j, "to"), n));
    case ConstraintType::DigraphAuto: {
      auto g = digraph_from_json(field(j, "digraph"));
      if (g.degree() != n) throw Error("digraph degree differs from problem degree");
      return ConstraintSpec::digraph_auto(std::move(g));
    }
    case ConstraintType::DigraphIso: {
      auto a = digraph_from_json(field(j, "from"));
      auto b = digraph_from_json(field(j, "to"));
      if (a.degree() != n || b.degree() != n) throw Error("digraph degree differs from problem degree");
      return ConstraintSpec::digraph_iso(std::move(a), std::move(b));
    }
  }
  throw Error("unknown constraint type");
}

Json constraint_to_json(const ConstraintSpec& c) {
  Json j{{"type", to_string(c.type)}};
  auto gens = [&] {
    Json a = Json::array();
    for (const auto& g : c.gens) a.push_back(perm_to_json(g));
    return a;
  };
  switch (c.type) {
    case ConstraintType::Group:
      j["gens"] = gens();
      break;
    case ConstraintType::Coset:
      j["gens"] = gens();
      j["rep"] = perm_to_json(c.perm);
      break;
    case ConstraintType::SetStab:
      j["set"] = set_to_json(c.sets[0]);
      break;
    case ConstraintType::SetTransport:
      j["from"] = set_to_json(c.sets[0]);
      j["to"] = set_to_json(c.sets2[0]);
      break;
    case ConstraintType::ListOfSetsStab:
    case ConstraintType::SetOfSetsStab:
      j["sets"] = sets_to_json(c.sets);
      break;
    case ConstraintType::ListOfSetsTransport:
    case ConstraintType::SetOfSetsTransport:
      j["from"] = sets_to_json(c.sets);
      j["to"] = sets_to_json(c.sets2);
      break;
    case ConstraintType::Centralizer:
      j["perm"] = perm_to_json(c.perm);
      break;
    case ConstraintType::Conjugacy:
      j["from"] = perm_to_json(c.perm);
      j["to"] = perm_to_json(c.perm2);
      break;
    case ConstraintType::DigraphAuto:
      j["digraph"] = digraph_to_json(*c.digraph);
      break;
    case ConstraintType::DigraphIso:
      j["from"] = digraph_to_json(*c.digraph);
      j["to"] = digraph_to_json(*c.digraph2);
      break;
  }
  return j;
}

Problem problem_from_json(const Json& j) {
  Problem p;
  p.degree = field(j, "degree").get<std::size_t>();
  for (const auto& c : field(j, "constraints")) p.constraints.push_back(constraint_from_json(c, p.degree));
  return p;
}

Json problem_to_json(const Problem& p) {
  Json cs = Json::array();
  for (const auto& c : p.constraints) cs.push_back(constraint_to_json(c));
  return Json{{"degree", p.degree}, {"constraints", cs}};
}

}  // namespace gbt
