#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "gbt/bench.hpp"
#include "gbt/json_io.hpp"
#include "gbt/search.hpp"

using namespace gbt;

namespace {

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return Json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

Json stack_to_json(const DigraphStack& s) {
  Json out = Json::array();
  for (const auto& d : s.entries()) out.push_back(digraph_to_json(*d));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backtrack search over stacks of labelled digraphs"};
  app.require_subcommand(1);

  std::string in_path, out_path, mode_name = "strong";
  bool single = false;
  std::optional<std::uint64_t> node_limit;

  auto* solve = app.add_subcommand("solve", "all elements (or one with --single) of an intersection");
  solve->add_option("--in", in_path, "problem JSON")->required();
  solve->add_option("--out", out_path, "result JSON (default stdout)");
  solve->add_option("--mode", mode_name, "leon | orbital | strong | full");
  solve->add_flag("--single", single, "stop at the first element");
  solve->add_option("--node-limit", node_limit);

  auto* bsgs = app.add_subcommand("bsgs", "base and strong generating set of a group intersection");
  bsgs->add_option("--in", in_path, "problem JSON")->required();
  bsgs->add_option("--out", out_path, "result JSON (default stdout)");
  bsgs->add_option("--mode", mode_name, "leon | orbital | strong | full");
  bsgs->add_option("--node-limit", node_limit);

  std::string suite_path, json_path;
  std::uint64_t seed = 1;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t bench_limit = 10000000;
  auto* bench = app.add_subcommand("bench", "run a benchmark suite in every configured mode");
  bench->add_option("--suite", suite_path, "suite JSON")->required();
  bench->add_option("--out", out_path, "CSV report (default stdout)");
  bench->add_option("--json", json_path, "also write the report as JSON");
  bench->add_option("--seed", seed);
  bench->add_option("--jobs", jobs);
  bench->add_option("--node-limit", bench_limit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*solve || *bsgs) {
      Problem p = problem_from_json(read_json(in_path));
      SearchConfig cfg = config_for(mode_from_string(mode_name));
      cfg.node_limit = node_limit;
      auto cs = make_constraints(p.constraints);
      Json out;
      int rc = 0;
      if (*solve) {
        Json elements = Json::array();
        std::uint64_t nodes = 0;
        if (single) {
          auto r = search_single(cs, p.degree, cfg);
          if (r.element) elements.push_back(perm_to_json(*r.element));
          nodes = r.stats.nodes;
        } else {
          auto r = search_all(cs, p.degree, cfg);
          for (const auto& g : r.elements) elements.push_back(perm_to_json(g));
          nodes = r.stats.nodes;
        }
        rc = elements.empty() ? 1 : 0;
        out = {{"elements", elements}, {"nodes", nodes}};
      } else {
        auto r = search_bsgs(cs, p.degree, cfg);
        Json gens = Json::array(), base = Json::array(), points = Json::array();
        for (const auto& g : r.bsgs.strong_gens) gens.push_back(perm_to_json(g));
        for (const auto& b : r.bsgs.base) base.push_back(stack_to_json(b));
        for (Point a : r.bsgs.base_points) points.push_back(a + 1);
        out = {{"gens", gens},
               {"order", r.bsgs.order.str()},
               {"base", base},
               {"base_points", points},
               {"nodes", r.stats.nodes}};
      }
      write_text(out_path, out.dump(2) + "\n");
      return rc;
    }
    auto suites = suites_from_json(read_json(suite_path));
    BenchReport rep = run_bench(suites, seed, jobs, bench_limit);
    write_text(out_path, rep.to_csv());
    if (!json_path.empty()) write_text(json_path, rep.to_json().dump(2) + "\n");
    if (rep.mode_disagreements || rep.oracle_failures) {
      std::cerr << "mode disagreements: " << rep.mode_disagreements
                << ", oracle failures: " << rep.oracle_failures << "\n";
      return 2;
    }
    return 0;
  } catch (const NodeLimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
