#pragma once

#include <json.hpp>

#include "gbt/constraint.hpp"
#include "gbt/digraph.hpp"
#include "gbt/label.hpp"
#include "gbt/perm.hpp"

namespace gbt {

using Json = nlohmann::json;

// Points are 1-based in JSON.

/// A cycle string "(1,2)(3,4)" or an image array [2,1,4,3].
Permutation perm_from_json(const Json& j, std::size_t degree);
Json perm_to_json(const Permutation& p);  // cycle string

/// int | string -> Base, {"gap":true} -> Gap, array -> Tuple, {"multiset":[[t,c],...]}.
LabelTerm label_from_json(const Json& j);
Json label_to_json(const LabelTerm& t);

/// {"n":6,"vlabels":[...],"arcs":[[a,b,label],...]}; vlabels defaults to all 0.
LabelledDigraph digraph_from_json(const Json& j);
Json digraph_to_json(const LabelledDigraph& g);

ConstraintSpec constraint_from_json(const Json& j, std::size_t degree);
Json constraint_to_json(const ConstraintSpec& c);

struct Problem {
  std::size_t degree = 0;
  std::vector<ConstraintSpec> constraints;
};

/// {"degree":n,"constraints":[...]}.
Problem problem_from_json(const Json& j);
Json problem_to_json(const Problem& p);

}  // namespace gbt
