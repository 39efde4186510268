#pragma once

#include <vector>

#include "gbt/digraph.hpp"
#include "gbt/stab_chain.hpp"

namespace gbt {

struct CanonResult {
  Permutation canon_perm;  // g^canon_perm is the canonical form
  FpDigraph canon_form;
  std::vector<Permutation> aut_gens;
  StabChain aut;
  std::size_t leaves = 0;
};

constexpr std::size_t kCanonDegreeCap = 64;

/// Individualisation-refinement canoniser over fingerprint digraphs.
CanonResult canonical_form_fp(const FpDigraph& g, std::size_t cap = kCanonDegreeCap);
CanonResult canonical_form(const LabelledDigraph& g, std::size_t cap = kCanonDegreeCap);

}  // namespace gbt
