#pragma once

#include <map>
#include <string>
#include <vector>

#include "hft/chain.hpp"
#include "hft/zmod.hpp"

namespace hft {

// Finite family of generator sets ordered by inclusion.
struct InclusionPoset {
  std::vector<std::vector<std::string>> sets;      // each sorted ascending
  std::vector<std::pair<size_t, size_t>> leq;      // (i,j): sets[i] ⊆ sets[j], i != j
  std::vector<std::pair<size_t, size_t>> hasse;    // covering relations
  bool directed = true;
  long counter_a = -1, counter_b = -1;  // witness pair when not directed
};

InclusionPoset build_inclusion_poset(
    const std::vector<std::vector<std::string>>& family);

struct CompatibilityResult {
  bool ok = true;
  std::string witness_p, witness_q;  // n(p,q) != 0 across the forbidden gap
};

// Is the inclusion of D into E a chain map? Both sets must be
// boundary-complete. Evaluates the direct matrix identity and the
// vanishing criterion; a disagreement is an internal error.
CompatibilityResult check_chain_compatible(const TangleDiagram& d,
                                           const std::vector<std::string>& D,
                                           const std::vector<std::string>& E,
                                           char orient);

// Is the restriction (projection) from E' onto D' a chain map?
CompatibilityResult restriction_is_chain_map(const TangleDiagram& d,
                                             const std::vector<std::string>& Ep,
                                             const std::vector<std::string>& Dp,
                                             char orient);

// A direct system of finitely generated abelian groups over a finite poset.
// Node groups are in canonical form; an edge matrix sends canonical source
// generators to coordinate vectors of the target (torsion coords first).
struct GroupSystem {
  Coeff mode = Coeff::Z;
  std::vector<FgAbelianGroup> nodes;
  struct Edge {
    size_t src = 0, dst = 0;
    IMat matrix;
  };
  std::vector<Edge> edges;                       // one per strict ⪯ pair
  std::vector<std::pair<size_t, size_t>> hasse;  // subset of edge (src,dst)
  bool directed = false;

  const Edge* edge(size_t i, size_t j) const;  // nullptr if absent
};

// Verifies transition coherence on all composable edge pairs.
void verify_transitions(const GroupSystem& s);

struct LimitResult {
  FgAbelianGroup group;
  HomologyData data;            // of the assembled presentation
  std::vector<size_t> offset;   // generator offset of each node in ⊕
  size_t total_gens = 0;

  // Class of the element of node i with canonical coordinates v.
  std::vector<Int> inject(size_t node, const std::vector<Int>& v) const;
};

// Colimit presentation (⊕ nodes)/(node relations + edge relations). With
// `all_pairs` the edge relations range over every comparable pair instead of
// the Hasse diagram only.
LimitResult direct_limit(const GroupSystem& s, bool all_pairs = false);

// Directed-poset check: the class of an injected node element vanishes in the
// colimit iff some transition map kills the element. Errors if the system is
// not marked directed. Checks every canonical generator of every node.
void verify_limit_vanishing(const GroupSystem& s, const LimitResult& lim);

// Direct system of the homology groups of a family of generator sets,
// processed degree by degree.
struct HomologySystem {
  InclusionPoset poset;
  char orient = '+';
  Coeff mode = Coeff::Z;
  std::vector<int> degrees;  // union over nodes, ascending
  std::vector<GradedChainComplex> complexes;
  std::map<int, GroupSystem> systems;  // degree -> group system
};

// Requires every member boundary-complete and every inclusion pair chain
// compatible (aborts naming the offending pair otherwise). Functoriality of
// the induced maps is verified on all composable pairs.
HomologySystem build_homology_system(
    const TangleDiagram& d, const std::vector<std::vector<std::string>>& family,
    char orient, Coeff mode);

}  // namespace hft
