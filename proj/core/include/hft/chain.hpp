#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hft/geometry.hpp"
#include "hft/tangle.hpp"
#include "hft/zmod.hpp"

namespace hft {

// A finite set of homoclinic points (by id), graded by Maslov index, with the
// boundary matrices between consecutive degrees.
struct GradedChainComplex {
  Coeff mode = Coeff::Z;
  char orient = '+';
  // Degrees present, ascending; degrees[i] lists generator ids of that degree
  // in ascending id order (the column/row order of the matrices).
  std::vector<int> degrees;
  std::map<int, std::vector<std::string>> gens;  // degree -> ids
  // del[k]: matrix of the boundary from degree k to degree k-1
  // (rows = gens[k-1], cols = gens[k]); present for every k with k-1 and k
  // both in `degrees`.
  std::map<int, IMat> del;

  int k_min() const { return degrees.empty() ? 0 : degrees.front(); }
  int k_max() const { return degrees.empty() ? 0 : degrees.back(); }
  size_t dim(int k) const {
    auto it = gens.find(k);
    return it == gens.end() ? 0 : it->second.size();
  }
  // Boundary matrix degree k -> k-1, materializing zero blocks for absent
  // degrees (rows/cols 0 where a degree is missing).
  IMat boundary(int k) const;
  size_t index_of(int k, const std::string& id) const;
};

GradedChainComplex build_complex(const TangleDiagram& d,
                                 const std::vector<std::string>& E,
                                 char orient, Coeff mode);

struct DelCompleteness {
  bool complete = true;
  std::string witness_gen;                        // p with del(del p) != 0
  std::vector<std::string> witness_triple;        // (p, q, r) lacking partner
};

DelCompleteness is_del_complete(const TangleDiagram& d,
                                const GradedChainComplex& c);

struct PruneRecord {
  std::string deleted;
  int level = 0;  // degree of the deleted middle point
  int round = 0;  // fixpoint iteration within the level
  std::vector<std::string> witness;  // heart-forming triple (p, deleted, r)
};

struct PruneLog {
  std::vector<PruneRecord> records;
};

// Five-step pruning fixpoint, top level down. `seed` permutes the triple scan
// order (0 = deterministic id order).
std::pair<std::vector<std::string>, PruneLog> prune(
    const TangleDiagram& d, const std::vector<std::string>& E, char orient,
    unsigned long seed = 0);

struct LocalHomology {
  std::vector<std::string> pruned_set;
  PruneLog log;
  GradedChainComplex complex;            // on the pruned set
  std::map<int, FgAbelianGroup> groups;  // degree -> H_k
};

LocalHomology local_floer_homology(const TangleDiagram& d,
                                   const std::vector<std::string>& E,
                                   char orient, Coeff mode);

}  // namespace hft
