#include "hft/limits.hpp"

#include <algorithm>
#include <set>

namespace hft {

namespace {

bool subset_of(const std::vector<std::string>& a,
               const std::vector<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string set_str(const std::vector<std::string>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i];
  }
  return out + "}";
}

}  // namespace

InclusionPoset build_inclusion_poset(
    const std::vector<std::vector<std::string>>& family) {
  InclusionPoset p;
  for (auto s : family) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (const auto& t : p.sets)
      if (t == s) fail_input("duplicate set in family: " + set_str(s));
    p.sets.push_back(s);
  }
  size_t n = p.sets.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && subset_of(p.sets[i], p.sets[j])) p.leq.emplace_back(i, j);
  auto leq = [&](size_t i, size_t j) {
    return std::find(p.leq.begin(), p.leq.end(), std::make_pair(i, j)) !=
           p.leq.end();
  };
  for (auto [i, j] : p.leq) {
    bool covered = false;
    for (size_t k = 0; k < n && !covered; ++k)
      if (k != i && k != j && leq(i, k) && leq(k, j)) covered = true;
    if (!covered) p.hasse.emplace_back(i, j);
  }
  for (size_t i = 0; i < n && p.directed; ++i)
    for (size_t j = i + 1; j < n && p.directed; ++j) {
      bool ub = false;
      for (size_t k = 0; k < n && !ub; ++k)
        if ((k == i || leq(i, k)) && (k == j || leq(j, k))) ub = true;
      if (!ub) {
        p.directed = false;
        p.counter_a = (long)i;
        p.counter_b = (long)j;
      }
    }
  return p;
}

namespace {

void require_complete(const TangleDiagram& d, const GradedChainComplex& c,
                      const char* which) {
  auto chk = is_del_complete(d, c);
  if (!chk.complete)
    fail_input(std::string(which) +
               " set is not boundary-complete; witness " + chk.witness_gen);
}

// Inclusion chain matrix at degree k from the sub-complex into the big one.
IMat inclusion_matrix(const GradedChainComplex& sub,
                      const GradedChainComplex& big, int k) {
  IMat f(big.dim(k), sub.dim(k));
  if (sub.dim(k) == 0) return f;
  const auto& ids = sub.gens.at(k);
  for (size_t j = 0; j < ids.size(); ++j) f(big.index_of(k, ids[j]), j) = 1;
  return f;
}

std::vector<int> degree_union(const GradedChainComplex& a,
                              const GradedChainComplex& b) {
  std::set<int> ks(a.degrees.begin(), a.degrees.end());
  ks.insert(b.degrees.begin(), b.degrees.end());
  return {ks.begin(), ks.end()};
}

}  // namespace

CompatibilityResult check_chain_compatible(const TangleDiagram& d,
                                           const std::vector<std::string>& D,
                                           const std::vector<std::string>& E,
                                           char orient) {
  std::vector<std::string> Ds = D, Es = E;
  std::sort(Ds.begin(), Ds.end());
  std::sort(Es.begin(), Es.end());
  if (!subset_of(Ds, Es)) fail_input("first set is not contained in second");
  auto cD = build_complex(d, Ds, orient, Coeff::Z);
  auto cE = build_complex(d, Es, orient, Coeff::Z);
  require_complete(d, cD, "sub");
  require_complete(d, cE, "ambient");

  // direct route: inclusion commutes with the boundary matrices
  bool direct_ok = true;
  for (int k : degree_union(cD, cE)) {
    IMat lhs = cE.boundary(k) * inclusion_matrix(cD, cE, k);
    IMat rhs = inclusion_matrix(cD, cE, k - 1) * cD.boundary(k);
    if (!(lhs == rhs)) direct_ok = false;
  }

  // criterion route: no sign from a sub-set point into the complement
  CompatibilityResult res;
  std::set<std::string> inD(Ds.begin(), Ds.end());
  for (const auto& p : Ds) {
    int mp = maslov_abs(d, p);
    for (const auto& q : Es) {
      if (inD.count(q) || maslov_abs(d, q) != mp - 1) continue;
      if (sign_n(d, p, q, orient) != 0) {
        res.ok = false;
        res.witness_p = p;
        res.witness_q = q;
        break;
      }
    }
    if (!res.ok) break;
  }
  if (res.ok != direct_ok)
    fail_internal("chain-compatibility criterion disagrees with direct check");
  return res;
}

CompatibilityResult restriction_is_chain_map(const TangleDiagram& d,
                                             const std::vector<std::string>& Ep,
                                             const std::vector<std::string>& Dp,
                                             char orient) {
  std::vector<std::string> Ds = Dp, Es = Ep;
  std::sort(Ds.begin(), Ds.end());
  std::sort(Es.begin(), Es.end());
  if (!subset_of(Ds, Es)) fail_input("second set is not contained in first");
  auto cD = build_complex(d, Ds, orient, Coeff::Z);
  auto cE = build_complex(d, Es, orient, Coeff::Z);
  require_complete(d, cD, "restricted");
  require_complete(d, cE, "ambient");

  bool direct_ok = true;
  for (int k : degree_union(cD, cE)) {
    // restriction matrix = transpose of the inclusion matrix
    auto restr = [&](int kk) {
      IMat inc = inclusion_matrix(cD, cE, kk);
      IMat r(inc.cols, inc.rows);
      for (size_t i = 0; i < inc.rows; ++i)
        for (size_t j = 0; j < inc.cols; ++j) r(j, i) = inc(i, j);
      return r;
    };
    IMat lhs = restr(k - 1) * cE.boundary(k);
    IMat rhs = cD.boundary(k) * restr(k);
    if (!(lhs == rhs)) direct_ok = false;
  }

  CompatibilityResult res;
  std::set<std::string> inD(Ds.begin(), Ds.end());
  for (const auto& p : Es) {
    if (inD.count(p)) continue;
    int mp = maslov_abs(d, p);
    for (const auto& q : Ds) {
      if (maslov_abs(d, q) != mp - 1) continue;
      if (sign_n(d, p, q, orient) != 0) {
        res.ok = false;
        res.witness_p = p;
        res.witness_q = q;
        break;
      }
    }
    if (!res.ok) break;
  }
  if (res.ok != direct_ok)
    fail_internal("restriction criterion disagrees with direct check");
  return res;
}

const GroupSystem::Edge* GroupSystem::edge(size_t i, size_t j) const {
  for (const auto& e : edges)
    if (e.src == i && e.dst == j) return &e;
  return nullptr;
}

namespace {

size_t gens_of(const FgAbelianGroup& g) {
  return g.torsion.size() + g.free_rank;
}

std::vector<Int> orders_of(const FgAbelianGroup& g) {
  std::vector<Int> o(g.torsion.begin(), g.torsion.end());
  o.resize(gens_of(g), Int(0));
  return o;
}

void normalize_coords(std::vector<Int>& v, const FgAbelianGroup& g) {
  auto ords = orders_of(g);
  for (size_t i = 0; i < v.size(); ++i) {
    Int m = g.mode == Coeff::Z2 ? Int(2) : ords[i];
    if (m != 0) {
      v[i] %= m;
      if (v[i] < 0) v[i] += m;
    }
  }
}

IMat normalized_matrix(const IMat& m, const FgAbelianGroup& target) {
  IMat out = m;
  for (size_t j = 0; j < m.cols; ++j) {
    std::vector<Int> col(m.rows);
    for (size_t i = 0; i < m.rows; ++i) col[i] = m(i, j);
    normalize_coords(col, target);
    for (size_t i = 0; i < m.rows; ++i) out(i, j) = col[i];
  }
  return out;
}

}  // namespace

void verify_transitions(const GroupSystem& s) {
  for (const auto& e1 : s.edges)
    for (const auto& e2 : s.edges) {
      if (e1.dst != e2.src) continue;
      const auto* direct = s.edge(e1.src, e2.dst);
      if (!direct) fail_internal("missing composite edge in system");
      IMat comp = normalized_matrix(e2.matrix * e1.matrix, s.nodes[e2.dst]);
      IMat want = normalized_matrix(direct->matrix, s.nodes[e2.dst]);
      if (!(comp == want))
        fail_internal("transition maps are not coherent");
    }
}

LimitResult direct_limit(const GroupSystem& s, bool all_pairs) {
  size_t total = 0;
  std::vector<size_t> offset;
  for (const auto& g : s.nodes) {
    offset.push_back(total);
    total += gens_of(g);
  }
  std::vector<std::vector<Int>> cols;
  for (size_t i = 0; i < s.nodes.size(); ++i) {
    auto ords = orders_of(s.nodes[i]);
    for (size_t g = 0; g < ords.size(); ++g)
      if (ords[g] >= 2) {
        std::vector<Int> c(total, 0);
        c[offset[i] + g] = ords[g];
        cols.push_back(c);
      }
  }
  std::set<std::pair<size_t, size_t>> use;
  if (all_pairs) {
    for (const auto& e : s.edges) use.insert({e.src, e.dst});
  } else {
    use.insert(s.hasse.begin(), s.hasse.end());
  }
  for (auto [i, j] : use) {
    const auto* e = s.edge(i, j);
    if (!e) fail_internal("system lacks an edge of its own order relation");
    for (size_t g = 0; g < gens_of(s.nodes[i]); ++g) {
      std::vector<Int> c(total, 0);
      for (size_t r = 0; r < e->matrix.rows; ++r)
        c[offset[j] + r] += e->matrix(r, g);
      c[offset[i] + g] -= 1;
      cols.push_back(c);
    }
  }
  IMat B(total, cols.size());
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < total; ++i) B(i, j) = cols[j][i];
  LimitResult out{FgAbelianGroup{}, HomologyData(IMat(0, total), B, s.mode),
                  offset, total};
  out.group = out.data.group();

  // a maximum node, if present, must absorb the whole colimit
  for (size_t m = 0; m < s.nodes.size(); ++m) {
    bool is_max = true;
    for (size_t i = 0; i < s.nodes.size() && is_max; ++i)
      if (i != m && !s.edge(i, m)) is_max = false;
    if (is_max && s.nodes.size() > 1) {
      if (!(out.group == s.nodes[m]))
        fail_internal("colimit differs from the maximum node's group");
      break;
    }
  }
  return out;
}

std::vector<Int> LimitResult::inject(size_t node,
                                     const std::vector<Int>& v) const {
  std::vector<Int> full(total_gens, 0);
  for (size_t i = 0; i < v.size(); ++i) full[offset[node] + i] = v[i];
  return data.coords(full);
}

void verify_limit_vanishing(const GroupSystem& s, const LimitResult& lim) {
  if (!s.directed)
    fail_input("vanishing characterization requires a directed system");
  for (size_t i = 0; i < s.nodes.size(); ++i) {
    size_t gi = gens_of(s.nodes[i]);
    for (size_t g = 0; g < gi; ++g) {
      std::vector<Int> e(gi, 0);
      e[g] = 1;
      auto cls = lim.inject(i, e);
      bool limit_zero =
          std::all_of(cls.begin(), cls.end(), [](const Int& v) { return v == 0; });
      bool killed = false;
      for (const auto& ed : s.edges) {
        if (ed.src != i) continue;
        std::vector<Int> img(ed.matrix.rows, 0);
        for (size_t r = 0; r < ed.matrix.rows; ++r) img[r] = ed.matrix(r, g);
        normalize_coords(img, s.nodes[ed.dst]);
        if (std::all_of(img.begin(), img.end(),
                        [](const Int& v) { return v == 0; })) {
          killed = true;
          break;
        }
      }
      if (limit_zero != killed)
        fail_internal("vanishing characterization failed in the colimit");
    }
  }
}

HomologySystem build_homology_system(
    const TangleDiagram& d, const std::vector<std::vector<std::string>>& family,
    char orient, Coeff mode) {
  HomologySystem sys;
  sys.poset = build_inclusion_poset(family);
  sys.orient = orient;
  sys.mode = mode;
  std::set<int> degs;
  for (const auto& s : sys.poset.sets) {
    sys.complexes.push_back(build_complex(d, s, orient, mode));
    auto chk = is_del_complete(d, sys.complexes.back());
    if (!chk.complete)
      fail_input("family member " + set_str(s) +
                 " is not boundary-complete; witness " + chk.witness_gen);
    degs.insert(sys.complexes.back().degrees.begin(),
                sys.complexes.back().degrees.end());
  }
  for (auto [i, j] : sys.poset.leq) {
    auto c = check_chain_compatible(d, sys.poset.sets[i], sys.poset.sets[j],
                                    orient);
    if (!c.ok)
      fail_input("inclusion " + set_str(sys.poset.sets[i]) + " into " +
                 set_str(sys.poset.sets[j]) +
                 " is not a chain map; witness (" + c.witness_p + "," +
                 c.witness_q + ")");
  }
  sys.degrees.assign(degs.begin(), degs.end());
  for (int k : sys.degrees) {
    GroupSystem gs;
    gs.mode = mode;
    gs.directed = sys.poset.directed;
    gs.hasse = sys.poset.hasse;
    std::vector<HomologyData> data;
    for (const auto& c : sys.complexes) {
      data.emplace_back(c.boundary(k), c.boundary(k + 1), mode);
      gs.nodes.push_back(data.back().group());
    }
    for (auto [i, j] : sys.poset.leq) {
      IMat f = inclusion_matrix(sys.complexes[i], sys.complexes[j], k);
      auto m = induced_quotient_map(f, data[i], data[j]);
      gs.edges.push_back({i, j, m.matrix});
    }
    verify_transitions(gs);
    sys.systems[k] = gs;
  }
  return sys;
}

}  // namespace hft
