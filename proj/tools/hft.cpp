// hft: command-line front end for the homoclinic Floer engine.
//
// Every subcommand emits one JSON run report on stdout (or --out FILE) and
// logs to stderr. Exit codes: 0 = success (including negative verdicts of a
// query), 1 = domain error (an operation demanded a property that does not
// hold) or internal-consistency error, 2 = input/window error.

#include <CLI11.hpp>
#include <json.hpp>

#include <hft/chain.hpp>
#include <hft/dynamics.hpp>
#include <hft/geometry.hpp>
#include <hft/limits.hpp>
#include <hft/tangle.hpp>
#include <hft/zmod.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using json = nlohmann::ordered_json;
using namespace hft;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------- logging
enum class LogLevel { Error = 0, Warn, Info, Debug };

LogLevel log_level() {
  static LogLevel lvl = [] {
    const char* e = std::getenv("HFT_LOG");
    std::string s = e ? e : "warn";
    if (s == "error") return LogLevel::Error;
    if (s == "info") return LogLevel::Info;
    if (s == "debug") return LogLevel::Debug;
    return LogLevel::Warn;
  }();
  return lvl;
}

void logv(LogLevel lvl, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (lvl <= log_level())
    std::cerr << "hft[" << names[(int)lvl] << "] " << msg << "\n";
}

// A domain error: the query itself is well-posed but demands a property the
// input lacks (e.g. boundary-completeness). Exit code 1.
struct DomainError {
  std::string message;
};

// ---------------------------------------------------------------- helpers
std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_input("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

// Loads a diagram from a built-in example name, a tangle JSON file, or a run
// report file whose "tangle" field holds a tangle object.
TangleDiagram load_diagram(const std::string& input, json& digest) {
  auto names = builtin_names();
  if (std::find(names.begin(), names.end(), input) != names.end()) {
    digest = json{{"kind", "builtin"}, {"name", input}};
    return builtin_example(input);
  }
  std::string text = read_file(input);
  digest = json{{"kind", "file"},
                {"path", input},
                {"fnv1a", hex64(fnv1a(text))}};
  json j = json::parse(text, nullptr, false);
  if (!j.is_discarded() && j.is_object()) {
    if (j.contains("tangle"))
      text = j["tangle"].dump();
    else if (j.contains("result") && j["result"].is_object() &&
             j["result"].contains("tangle"))
      text = j["result"]["tangle"].dump();
  }
  return parse_tangle_json(text);
}

std::vector<std::string> parse_set(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    text = read_file(arg.substr(1));
    for (char& c : text)
      if (c == '\n' || c == '\t' || c == ' ') c = ',';
  }
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  if (out.empty()) fail_input("empty point set argument");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Family of sets: "a,b;c,d" inline or @file with a JSON array of id arrays.
std::vector<std::vector<std::string>> parse_family(const std::string& arg) {
  std::vector<std::vector<std::string>> fam;
  if (!arg.empty() && arg[0] == '@') {
    json j = json::parse(read_file(arg.substr(1)));
    if (!j.is_array()) fail_input("system file must be a JSON array of arrays");
    for (auto& a : j) {
      std::vector<std::string> s;
      for (auto& id : a) s.push_back(id.get<std::string>());
      std::sort(s.begin(), s.end());
      fam.push_back(s);
    }
  } else {
    std::stringstream ss(arg);
    std::string part;
    while (std::getline(ss, part, ';'))
      if (!part.empty()) fam.push_back(parse_set(part));
  }
  if (fam.empty()) fail_input("empty family argument");
  return fam;
}

char parse_orient(const std::string& s) {
  if (s == "u+") return '+';
  if (s == "u-") return '-';
  fail_input("orientation must be u+ or u-: " + s);
}

Coeff parse_coeff(const std::string& s) {
  if (s == "z") return Coeff::Z;
  if (s == "z2") return Coeff::Z2;
  fail_input("coefficients must be z or z2: " + s);
}

json point_json(const HomoclinicPoint& p) {
  return json{{"id", p.id},
              {"x", rat_str(p.pos.x)},
              {"y", rat_str(p.pos.y)},
              {"u_branch", p.u.branch},
              {"u_offset", rat_str(p.u.offset)},
              {"s_branch", p.s.branch},
              {"s_offset", rat_str(p.s.offset)},
              {"crossing_sign", p.crossing_sign},
              {"fixed", p.is_fixed_point}};
}

json group_json(const FgAbelianGroup& g) {
  json t = json::array();
  for (auto& d : g.torsion) t.push_back(d.get_str());
  return json{{"free_rank", g.free_rank}, {"torsion", t}, {"pretty", g.str()}};
}

json matrix_json(const IMat& m) {
  json rows = json::array();
  for (size_t r = 0; r < m.rows; r++) {
    json row = json::array();
    for (size_t c = 0; c < m.cols; c++) row.push_back(m(r, c).get_str());
    rows.push_back(row);
  }
  return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

json complex_json(const GradedChainComplex& c) {
  json degs = json::object();
  for (int k : c.degrees) degs[std::to_string(k)] = c.gens.at(k);
  json dels = json::object();
  for (auto& [k, m] : c.del) dels[std::to_string(k)] = matrix_json(m);
  return json{{"degrees", degs}, {"boundaries", dels}};
}

void write_svg(const TangleDiagram& d, const std::string& path) {
  double lo = 1e18, hi = -1e18;
  auto upd = [&](const std::vector<RationalPoint>& poly) {
    for (auto& v : poly) {
      lo = std::min({lo, v.x.get_d(), v.y.get_d()});
      hi = std::max({hi, v.x.get_d(), v.y.get_d()});
    }
  };
  upd(d.unstable.branch_pos);
  upd(d.unstable.branch_neg);
  upd(d.stable.branch_pos);
  upd(d.stable.branch_neg);
  double span = std::max(hi - lo, 1e-9), sc = 900.0 / span;
  auto X = [&](const Rat& v) { return 50 + (v.get_d() - lo) * sc; };
  auto Y = [&](const Rat& v) { return 950 - (v.get_d() - lo) * sc; };
  std::ofstream out(path);
  if (!out) fail_input("cannot write SVG file: " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='1000' height='1000'>\n";
  auto poly = [&](const std::vector<RationalPoint>& pl, const char* color) {
    out << "<polyline fill='none' stroke='" << color
        << "' stroke-width='1.5' points='";
    for (auto& v : pl) out << X(v.x) << "," << Y(v.y) << " ";
    out << "'/>\n";
  };
  poly(d.unstable.branch_pos, "#c02020");
  poly(d.unstable.branch_neg, "#e08080");
  poly(d.stable.branch_pos, "#2020c0");
  poly(d.stable.branch_neg, "#8080e0");
  for (auto& p : d.points) {
    out << "<circle cx='" << X(p.pos.x) << "' cy='" << Y(p.pos.y)
        << "' r='3' fill='" << (p.is_fixed_point ? "black" : "#208020")
        << "'/>\n<text x='" << X(p.pos.x) + 5 << "' y='" << Y(p.pos.y) - 5
        << "' font-size='11'>" << p.id << "</text>\n";
  }
  out << "</svg>\n";
  logv(LogLevel::Info, "wrote SVG to " + path);
}

json validation_json(const ValidationReport& r) {
  return json{{"ok", r.ok},
              {"strongly_intersecting", r.strongly_intersecting},
              {"errors", r.errors},
              {"warnings", r.warnings}};
}

// Runs `fn(i)` for i in [0, n) on up to `jobs` threads.
void parallel_for(size_t n, unsigned jobs, const std::function<void(size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; i++) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  unsigned t = std::min<size_t>(jobs, n);
  for (unsigned k = 0; k < t; k++)
    pool.emplace_back([&] {
      for (size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  for (auto& th : pool) th.join();
}

struct Options {
  std::string input, set_arg, sets_arg, out, svg;
  std::string coeff = "z", orient = "u+";
  bool no_timing = false;
  unsigned jobs = 1;
  unsigned long seed = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homoclinic Floer homology engine"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Options o;
  std::string grow_a = "3";
  GrowthParams gp;
  long map_iter = 1;

  auto add_common = [&](CLI::App* c, bool with_set = false) {
    c->add_option("--out", o.out, "write the report to FILE instead of stdout");
    c->add_flag("--no-timing", o.no_timing, "omit the timing field");
    c->add_option("--jobs", o.jobs, "worker threads for data-parallel stages");
    c->add_option("--coeff", o.coeff, "coefficients: z or z2")
        ->check(CLI::IsMember({"z", "z2"}));
    c->add_option("--orient", o.orient, "unstable orientation: u+ or u-")
        ->check(CLI::IsMember({"u+", "u-"}));
    if (with_set)
      c->add_option("--set", o.set_arg,
                    "comma-separated point ids, or @file")
          ->required();
  };

  auto* c_validate = app.add_subcommand("validate", "well-formedness checks");
  c_validate->add_option("input", o.input, "builtin name or tangle file")
      ->required();
  c_validate->add_option("--svg", o.svg, "dump an SVG rendering to FILE");
  add_common(c_validate);

  auto* c_intersect =
      app.add_subcommand("intersect", "recompute all crossings");
  c_intersect->add_option("input", o.input)->required();
  add_common(c_intersect);

  auto* c_mu = app.add_subcommand("mu", "Maslov indices");
  c_mu->add_option("input", o.input)->required();
  c_mu->add_option("--set", o.set_arg, "restrict to these ids");
  add_common(c_mu);

  auto* c_signs = app.add_subcommand("signs", "lune counts n(p,q)");
  c_signs->add_option("input", o.input)->required();
  c_signs->add_option("--set", o.set_arg, "restrict to these ids");
  add_common(c_signs);

  auto* c_classify =
      app.add_subcommand("classify", "primary / semi-primary classification");
  c_classify->add_option("input", o.input)->required();
  add_common(c_classify);

  auto* c_complete =
      app.add_subcommand("complete", "boundary-completeness verdict");
  c_complete->add_option("input", o.input)->required();
  add_common(c_complete, true);

  auto* c_prune = app.add_subcommand("prune", "largest complete subset");
  c_prune->add_option("input", o.input)->required();
  c_prune->add_option("--seed", o.seed, "permute the triple scan order");
  add_common(c_prune, true);

  auto* c_hom = app.add_subcommand("homology", "local Floer homology");
  c_hom->add_option("input", o.input)->required();
  add_common(c_hom, true);

  auto* c_system = app.add_subcommand("system", "families of generator sets");
  c_system->require_subcommand(1);
  auto* c_syscheck =
      c_system->add_subcommand("check", "poset + chain compatibility");
  c_syscheck->add_option("input", o.input)->required();
  c_syscheck->add_option("--sets", o.sets_arg, "a,b;c,d or @file (JSON)")
      ->required();
  add_common(c_syscheck);
  auto* c_syslimit =
      c_system->add_subcommand("limit", "direct limit of the homology system");
  c_syslimit->add_option("input", o.input)->required();
  c_syslimit->add_option("--sets", o.sets_arg, "a,b;c,d or @file (JSON)")
      ->required();
  add_common(c_syslimit);

  auto* c_grow = app.add_subcommand("grow", "grow a tangle from the map");
  c_grow->add_option("--a", grow_a, "map parameter (rational)");
  c_grow->add_option("--delta", gp.delta, "initial local-segment length");
  c_grow->add_option("--max-arc", gp.max_arc_length, "arc budget per branch");
  c_grow->add_option("--max-points", gp.max_points, "vertex budget per branch");
  c_grow->add_option("--max-turn", gp.max_turn_deg, "turning bound (degrees)");
  c_grow->add_option("--max-step", gp.max_step, "spacing bound");
  c_grow->add_option("--snap-bits", gp.snap_bits, "dyadic snap precision");
  c_grow->add_option("--window", gp.window, "clip box half-width");
  c_grow->add_option("--svg", o.svg, "dump an SVG rendering to FILE");
  add_common(c_grow);

  auto* c_example = app.add_subcommand("example", "emit a built-in diagram");
  c_example->add_option("input", o.input, "one of the built-in names")
      ->required();
  c_example->add_option("--svg", o.svg, "dump an SVG rendering to FILE");
  add_common(c_example);

  CLI11_PARSE(app, argc, argv);

  json report;
  report["command"] = [&] {
    std::string s;
    for (int i = 0; i < argc; i++) s += std::string(i ? " " : "") + argv[i];
    return s;
  }();
  report["engine_version"] = kVersion;
  report["input"] = nullptr;
  report["result"] = nullptr;
  report["error"] = nullptr;

  auto t0 = std::chrono::steady_clock::now();
  int exit_code = 0;

  try {
    char orient = parse_orient(o.orient);
    Coeff mode = parse_coeff(o.coeff);
    json digest;
    json res;

    if (*c_validate) {
      TangleDiagram d = load_diagram(o.input, digest);
      auto r = validate_tangle(d);
      res = validation_json(r);
      if (!o.svg.empty()) write_svg(d, o.svg);
    } else if (*c_intersect) {
      TangleDiagram d = load_diagram(o.input, digest);
      auto pts = compute_intersections(d);
      json arr = json::array();
      for (auto& p : pts) arr.push_back(point_json(p));
      res = json{{"count", arr.size() - 1}, {"points", arr}};
    } else if (*c_mu) {
      TangleDiagram d = load_diagram(o.input, digest);
      std::vector<std::string> ids;
      if (!o.set_arg.empty()) ids = parse_set(o.set_arg);
      else
        for (auto& p : d.points)
          if (!p.is_fixed_point) ids.push_back(p.id);
      json mu = json::object();
      std::vector<int> vals(ids.size());
      parallel_for(ids.size(), o.jobs,
                   [&](size_t i) { vals[i] = maslov_abs(d, ids[i]); });
      for (size_t i = 0; i < ids.size(); i++) mu[ids[i]] = vals[i];
      res = json{{"mu", mu}};
    } else if (*c_signs) {
      TangleDiagram d = load_diagram(o.input, digest);
      std::vector<std::string> ids;
      if (!o.set_arg.empty()) ids = parse_set(o.set_arg);
      else
        for (auto& p : d.points)
          if (!p.is_fixed_point) ids.push_back(p.id);
      std::map<std::string, int> mu;
      for (auto& id : ids) mu[id] = maslov_abs(d, id);
      std::vector<std::pair<std::string, std::string>> pairs;
      for (auto& a : ids)
        for (auto& b : ids)
          if (mu[a] - mu[b] == 1) pairs.emplace_back(a, b);
      std::vector<int> vals(pairs.size());
      parallel_for(pairs.size(), o.jobs, [&](size_t i) {
        vals[i] = sign_n(d, pairs[i].first, pairs[i].second, orient, mode);
      });
      json table = json::object();
      json nonzero = json::array();
      for (size_t i = 0; i < pairs.size(); i++) {
        std::string key = pairs[i].first + "," + pairs[i].second;
        table[key] = vals[i];
        if (vals[i] != 0) nonzero.push_back(key);
      }
      res = json{{"pairs", pairs.size()},
                 {"nonzero", nonzero},
                 {"n", table}};
    } else if (*c_classify) {
      TangleDiagram d = load_diagram(o.input, digest);
      auto cls = classify_points(d);
      json per = json::object();
      json primary = json::array(), semi = json::array();
      for (auto& [id, c] : cls) {
        per[id] = json{{"primary", c.primary},
                       {"semiprimary", c.semiprimary},
                       {"classifiable", c.classifiable}};
        if (c.primary) primary.push_back(id);
        if (c.semiprimary) semi.push_back(id);
      }
      res = json{{"primary", primary},
                 {"semiprimary", semi},
                 {"points", per}};
    } else if (*c_complete) {
      TangleDiagram d = load_diagram(o.input, digest);
      auto E = parse_set(o.set_arg);
      auto cx = build_complex(d, E, orient, mode);
      auto r = is_del_complete(d, cx);
      res = json{{"complete", r.complete}};
      if (!r.complete) {
        res["witness"] = r.witness_gen;
        res["witness_triple"] = r.witness_triple;
      }
      res["complex"] = complex_json(cx);
    } else if (*c_prune) {
      TangleDiagram d = load_diagram(o.input, digest);
      auto E = parse_set(o.set_arg);
      auto [pruned, log] = prune(d, E, orient, o.seed);
      json records = json::array();
      for (auto& r : log.records)
        records.push_back(json{{"deleted", r.deleted},
                               {"level", r.level},
                               {"round", r.round},
                               {"witness", r.witness}});
      res = json{{"input_set", E},
                 {"pruned_set", pruned},
                 {"deleted", records}};
    } else if (*c_hom) {
      TangleDiagram d = load_diagram(o.input, digest);
      auto E = parse_set(o.set_arg);
      auto h = local_floer_homology(d, E, orient, mode);
      json groups = json::object();
      bool all_trivial = true;
      for (auto& [k, g] : h.groups) {
        groups[std::to_string(k)] = group_json(g);
        all_trivial = all_trivial && g.trivial();
      }
      res = json{{"pruned_set", h.pruned_set},
                 {"groups", groups},
                 {"all_trivial", all_trivial},
                 {"complex", complex_json(h.complex)}};
    } else if (*c_syscheck) {
      TangleDiagram d = load_diagram(o.input, digest);
      auto fam = parse_family(o.sets_arg);
      auto poset = build_inclusion_poset(fam);
      json rel = json::array();
      for (auto& [i, j] : poset.leq) rel.push_back(json::array({i, j}));
      json hasse = json::array();
      for (auto& [i, j] : poset.hasse) hasse.push_back(json::array({i, j}));
      json compat = json::array();
      bool all_ok = true;
      for (auto& [i, j] : poset.leq) {
        auto r = check_chain_compatible(d, poset.sets[i], poset.sets[j],
                                        orient);
        json e = json{{"from", i}, {"to", j}, {"chain_map", r.ok}};
        if (!r.ok) {
          e["witness"] = json::array({r.witness_p, r.witness_q});
          all_ok = false;
        }
        compat.push_back(e);
      }
      res = json{{"sets", poset.sets},
                 {"leq", rel},
                 {"hasse", hasse},
                 {"directed", poset.directed},
                 {"compatibility", compat},
                 {"all_chain_compatible", all_ok}};
      if (!poset.directed)
        res["not_directed_witness"] =
            json::array({poset.counter_a, poset.counter_b});
    } else if (*c_syslimit) {
      TangleDiagram d = load_diagram(o.input, digest);
      auto fam = parse_family(o.sets_arg);
      // Domain pre-checks so violations exit 1, not 2.
      for (auto& s : fam) {
        auto cx = build_complex(d, s, orient, mode);
        auto dc = is_del_complete(d, cx);
        if (!dc.complete)
          throw DomainError{"family member is not boundary-complete; witness " +
                            dc.witness_gen};
      }
      auto poset = build_inclusion_poset(fam);
      for (auto& [i, j] : poset.leq) {
        auto r =
            check_chain_compatible(d, poset.sets[i], poset.sets[j], orient);
        if (!r.ok)
          throw DomainError{"inclusion is not a chain map; witness (" +
                            r.witness_p + "," + r.witness_q + ")"};
      }
      auto sys = build_homology_system(d, fam, orient, mode);
      json nodes = json::array();
      for (size_t i = 0; i < sys.poset.sets.size(); i++) {
        json per_deg = json::object();
        for (int k : sys.degrees) {
          auto it = sys.systems.find(k);
          if (it != sys.systems.end())
            per_deg[std::to_string(k)] = group_json(it->second.nodes[i]);
        }
        nodes.push_back(json{{"set", sys.poset.sets[i]}, {"groups", per_deg}});
      }
      json limits = json::object();
      std::vector<int> degs = sys.degrees;
      std::vector<json> lim_json(degs.size());
      parallel_for(degs.size(), o.jobs, [&](size_t i) {
        auto it = sys.systems.find(degs[i]);
        if (it == sys.systems.end()) return;
        auto lim = direct_limit(it->second);
        auto lim_all = direct_limit(it->second, true);
        json e = group_json(lim.group);
        e["all_pairs_agrees"] = lim.group == lim_all.group;
        lim_json[i] = e;
      });
      for (size_t i = 0; i < degs.size(); i++)
        if (!lim_json[i].is_null()) limits[std::to_string(degs[i])] = lim_json[i];
      res = json{{"directed", sys.poset.directed},
                 {"nodes", nodes},
                 {"limits", limits}};
    } else if (*c_grow) {
      MapSpec spec = henon_spec(parse_rat(grow_a));
      TangleDiagram d = grow_tangle(spec, gp);
      (void)map_iter;
      json pts = json::array();
      for (auto& p : d.points) pts.push_back(point_json(p));
      res = json{{"crossings", d.points.size() - 1},
                 {"points", pts},
                 {"tangle", json::parse(tangle_to_json(d))}};
      if (!o.svg.empty()) write_svg(d, o.svg);
    } else if (*c_example) {
      TangleDiagram d = builtin_example(o.input);
      digest = json{{"kind", "builtin"}, {"name", o.input}};
      res = json{{"name", o.input},
                 {"tangle", json::parse(tangle_to_json(d))}};
      if (!o.svg.empty()) write_svg(d, o.svg);
    }

    report["input"] = digest;
    report["result"] = res;
  } catch (const DomainError& e) {
    logv(LogLevel::Error, e.message);
    report["error"] = json{{"kind", "domain"}, {"message", e.message}};
    exit_code = 1;
  } catch (const Error& e) {
    const char* kind = e.kind() == ErrorKind::Input     ? "input"
                       : e.kind() == ErrorKind::Window  ? "window"
                                                        : "internal";
    logv(LogLevel::Error, std::string(kind) + ": " + e.what());
    report["error"] = json{{"kind", kind}, {"message", e.what()}};
    exit_code = e.kind() == ErrorKind::Internal ? 1 : 2;
  } catch (const std::exception& e) {
    logv(LogLevel::Error, e.what());
    report["error"] = json{{"kind", "input"}, {"message", e.what()}};
    exit_code = 2;
  }

  if (!o.no_timing) {
    auto t1 = std::chrono::steady_clock::now();
    report["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  }

  std::string text = report.dump(2) + "\n";
  if (!o.out.empty()) {
    std::ofstream out(o.out, std::ios::binary);
    if (!out) {
      std::cerr << "hft[error] cannot write report to " << o.out << "\n";
      return 2;
    }
    out << text;
  } else {
    std::cout << text;
  }
  return exit_code;
}
