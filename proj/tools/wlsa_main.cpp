#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wlsa/equitable.hpp"
#include "wlsa/homcount.hpp"
#include "wlsa/polymorph.hpp"
#include "wlsa/refine.hpp"
#include "wlsa/relax.hpp"
#include "wlsa/stark.hpp"
#include "wlsa/structure.hpp"
#include "wlsa/witness.hpp"

using json = nlohmann::ordered_json;
using namespace wlsa;

namespace {

struct Caps {
  long max_vars = kDefaultMaxVars;
  long max_m = kDefaultMaxM;
  long max_universe = kDefaultMaxUniverse;
  int threads = 0;
};

long env_long(const char* name, long fallback) {
  const char* v = std::getenv(name);
  return v ? std::strtol(v, nullptr, 10) : fallback;
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Inputs {
  json digests = json::array();

  Structure load(const std::string& path) {
    std::string text = read_file(path);
    digests.push_back({{"file", path}, {"digest", fnv1a(text)}});
    return parse_structure(text);
  }
  std::string load_text(const std::string& path) {
    std::string text = read_file(path);
    digests.push_back({{"file", path}, {"digest", fnv1a(text)}});
    return text;
  }
};

std::string rat_str(const Rat& r) { return r.get_str(); }

json label_json(const Signature& sig, const Label& l) {
  return {{"symbol", sig.name(l.symbol)}, {"positions", l.positions}};
}

json lp_json(const LinearSystem& sys, const LpResult& res) {
  json out;
  out["feasible"] = res.feasible;
  if (res.feasible) {
    json w = json::object();
    for (int v = 0; v < sys.num_vars(); ++v)
      if (res.point[v] != 0) w[sys.var_name(v)] = rat_str(res.point[v]);
    out["witness"] = w;
  } else {
    json c = json::object();
    for (int r = 0; r < sys.num_rows(); ++r)
      if (res.certificate[r] != 0) c[std::to_string(r)] = rat_str(res.certificate[r]);
    out["certificate"] = c;
  }
  return out;
}

json witness_json(const CommonEquitableWitness& w) {
  return {{"element_class_a", w.part_a.element_class},
          {"constraint_class_a", w.part_a.constraint_class},
          {"element_class_b", w.part_b.element_class},
          {"constraint_class_b", w.part_b.constraint_class},
          {"p", w.part_a.p},
          {"q", w.part_a.q},
          {"element_sizes", w.element_sizes},
          {"constraint_sizes", w.constraint_sizes}};
}

CommonEquitableWitness witness_from_json(const json& j) {
  CommonEquitableWitness w;
  w.part_a.element_class = j.at("element_class_a").get<std::vector<int>>();
  w.part_a.constraint_class = j.at("constraint_class_a").get<std::vector<int>>();
  w.part_b.element_class = j.at("element_class_b").get<std::vector<int>>();
  w.part_b.constraint_class = j.at("constraint_class_b").get<std::vector<int>>();
  w.part_a.p = w.part_b.p = j.at("p").get<int>();
  w.part_a.q = w.part_b.q = j.at("q").get<int>();
  w.element_sizes = j.at("element_sizes").get<std::vector<int>>();
  w.constraint_sizes = j.at("constraint_sizes").get<std::vector<int>>();
  return w;
}

json chain_json(const std::vector<ChainStep>& chain) {
  json steps = json::array();
  for (const ChainStep& s : chain) {
    json step;
    step["kind"] = s.kind == ChainStep::Kind::Hom ? "hom" : "wl1";
    step["from"] = serialize_structure(s.from);
    step["to"] = serialize_structure(s.to);
    if (s.kind == ChainStep::Kind::Hom)
      step["map"] = s.hom;
    else
      step["witness"] = witness_json(s.wl);
    steps.push_back(std::move(step));
  }
  return steps;
}

std::vector<ChainStep> chain_from_json(const json& steps) {
  std::vector<ChainStep> chain;
  for (const json& step : steps) {
    Structure from = parse_structure(step.at("from").get<std::string>());
    Structure to = parse_structure(step.at("to").get<std::string>());
    if (step.at("kind") == "hom")
      chain.push_back(hom_step(from, to, step.at("map").get<std::vector<int>>()));
    else
      chain.push_back(wl1_step(from, to, witness_from_json(step.at("witness"))));
  }
  return chain;
}

json refine_report(const Structure& s, const Colouring& col) {
  // one line per colour class, members listed in first-appearance order
  std::map<int, std::vector<std::string>> classes;
  for (int e = 0; e < s.n(); ++e) classes[col.element_colour[e]].push_back(s.element_name(e));
  for (int c = 0; c < s.m(); ++c) classes[col.constraint_colour[c]].push_back(s.constraint_name(c));
  json lines = json::array();
  for (const auto& [code, members] : classes) {
    std::string line = "class " + std::to_string(code) + ":";
    for (const std::string& m : members) line += " " + m;
    lines.push_back(line);
  }
  return lines;
}

json parameters_json(const Structure& a, const ParameterTable& t) {
  json out = json::array();
  for (const auto& [key, count] : t.c) {
    const auto& [i, j, l] = key;
    out.push_back({{"side", "c"},
                   {"element_class", i},
                   {"constraint_class", j},
                   {"label", label_json(a.signature(), l)},
                   {"count", count}});
  }
  for (const auto& [key, count] : t.d) {
    const auto& [j, i, l] = key;
    out.push_back({{"side", "d"},
                   {"constraint_class", j},
                   {"element_class", i},
                   {"label", label_json(a.signature(), l)},
                   {"count", count}});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sherali-Adams relaxations and Weisfeiler-Leman refinement "
               "for relational structures"};
  app.require_subcommand(1);

  Caps caps;
  caps.max_vars = env_long("WLSA_MAX_VARS", kDefaultMaxVars);
  caps.max_m = env_long("WLSA_MAX_M", kDefaultMaxM);
  caps.max_universe = env_long("WLSA_MAX_UNIVERSE", kDefaultMaxUniverse);

  std::string file_a, file_b, pair_file, out_file;
  int k = 1, k_max = 1, arity = 2, width_limit = 9;
  bool equality = false;
  int max_constraints = 3;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--max-vars", caps.max_vars, "variable cap for LP builders");
    sub->add_option("--max-m", caps.max_m, "denominator cap for decompositions");
    sub->add_option("--max-universe", caps.max_universe, "universe cap for star structures");
    sub->add_option("--threads", caps.threads, "parallelism bound (default: machine)");
  };

  CLI::App* c_refine = app.add_subcommand("refine", "iterated degree refinement report");
  c_refine->add_option("A", file_a)->required();
  c_refine->add_option("--pair", pair_file, "second structure to compare");
  common(c_refine);

  CLI::App* c_eq = app.add_subcommand("equitable", "common equitable partition");
  c_eq->add_option("A", file_a)->required();
  c_eq->add_option("B", file_b)->required();
  common(c_eq);

  CLI::App* c_sa = app.add_subcommand("sa", "level-k Sherali-Adams feasibility");
  c_sa->add_option("--k", k, "level")->required()->check(CLI::PositiveNumber);
  c_sa->add_option("A", file_a)->required();
  c_sa->add_option("B", file_b)->required();
  common(c_sa);

  CLI::App* c_rank = app.add_subcommand("rank", "smallest infeasible level");
  c_rank->add_option("--max-k", k_max, "largest level tried")->required()->check(CLI::PositiveNumber);
  c_rank->add_option("A", file_a)->required();
  c_rank->add_option("B", file_b)->required();
  common(c_rank);

  CLI::App* c_fi = app.add_subcommand("fraciso", "fractional isomorphism feasibility");
  c_fi->add_option("A", file_a)->required();
  c_fi->add_option("B", file_b)->required();
  common(c_fi);

  CLI::App* c_fh = app.add_subcommand("frachom", "fractional homomorphism feasibility");
  c_fh->add_option("A", file_a)->required();
  c_fh->add_option("B", file_b)->required();
  c_fh->add_flag("--equality", equality, "use the equality variant");
  common(c_fh);

  CLI::App* c_blp = app.add_subcommand("blp", "base polytope feasibility");
  c_blp->add_option("A", file_a)->required();
  c_blp->add_option("B", file_b)->required();
  common(c_blp);

  CLI::App* c_star = app.add_subcommand("stark", "level-k star structure");
  c_star->add_option("--k", k, "level")->required()->check(CLI::PositiveNumber);
  c_star->add_option("A", file_a)->required();
  c_star->add_option("-o,--output", out_file, "write the star structure to this file");
  common(c_star);

  CLI::App* c_tw = app.add_subcommand("treewidth", "exact tree decomposition");
  c_tw->add_option("Q", file_a)->required();
  c_tw->add_option("--limit", width_limit, "largest width accepted");
  common(c_tw);

  CLI::App* c_hc = app.add_subcommand("homcount", "exact homomorphism count from an ftree");
  c_hc->add_option("T", file_a)->required();
  c_hc->add_option("A", file_b)->required();
  common(c_hc);

  CLI::App* c_hs = app.add_subcommand("homsearch", "homomorphism search");
  c_hs->add_option("A", file_a)->required();
  c_hs->add_option("B", file_b)->required();
  common(c_hs);

  CLI::App* c_dec = app.add_subcommand("decompose", "solve level 1 and build the chain");
  c_dec->add_option("A", file_a)->required();
  c_dec->add_option("B", file_b)->required();
  common(c_dec);

  CLI::App* c_vc = app.add_subcommand("verify-chain", "re-verify a decomposition chain");
  c_vc->add_option("FILE", file_a, "JSON document with a chain (or - for stdin)")->required();
  common(c_vc);

  CLI::App* c_poly = app.add_subcommand("poly", "symmetric polymorphism search");
  c_poly->add_option("B", file_a)->required();
  c_poly->add_option("--arity", arity, "operation arity")->required()->check(CLI::PositiveNumber);
  common(c_poly);

  CLI::App* c_ft = app.add_subcommand("ftrees", "enumerate ftrees over a signature");
  c_ft->add_option("A", file_a, "structure whose signature is used")->required();
  c_ft->add_option("--max-constraints", max_constraints, "constraint budget");
  common(c_ft);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  auto t0 = std::chrono::steady_clock::now();
  Inputs in;
  json payload;
  std::string subcommand;

  try {
    if (*c_refine) {
      subcommand = "refine";
      Structure a = in.load(file_a);
      if (pair_file.empty()) {
        payload["report"] = refine_report(a, joint_refine({a})[0]);
      } else {
        Structure b = in.load(pair_file);
        auto cols = joint_refine({a, b});
        payload["report"] = refine_report(a, cols[0]);
        payload["report_pair"] = refine_report(b, cols[1]);
        payload["equivalent"] = same_iterated_degree_sequence(a, b);
      }
    } else if (*c_eq) {
      subcommand = "equitable";
      Structure a = in.load(file_a), b = in.load(file_b);
      auto w = common_equitable_partition(a, b);
      if (w.has_value()) {
        payload["classes"] = witness_json(*w);
        payload["sizes_a"] = {{"elements", a.n()}, {"constraints", a.m()}};
        payload["sizes_b"] = {{"elements", b.n()}, {"constraints", b.m()}};
        payload["parameters"] = parameters_json(a, w->parameters);
      } else {
        payload["violation"] = "no common equitable partition";
      }
    } else if (*c_sa) {
      subcommand = "sa";
      Structure a = in.load(file_a), b = in.load(file_b);
      LinearSystem sys = build_sa_system(a, b, k, caps.max_vars);
      payload = lp_json(sys, lp_feasibility(sys));
    } else if (*c_rank) {
      subcommand = "rank";
      Structure a = in.load(file_a), b = in.load(file_b);
      auto r = sa_rank(a, b, k_max, caps.max_vars);
      payload["rank"] = r.has_value() ? json(*r) : json(nullptr);
    } else if (*c_fi) {
      subcommand = "fraciso";
      Structure a = in.load(file_a), b = in.load(file_b);
      try {
        LinearSystem sys = build_frac_iso_system(a, b, caps.max_vars);
        payload = lp_json(sys, lp_feasibility(sys));
      } catch (const InfeasibleBySize& e) {
        payload["feasible"] = false;
        payload["reason"] = e.what();
      }
    } else if (*c_fh) {
      subcommand = "frachom";
      Structure a = in.load(file_a), b = in.load(file_b);
      LinearSystem sys = build_frac_hom_system(a, b, equality, caps.max_vars);
      payload = lp_json(sys, lp_feasibility(sys));
    } else if (*c_blp) {
      subcommand = "blp";
      Structure a = in.load(file_a), b = in.load(file_b);
      LinearSystem sys = build_base_polytope(a, b, caps.max_vars);
      payload = lp_json(sys, lp_feasibility(sys));
    } else if (*c_star) {
      subcommand = "stark";
      Structure a = in.load(file_a);
      Structure star = star_structure(a, k, caps.max_universe);
      std::string text = serialize_structure(star);
      payload["elements"] = star.n();
      payload["constraints"] = star.m();
      payload["symbols"] = star.signature().symbols.size();
      if (out_file.empty()) {
        payload["structure"] = text;
      } else {
        std::ofstream out(out_file, std::ios::binary);
        if (!out) throw ValidationError("cannot write " + out_file);
        out << text;
        payload["output"] = out_file;
      }
    } else if (*c_tw) {
      subcommand = "treewidth";
      Structure q = in.load(file_a);
      auto td = exact_tree_decomposition(q, width_limit);
      if (td.has_value()) {
        payload["width"] = td->width();
        payload["bags"] = td->bags;
        json edges = json::array();
        for (auto [u, v] : td->edges) edges.push_back({u, v});
        payload["edges"] = edges;
      } else {
        payload["width"] = nullptr;
      }
    } else if (*c_hc) {
      subcommand = "homcount";
      Structure t = in.load(file_a), a = in.load(file_b);
      payload["count"] = count_hom_ftree(t, a).get_str();
    } else if (*c_hs) {
      subcommand = "homsearch";
      Structure a = in.load(file_a), b = in.load(file_b);
      auto h = exists_hom(a, b);
      if (h.has_value()) {
        json w = json::object();
        for (int e = 0; e < a.n(); ++e) w[a.element_name(e)] = b.element_name((*h)[e]);
        payload["witness"] = w;
      } else {
        payload["witness"] = nullptr;
      }
    } else if (*c_dec) {
      subcommand = "decompose";
      Structure a = in.load(file_a), b = in.load(file_b);
      LinearSystem sys = build_sa_system(a, b, 1, caps.max_vars);
      LpResult res = lp_feasibility(sys);
      payload["feasible"] = res.feasible;
      if (res.feasible) {
        Decomposition d = decompose_sa1(a, b, res.point, caps.max_m);
        auto chain = decomposition_chain(a, b, d);
        payload["m"] = d.m;
        payload["y_size"] = d.y_size;
        payload["x1"] = serialize_structure(d.x1);
        payload["x2"] = serialize_structure(d.x2);
        payload["chain"] = chain_json(chain);
        payload["verified"] = verify_chain(chain);
      }
    } else if (*c_vc) {
      subcommand = "verify-chain";
      json doc = json::parse(in.load_text(file_a));
      const json& steps = doc.contains("chain")          ? doc.at("chain")
                          : doc.contains("payload")      ? doc.at("payload").at("chain")
                                                         : doc;
      payload["verified"] = verify_chain(chain_from_json(steps));
    } else if (*c_poly) {
      subcommand = "poly";
      Structure b = in.load(file_a);
      auto op = symmetric_polymorphism(b, arity);
      if (op.has_value()) {
        json table = json::array();
        for (const auto& [args, value] : op->table) {
          json names = json::array();
          for (int e : args) names.push_back(b.element_name(e));
          table.push_back({{"args", names}, {"value", b.element_name(value)}});
        }
        payload["operation"] = {{"arity", op->arity}, {"table", table}};
        payload["verified"] = verify_polymorphism(b, *op);
      } else {
        payload["operation"] = nullptr;
      }
    } else if (*c_ft) {
      subcommand = "ftrees";
      Structure a = in.load(file_a);
      auto trees = enumerate_ftrees(a.signature(), max_constraints);
      json list = json::array();
      for (const Structure& t : trees) list.push_back(serialize_structure(t));
      payload["count"] = trees.size();
      payload["ftrees"] = list;
    }
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleBySize& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  json report;
  report["subcommand"] = subcommand;
  report["inputs"] = in.digests;
  report["payload"] = payload;
  report["resources"] = {{"max_vars", caps.max_vars},
                         {"max_m", caps.max_m},
                         {"max_universe", caps.max_universe},
                         {"threads", caps.threads}};
  std::cout << report.dump(2) << "\n";

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cerr << subcommand << ": " << ms << " ms\n";
  return 0;
}
