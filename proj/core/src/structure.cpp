#include "wlsa/structure.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace wlsa {

int Signature::index_of(const std::string& name) const {
  for (size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i].name == name) return static_cast<int>(i);
  return -1;
}

Structure::Structure(Signature sig, std::string name, std::vector<std::string> elements,
                     std::vector<Constraint> constraints)
    : sig_(std::move(sig)),
      name_(std::move(name)),
      elements_(std::move(elements)),
      constraints_(std::move(constraints)) {
  if (elements_.empty()) throw ValidationError("structure '" + name_ + "' has empty universe");
  std::set<std::string> seen;
  for (const auto& e : elements_)
    if (!seen.insert(e).second)
      throw ValidationError("duplicate element '" + e + "' in structure '" + name_ + "'");
  std::set<Constraint> cs;
  std::vector<Constraint> dedup;
  for (const auto& c : constraints_) {
    if (c.symbol < 0 || c.symbol >= static_cast<int>(sig_.symbols.size()))
      throw ValidationError("constraint with unknown symbol index");
    if (static_cast<int>(c.tuple.size()) != sig_.arity(c.symbol))
      throw ValidationError("arity mismatch in constraint of symbol " + sig_.name(c.symbol));
    for (int e : c.tuple)
      if (e < 0 || e >= n()) throw ValidationError("constraint references unknown element");
    if (cs.insert(c).second) {
      dedup.push_back(c);
    } else {
      std::cerr << "warning: duplicate constraint " << sig_.name(c.symbol)
                << " collapsed in structure '" << name_ << "'\n";
    }
  }
  constraints_ = std::move(dedup);
}

int Structure::element_index(const std::string& name) const {
  for (int i = 0; i < n(); ++i)
    if (elements_[i] == name) return i;
  return -1;
}

std::string Structure::constraint_name(int c) const {
  const Constraint& con = constraint(c);
  std::string out = sig_.name(con.symbol) + "(";
  for (size_t i = 0; i < con.tuple.size(); ++i) {
    if (i) out += ",";
    out += element_name(con.tuple[i]);
  }
  return out + ")";
}

bool Structure::has_loops() const {
  for (const auto& c : constraints_) {
    std::set<int> s(c.tuple.begin(), c.tuple.end());
    if (s.size() != c.tuple.size()) return true;
  }
  return false;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string stripped = line.substr(0, line.find('#'));
  std::istringstream iss(stripped);
  std::vector<std::string> toks;
  std::string t;
  while (iss >> t) toks.push_back(t);
  return toks;
}

}  // namespace

std::vector<Structure> parse_structures(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  enum class State { Start, Signature, Between, InStructure };
  State state = State::Start;

  Signature sig;
  std::vector<Structure> result;

  std::string cur_name;
  std::vector<std::string> cur_elements;
  std::map<std::string, int> cur_index;
  std::vector<Constraint> cur_constraints;
  int cur_line = 0;

  auto finish = [&]() {
    if (cur_elements.empty()) throw ParseError(cur_line, "structure '" + cur_name + "' has empty universe");
    result.emplace_back(sig, cur_name, cur_elements, cur_constraints);
    cur_elements.clear();
    cur_index.clear();
    cur_constraints.clear();
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;

    switch (state) {
      case State::Start:
        if (toks.size() != 1 || toks[0] != "signature")
          throw ParseError(lineno, "expected 'signature'");
        state = State::Signature;
        break;
      case State::Signature:
        if (toks[0] == "structure") {
          if (sig.symbols.empty()) throw ParseError(lineno, "empty signature");
          if (toks.size() != 2) throw ParseError(lineno, "expected 'structure NAME'");
          cur_name = toks[1];
          cur_line = lineno;
          state = State::InStructure;
        } else {
          if (toks.size() != 2) throw ParseError(lineno, "expected 'NAME ARITY'");
          if (sig.index_of(toks[0]) >= 0)
            throw ParseError(lineno, "duplicate symbol '" + toks[0] + "'");
          int ar = 0;
          try {
            ar = std::stoi(toks[1]);
          } catch (...) {
            throw ParseError(lineno, "bad arity '" + toks[1] + "'");
          }
          if (ar < 1) throw ParseError(lineno, "arity must be positive");
          sig.symbols.push_back({toks[0], ar});
        }
        break;
      case State::Between:
        if (toks.size() != 2 || toks[0] != "structure")
          throw ParseError(lineno, "expected 'structure NAME'");
        cur_name = toks[1];
        cur_line = lineno;
        state = State::InStructure;
        break;
      case State::InStructure:
        if (toks[0] == "elements") {
          for (size_t i = 1; i < toks.size(); ++i) {
            if (cur_index.count(toks[i]))
              throw ParseError(lineno, "duplicate element '" + toks[i] + "'");
            cur_index[toks[i]] = static_cast<int>(cur_elements.size());
            cur_elements.push_back(toks[i]);
          }
        } else if (toks.size() == 1 && toks[0] == "end") {
          try {
            finish();
          } catch (const ValidationError& e) {
            throw ParseError(lineno, e.what());
          }
          state = State::Between;
        } else {
          int sym = sig.index_of(toks[0]);
          if (sym < 0) throw ParseError(lineno, "unknown symbol '" + toks[0] + "'");
          if (static_cast<int>(toks.size()) - 1 != sig.arity(sym))
            throw ParseError(lineno, "arity mismatch for symbol '" + toks[0] + "'");
          Constraint c;
          c.symbol = sym;
          for (size_t i = 1; i < toks.size(); ++i) {
            auto it = cur_index.find(toks[i]);
            if (it == cur_index.end())
              throw ParseError(lineno, "unknown element '" + toks[i] + "'");
            c.tuple.push_back(it->second);
          }
          cur_constraints.push_back(c);
        }
        break;
    }
  }
  if (state == State::InStructure) throw ParseError(lineno, "missing 'end'");
  if (state != State::Between) throw ParseError(lineno, "no structure found");
  return result;
}

Structure parse_structure(const std::string& text) {
  auto all = parse_structures(text);
  return all.front();
}

std::string serialize_structure(const Structure& s) {
  std::ostringstream out;
  out << "signature\n";
  for (const auto& sym : s.signature().symbols) out << sym.name << " " << sym.arity << "\n";
  out << "structure " << s.name() << "\n";
  out << "elements";
  for (const auto& e : s.elements()) out << " " << e;
  out << "\n";
  for (int c = 0; c < s.m(); ++c) {
    const Constraint& con = s.constraint(c);
    out << s.signature().name(con.symbol);
    for (int e : con.tuple) out << " " << s.element_name(e);
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

Structure renamed(const Structure& s, const std::string& new_name, const std::string& suffix) {
  std::vector<std::string> els;
  for (const auto& e : s.elements()) els.push_back(e + suffix);
  return Structure(s.signature(), new_name, els, s.constraints());
}

Structure disjoint_union(const Structure& a, const Structure& b) {
  if (!(a.signature() == b.signature())) throw ValidationError("disjoint_union: signature mismatch");
  std::set<std::string> names(a.elements().begin(), a.elements().end());
  std::string suffix = "'";
  auto clashes = [&](const std::string& suf) {
    for (const auto& e : b.elements())
      if (names.count(e + suf)) return true;
    return false;
  };
  while (clashes(suffix)) suffix += "'";

  std::vector<std::string> els = a.elements();
  for (const auto& e : b.elements()) els.push_back(e + suffix);
  std::vector<Constraint> cons = a.constraints();
  for (const auto& c : b.constraints()) {
    Constraint shifted = c;
    for (int& e : shifted.tuple) e += a.n();
    cons.push_back(shifted);
  }
  return Structure(a.signature(), a.name() + "+" + b.name(), els, cons);
}

FactorGraph factor_graph(const Structure& s) {
  FactorGraph fg;
  fg.elements = s.n();
  fg.constraints = s.m();
  for (int c = 0; c < s.m(); ++c) {
    std::set<int> members(s.constraint(c).tuple.begin(), s.constraint(c).tuple.end());
    for (int e : members) fg.edges.emplace_back(e, c);
  }
  return fg;
}

std::vector<Structure> connected_components(const Structure& s) {
  // union-find over elements, merged through constraints
  std::vector<int> parent(s.n());
  for (int i = 0; i < s.n(); ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : s.constraints())
    for (size_t i = 1; i < c.tuple.size(); ++i) {
      int a = find(c.tuple[0]), b = find(c.tuple[i]);
      if (a != b) parent[b] = a;
    }

  std::vector<int> roots;
  std::map<int, int> comp_of_root;
  for (int i = 0; i < s.n(); ++i) {
    int r = find(i);
    if (!comp_of_root.count(r)) {
      comp_of_root[r] = static_cast<int>(roots.size());
      roots.push_back(r);
    }
  }
  std::vector<std::vector<int>> members(roots.size());
  for (int i = 0; i < s.n(); ++i) members[comp_of_root[find(i)]].push_back(i);

  std::vector<Structure> out;
  for (size_t k = 0; k < members.size(); ++k)
    out.push_back(induced_substructure(s, members[k]));
  return out;
}

Structure induced_substructure(const Structure& s, const std::vector<int>& subset) {
  if (subset.empty()) throw ValidationError("induced_substructure: empty subset");
  std::map<int, int> remap;
  std::vector<std::string> els;
  for (int e : subset) {
    if (e < 0 || e >= s.n()) throw ValidationError("induced_substructure: element not in universe");
    if (remap.count(e)) throw ValidationError("induced_substructure: repeated element in subset");
    remap[e] = static_cast<int>(els.size());
    els.push_back(s.element_name(e));
  }
  std::vector<Constraint> cons;
  for (const auto& c : s.constraints()) {
    bool inside = std::all_of(c.tuple.begin(), c.tuple.end(),
                              [&](int e) { return remap.count(e) > 0; });
    if (!inside) continue;
    Constraint mapped = c;
    for (int& e : mapped.tuple) e = remap[e];
    cons.push_back(mapped);
  }
  return Structure(s.signature(), s.name(), els, cons);
}

}  // namespace wlsa
