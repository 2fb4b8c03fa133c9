#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "wlsa/errors.hpp"

namespace wlsa {

struct Symbol {
  std::string name;
  int arity = 0;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct Signature {
  std::vector<Symbol> symbols;

  int index_of(const std::string& name) const;
  int arity(int sym) const { return symbols.at(sym).arity; }
  const std::string& name(int sym) const { return symbols.at(sym).name; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

// A constraint R(a1,...,ar); elements stored as indices into the universe.
struct Constraint {
  int symbol = -1;
  std::vector<int> tuple;

  friend bool operator==(const Constraint&, const Constraint&) = default;
  friend auto operator<=>(const Constraint&, const Constraint&) = default;
};

class Structure {
 public:
  Structure(Signature sig, std::string name, std::vector<std::string> elements,
            std::vector<Constraint> constraints);

  const Signature& signature() const { return sig_; }
  const std::string& name() const { return name_; }
  int n() const { return static_cast<int>(elements_.size()); }
  int m() const { return static_cast<int>(constraints_.size()); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::string& element_name(int e) const { return elements_.at(e); }
  const Constraint& constraint(int c) const { return constraints_.at(c); }
  int element_index(const std::string& name) const;

  // Display form "R(a,b)" of a constraint.
  std::string constraint_name(int c) const;

  bool has_loops() const;  // any constraint with a repeated element

 private:
  Signature sig_;
  std::string name_;
  std::vector<std::string> elements_;
  std::vector<Constraint> constraints_;
};

struct FactorGraph {
  int elements = 0;
  int constraints = 0;
  // edges (element, constraint), each pair once
  std::vector<std::pair<int, int>> edges;
};

// Parses every structure in the document (they share the one signature block).
std::vector<Structure> parse_structures(const std::string& text);
Structure parse_structure(const std::string& text);

std::string serialize_structure(const Structure& s);

Structure disjoint_union(const Structure& a, const Structure& b);
FactorGraph factor_graph(const Structure& s);
std::vector<Structure> connected_components(const Structure& s);
Structure induced_substructure(const Structure& s, const std::vector<int>& subset);

// Renames b's universe with fresh ids and applies a permutation-free identity
// otherwise; convenience for building test pairs.
Structure renamed(const Structure& s, const std::string& new_name, const std::string& suffix);

}  // namespace wlsa
