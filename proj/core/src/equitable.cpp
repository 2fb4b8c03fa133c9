#include "wlsa/equitable.hpp"

#include <algorithm>
#include <set>

namespace wlsa {

Partition partition_from_colouring(const Structure& s, const Colouring& col) {
  if (static_cast<int>(col.element_colour.size()) != s.n() ||
      static_cast<int>(col.constraint_colour.size()) != s.m())
    throw ValidationError("partition_from_colouring: colouring/structure mismatch");
  Partition part;
  part.element_class = col.element_colour;
  part.p = col.element_classes;
  part.q = col.total_classes - col.element_classes;
  for (int c : col.constraint_colour) part.constraint_class.push_back(c - part.p);
  return part;
}

namespace {

void check_partition(const Structure& s, const Partition& part) {
  if (static_cast<int>(part.element_class.size()) != s.n() ||
      static_cast<int>(part.constraint_class.size()) != s.m())
    throw ValidationError("verify_equitable: partition size mismatch");
  for (int c : part.element_class)
    if (c < 0 || c >= part.p) throw ValidationError("verify_equitable: bad element class id");
  for (int c : part.constraint_class)
    if (c < 0 || c >= part.q) throw ValidationError("verify_equitable: bad constraint class id");
}

using Counts = std::map<std::pair<int, Label>, long>;

Counts element_counts(const Structure& s, const Partition& part, int a) {
  Counts out;
  for (int c = 0; c < s.m(); ++c) {
    auto lab = matrix_label(s, a, c);
    if (lab) ++out[{part.constraint_class[c], *lab}];
  }
  return out;
}

Counts constraint_counts(const Structure& s, const Partition& part, int c) {
  Counts out;
  std::set<int> members(s.constraint(c).tuple.begin(), s.constraint(c).tuple.end());
  for (int a : members) {
    auto lab = matrix_label(s, a, c);
    ++out[{part.element_class[a], *lab}];
  }
  return out;
}

// first (key, count) discrepancy between two count maps, in key order
std::pair<std::pair<int, Label>, std::string> first_diff(const Counts& ref, const Counts& got) {
  std::set<std::pair<int, Label>> keys;
  for (const auto& [k, v] : ref) keys.insert(k);
  for (const auto& [k, v] : got) keys.insert(k);
  for (const auto& k : keys) {
    long r = ref.count(k) ? ref.at(k) : 0;
    long g = got.count(k) ? got.at(k) : 0;
    if (r != g)
      return {k, "expected " + std::to_string(r) + ", found " + std::to_string(g)};
  }
  return {{-1, Label{}}, ""};
}

}  // namespace

std::variant<ParameterTable, EquitableViolation> verify_equitable(const Structure& s,
                                                                  const Partition& part) {
  check_partition(s, part);

  std::vector<std::vector<int>> pmembers(part.p), qmembers(part.q);
  for (int a = 0; a < s.n(); ++a) pmembers[part.element_class[a]].push_back(a);
  for (int c = 0; c < s.m(); ++c) qmembers[part.constraint_class[c]].push_back(c);

  ParameterTable table;
  for (int i = 0; i < part.p; ++i) {
    if (pmembers[i].empty()) throw ValidationError("verify_equitable: empty element class");
    Counts ref = element_counts(s, part, pmembers[i][0]);
    for (size_t k = 1; k < pmembers[i].size(); ++k) {
      Counts got = element_counts(s, part, pmembers[i][k]);
      if (got != ref) {
        auto [key, msg] = first_diff(ref, got);
        EquitableViolation v;
        v.element_side = true;
        v.class_index = i;
        v.member_a = pmembers[i][0];
        v.member_b = pmembers[i][k];
        v.other_class = key.first;
        v.label = key.second;
        v.message = "element class " + std::to_string(i) + ": members " +
                    s.element_name(v.member_a) + " and " + s.element_name(v.member_b) +
                    " disagree into constraint class " + std::to_string(key.first) + " (" + msg + ")";
        return v;
      }
    }
    for (const auto& [key, cnt] : ref) table.c[{i, key.first, key.second}] = cnt;
  }
  for (int j = 0; j < part.q; ++j) {
    if (qmembers[j].empty()) throw ValidationError("verify_equitable: empty constraint class");
    Counts ref = constraint_counts(s, part, qmembers[j][0]);
    for (size_t k = 1; k < qmembers[j].size(); ++k) {
      Counts got = constraint_counts(s, part, qmembers[j][k]);
      if (got != ref) {
        auto [key, msg] = first_diff(ref, got);
        EquitableViolation v;
        v.element_side = false;
        v.class_index = j;
        v.member_a = qmembers[j][0];
        v.member_b = qmembers[j][k];
        v.other_class = key.first;
        v.label = key.second;
        v.message = "constraint class " + std::to_string(j) + ": members " +
                    s.constraint_name(v.member_a) + " and " + s.constraint_name(v.member_b) +
                    " disagree into element class " + std::to_string(key.first) + " (" + msg + ")";
        return v;
      }
    }
    for (const auto& [key, cnt] : ref) table.d[{j, key.first, key.second}] = cnt;
  }
  return table;
}

std::optional<CommonEquitableWitness> common_equitable_partition(const Structure& a,
                                                                 const Structure& b) {
  if (!(a.signature() == b.signature()))
    throw ValidationError("common_equitable_partition: signature mismatch");
  auto cols = joint_refine({a, b});
  CommonEquitableWitness w;
  w.part_a = partition_from_colouring(a, cols[0]);
  w.part_b = partition_from_colouring(b, cols[1]);

  int p = cols[0].element_classes;
  int q = cols[0].total_classes - p;
  std::vector<int> ea(p, 0), eb(p, 0), ca(q, 0), cb(q, 0);
  for (int c : w.part_a.element_class) ++ea[c];
  for (int c : w.part_b.element_class) ++eb[c];
  for (int c : w.part_a.constraint_class) ++ca[c];
  for (int c : w.part_b.constraint_class) ++cb[c];
  if (ea != eb || ca != cb) return std::nullopt;
  w.element_sizes = ea;
  w.constraint_sizes = ca;

  // parameters computed on the disjoint union carrying the joint classes
  Structure u = disjoint_union(a, b);
  Partition up;
  up.p = p;
  up.q = q;
  up.element_class = w.part_a.element_class;
  up.element_class.insert(up.element_class.end(), w.part_b.element_class.begin(),
                          w.part_b.element_class.end());
  up.constraint_class = w.part_a.constraint_class;
  up.constraint_class.insert(up.constraint_class.end(), w.part_b.constraint_class.begin(),
                             w.part_b.constraint_class.end());
  auto res = verify_equitable(u, up);
  if (!std::holds_alternative<ParameterTable>(res))
    throw ValidationError("common_equitable_partition: stable colouring failed verification");
  w.parameters = std::get<ParameterTable>(res);
  return w;
}

std::pair<RatMatrix, RatMatrix> fractional_iso_witness(const Structure& a, const Structure& b,
                                                       const CommonEquitableWitness& w) {
  RatMatrix X(b.n(), a.n()), Y(b.m(), a.m());
  for (int bb = 0; bb < b.n(); ++bb)
    for (int aa = 0; aa < a.n(); ++aa) {
      int i = w.part_b.element_class[bb];
      if (i == w.part_a.element_class[aa]) X.set(bb, aa, Rat(1, w.element_sizes[i]));
    }
  for (int cb = 0; cb < b.m(); ++cb)
    for (int ca = 0; ca < a.m(); ++ca) {
      int j = w.part_b.constraint_class[cb];
      if (j == w.part_a.constraint_class[ca]) Y.set(cb, ca, Rat(1, w.constraint_sizes[j]));
    }
  return {X, Y};
}

RatMatrix incidence_matrix(const Structure& s, const Label& l) {
  RatMatrix m(s.n(), s.m());
  for (int c = 0; c < s.m(); ++c) {
    if (s.constraint(c).symbol != l.symbol) continue;
    std::set<int> members(s.constraint(c).tuple.begin(), s.constraint(c).tuple.end());
    for (int a : members)
      if (*matrix_label(s, a, c) == l) m.set(a, c, Rat(1));
  }
  return m;
}

std::vector<Label> occurring_labels(const Structure& a, const Structure& b) {
  std::set<Label> labs;
  auto collect = [&](const Structure& s) {
    for (int c = 0; c < s.m(); ++c) {
      std::set<int> members(s.constraint(c).tuple.begin(), s.constraint(c).tuple.end());
      for (int e : members) labs.insert(*matrix_label(s, e, c));
    }
  };
  collect(a);
  collect(b);
  return {labs.begin(), labs.end()};
}

namespace {

RatMatrix adjacency_matrix(const Structure& s) {
  RatMatrix n(s.n(), s.n());
  for (const auto& c : s.constraints()) {
    if (c.tuple.size() != 2) throw ValidationError("adjacency check needs a binary relation");
    n.set(c.tuple[0], c.tuple[1], Rat(1));
  }
  return n;
}

}  // namespace

bool verify_matrix_identities(IdentityKind kind, const Structure& a, const Structure& b,
                              const RatMatrix& X, const RatMatrix& Y) {
  if (X.rows() != b.n() || X.cols() != a.n())
    throw ValidationError("verify_matrix_identities: X dimension mismatch");
  if (kind != IdentityKind::GraphAdjacency && (Y.rows() != b.m() || Y.cols() != a.m()))
    throw ValidationError("verify_matrix_identities: Y dimension mismatch");

  switch (kind) {
    case IdentityKind::FracIso: {
      if (a.n() != b.n() || a.m() != b.m()) throw ValidationError("frac-iso needs equal sizes");
      if (!X.nonnegative() || !Y.nonnegative()) return false;
      if (!X.rows_sum_to_one() || !X.cols_sum_to_one()) return false;
      if (!Y.rows_sum_to_one() || !Y.cols_sum_to_one()) return false;
      for (const Label& l : occurring_labels(a, b)) {
        RatMatrix MA = incidence_matrix(a, l), MB = incidence_matrix(b, l);
        if (!(X * MA == MB * Y)) return false;
        if (!(MA * Y.transpose() == X.transpose() * MB)) return false;
      }
      return true;
    }
    case IdentityKind::FracHom: {
      if (!X.nonnegative() || !Y.nonnegative()) return false;
      if (!X.cols_sum_to_one() || !Y.cols_sum_to_one()) return false;
      auto labs_b = occurring_labels(b, b);
      for (const Label& l : occurring_labels(a, a)) {
        RatMatrix lhs = X * incidence_matrix(a, l);
        RatMatrix rhs(b.n(), a.m());
        for (const Label& l2 : labs_b) {
          if (l2.symbol != l.symbol) continue;
          if (!std::includes(l2.positions.begin(), l2.positions.end(), l.positions.begin(),
                             l.positions.end()))
            continue;
          rhs = rhs + incidence_matrix(b, l2) * Y;
        }
        if (!RatMatrix::leq(lhs, rhs)) return false;
      }
      return true;
    }
    case IdentityKind::GraphAdjacency: {
      if (a.n() != b.n()) throw ValidationError("adjacency check needs equal sizes");
      return X * adjacency_matrix(a) == adjacency_matrix(b) * X;
    }
  }
  return false;
}

}  // namespace wlsa
