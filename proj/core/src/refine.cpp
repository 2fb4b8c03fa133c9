#include "wlsa/refine.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wlsa {

std::optional<Label> matrix_label(const Structure& s, int element, int constraint) {
  if (element < 0 || element >= s.n()) throw ValidationError("matrix_label: unknown element");
  if (constraint < 0 || constraint >= s.m()) throw ValidationError("matrix_label: unknown constraint");
  const Constraint& c = s.constraint(constraint);
  Label lab;
  lab.symbol = c.symbol;
  for (size_t i = 0; i < c.tuple.size(); ++i)
    if (c.tuple[i] == element) lab.positions.push_back(static_cast<int>(i) + 1);
  if (lab.positions.empty()) return std::nullopt;
  return lab;
}

std::vector<Colouring> joint_refine(const std::vector<Structure>& structures,
                                    int seed_element, int seed_constraint,
                                    std::vector<std::vector<int>>* history) {
  if (structures.empty()) throw ValidationError("joint_refine: no structures");
  if (seed_element == seed_constraint)
    throw ValidationError("joint_refine: round-0 symbols must be distinct");
  for (const auto& s : structures)
    if (!(s.signature() == structures[0].signature()))
      throw ValidationError("joint_refine: signature mismatch");

  int total_elems = 0, total_cons = 0;
  for (const auto& s : structures) {
    total_elems += s.n();
    total_cons += s.m();
  }
  const int N = total_elems + total_cons;

  std::vector<int> elem_base(structures.size()), cons_base(structures.size());
  {
    int eb = 0, cb = total_elems;
    for (size_t i = 0; i < structures.size(); ++i) {
      elem_base[i] = eb;
      cons_base[i] = cb;
      eb += structures[i].n();
      cb += structures[i].m();
    }
  }

  // incidence lists with labels, both directions
  std::vector<std::vector<std::pair<Label, int>>> inc(N);
  for (size_t si = 0; si < structures.size(); ++si) {
    const Structure& s = structures[si];
    for (int c = 0; c < s.m(); ++c) {
      const Constraint& con = s.constraint(c);
      std::set<int> members(con.tuple.begin(), con.tuple.end());
      for (int e : members) {
        Label lab = *matrix_label(s, e, c);
        inc[elem_base[si] + e].emplace_back(lab, cons_base[si] + c);
        inc[cons_base[si] + c].emplace_back(lab, elem_base[si] + e);
      }
    }
  }

  std::vector<int> cur(N);
  for (int x = 0; x < N; ++x) cur[x] = x < total_elems ? seed_element : seed_constraint;
  // normalize seeds to dense codes preserving the element-before-constraint split
  {
    int lo = std::min(seed_element, seed_constraint);
    for (int& c : cur) c = (c == lo) ? 0 : 1;
  }
  if (history) {
    history->clear();
    history->push_back(cur);
  }

  int classes = 2;
  int rounds = 0;
  while (true) {
    using Sig = std::pair<int, std::vector<std::pair<Label, int>>>;
    std::vector<Sig> sigs(N);
    for (int x = 0; x < N; ++x) {
      std::vector<std::pair<Label, int>> ms;
      ms.reserve(inc[x].size());
      for (const auto& [lab, y] : inc[x]) ms.emplace_back(lab, cur[y]);
      std::sort(ms.begin(), ms.end());
      sigs[x] = {cur[x], std::move(ms)};
    }
    std::map<Sig, int> code;
    std::vector<int> next(N);
    for (int x = 0; x < N; ++x) {
      auto [it, fresh] = code.emplace(sigs[x], static_cast<int>(code.size()));
      next[x] = it->second;
    }
    int new_classes = static_cast<int>(code.size());
    if (new_classes == classes) break;
    classes = new_classes;
    cur = std::move(next);
    ++rounds;
    if (history) history->push_back(cur);
  }

  // final renumber: element classes 0..p-1 then constraint classes p..p+q-1,
  // each in order of first appearance
  std::map<int, int> emap, cmap;
  for (int x = 0; x < total_elems; ++x) emap.emplace(cur[x], 0);
  for (int x = total_elems; x < N; ++x) cmap.emplace(cur[x], 0);
  {
    std::vector<int> order;
    for (int x = 0; x < total_elems; ++x)
      if (emap[cur[x]] == 0) {
        emap[cur[x]] = static_cast<int>(order.size()) + 1;
        order.push_back(cur[x]);
      }
    int p = static_cast<int>(emap.size());
    for (auto& [k, v] : emap) v -= 1;
    std::vector<int> corder;
    for (int x = total_elems; x < N; ++x)
      if (cmap[cur[x]] == 0) {
        cmap[cur[x]] = p + static_cast<int>(corder.size()) + 1;
        corder.push_back(cur[x]);
      }
    for (auto& [k, v] : cmap) v -= 1;
  }
  int p = static_cast<int>(emap.size());
  int q = static_cast<int>(cmap.size());

  std::vector<Colouring> out(structures.size());
  for (size_t si = 0; si < structures.size(); ++si) {
    Colouring col;
    col.rounds = rounds;
    col.element_classes = p;
    col.total_classes = p + q;
    for (int e = 0; e < structures[si].n(); ++e)
      col.element_colour.push_back(emap.at(cur[elem_base[si] + e]));
    for (int c = 0; c < structures[si].m(); ++c)
      col.constraint_colour.push_back(cmap.at(cur[cons_base[si] + c]));
    out[si] = std::move(col);
  }
  return out;
}

bool same_iterated_degree_sequence(const Structure& a, const Structure& b) {
  auto cols = joint_refine({a, b});
  auto multiset_of = [](const Colouring& c) {
    std::map<int, int> m;
    for (int v : c.element_colour) ++m[v];
    for (int v : c.constraint_colour) ++m[v];
    return m;
  };
  return multiset_of(cols[0]) == multiset_of(cols[1]);
}

}  // namespace wlsa
