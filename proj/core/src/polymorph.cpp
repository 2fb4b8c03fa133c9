#include "wlsa/polymorph.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace wlsa {

namespace {

long pow_capped(long base, int exp, long cap) {
  long r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

std::vector<std::vector<int>> multisets(int universe, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(size, 0);
  while (true) {
    out.push_back(cur);
    int i = size - 1;
    while (i >= 0 && cur[i] == universe - 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < size; ++j) cur[j] = cur[i];
  }
  return out;
}

// one requirement per multiset of same-symbol constraints: applying the
// operation columnwise must land back in the relation
struct Requirement {
  int symbol;
  std::vector<int> cols;  // per position, index into the multiset list
};

std::vector<Requirement> requirements(const Structure& b, int n,
                                      const std::map<std::vector<int>, int>& mindex) {
  std::vector<Requirement> out;
  for (int sym = 0; sym < static_cast<int>(b.signature().symbols.size()); ++sym) {
    const int r = b.signature().arity(sym);
    std::vector<int> ids;
    for (int c = 0; c < b.m(); ++c)
      if (b.constraint(c).symbol == sym) ids.push_back(c);
    if (ids.empty()) continue;
    for (const std::vector<int>& pick : multisets(static_cast<int>(ids.size()), n)) {
      Requirement req{sym, {}};
      for (int s = 0; s < r; ++s) {
        std::vector<int> col;
        for (int i : pick) col.push_back(b.constraint(ids[i]).tuple[s]);
        std::sort(col.begin(), col.end());
        req.cols.push_back(mindex.at(col));
      }
      out.push_back(std::move(req));
    }
  }
  return out;
}

}  // namespace

int SymmetricOperation::apply(std::vector<int> args) const {
  std::sort(args.begin(), args.end());
  auto it = table.find(args);
  if (it == table.end()) throw ValidationError("operation table is not total");
  return it->second;
}

Structure power_structure(const Structure& b, int n, long max_universe) {
  if (n < 1) throw ValidationError("power exponent must be positive");
  long size = pow_capped(b.n(), n, max_universe);
  if (size > max_universe) throw ResourceLimitError("power universe exceeds the cap");

  std::vector<std::string> elems;
  std::vector<std::vector<int>> tuples;
  std::vector<int> cur(n, 0);
  while (true) {
    std::string nm;
    for (int i = 0; i < n; ++i) nm += (i ? "," : "") + b.element_name(cur[i]);
    elems.push_back(std::move(nm));
    tuples.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[i] == b.n() - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  auto id = [&](const std::vector<int>& t) {
    long v = 0;
    for (int e : t) v = v * b.n() + e;
    return static_cast<int>(v);
  };

  std::vector<Constraint> cons;
  for (int sym = 0; sym < static_cast<int>(b.signature().symbols.size()); ++sym) {
    const int r = b.signature().arity(sym);
    std::vector<int> ids;
    for (int c = 0; c < b.m(); ++c)
      if (b.constraint(c).symbol == sym) ids.push_back(c);
    if (ids.empty()) continue;
    if (pow_capped(static_cast<long>(ids.size()), n, max_universe) > max_universe)
      throw ResourceLimitError("power constraint count exceeds the cap");
    std::vector<int> pick(n, 0);
    while (true) {
      Constraint con{sym, {}};
      for (int s = 0; s < r; ++s) {
        std::vector<int> col;
        for (int i : pick) col.push_back(b.constraint(ids[i]).tuple[s]);
        con.tuple.push_back(id(col));
      }
      cons.push_back(std::move(con));
      int i = n - 1;
      while (i >= 0 && pick[i] == static_cast<int>(ids.size()) - 1) pick[i--] = 0;
      if (i < 0) break;
      ++pick[i];
    }
  }
  return Structure(b.signature(), b.name() + "^" + std::to_string(n), std::move(elems),
                   std::move(cons));
}

std::optional<SymmetricOperation> symmetric_polymorphism(const Structure& b, int n,
                                                         long max_tables) {
  if (n < 1) throw ValidationError("polymorphism arity must be positive");
  std::vector<std::vector<int>> ms = multisets(b.n(), n);
  if (pow_capped(b.n(), static_cast<int>(ms.size()), max_tables) > max_tables)
    throw ResourceLimitError("polymorphism table space exceeds the cap");
  std::map<std::vector<int>, int> mindex;
  for (int i = 0; i < static_cast<int>(ms.size()); ++i) mindex.emplace(ms[i], i);
  std::vector<Requirement> reqs = requirements(b, n, mindex);

  // group requirements by the last multiset they mention, so the search can
  // check them as soon as that entry is assigned
  std::vector<std::vector<int>> due(ms.size());
  for (int r = 0; r < static_cast<int>(reqs.size()); ++r)
    due[*std::max_element(reqs[r].cols.begin(), reqs[r].cols.end())].push_back(r);

  std::set<Constraint> rel(b.constraints().begin(), b.constraints().end());
  std::vector<int> value(ms.size(), 0);
  std::vector<int> at(ms.size(), 0);
  int pos = 0;
  while (pos >= 0) {
    if (pos == static_cast<int>(ms.size())) {
      SymmetricOperation op{n, {}};
      for (size_t i = 0; i < ms.size(); ++i) op.table.emplace(ms[i], value[i]);
      return op;
    }
    if (at[pos] == b.n()) {
      at[pos] = 0;
      --pos;
      if (pos >= 0) ++at[pos];
      continue;
    }
    value[pos] = at[pos];
    bool ok = true;
    for (int r : due[pos]) {
      Constraint img{reqs[r].symbol, {}};
      for (int c : reqs[r].cols) img.tuple.push_back(value[c]);
      if (!rel.count(img)) {
        ok = false;
        break;
      }
    }
    if (ok)
      ++pos;
    else
      ++at[pos];
  }
  return std::nullopt;
}

bool verify_polymorphism(const Structure& b, const SymmetricOperation& op) {
  if (op.arity < 1) return false;
  for (const std::vector<int>& m : multisets(b.n(), op.arity)) {
    auto it = op.table.find(m);
    if (it == op.table.end() || it->second < 0 || it->second >= b.n()) return false;
  }
  // independent check straight against the power structure
  Structure power = power_structure(b, op.arity);
  std::set<Constraint> rel(b.constraints().begin(), b.constraints().end());
  for (const Constraint& c : power.constraints()) {
    Constraint img{c.symbol, {}};
    for (int e : c.tuple) {
      // decode the componentwise tuple from the power element index
      std::vector<int> t(op.arity);
      int v = e;
      for (int i = op.arity - 1; i >= 0; --i) {
        t[i] = v % b.n();
        v /= b.n();
      }
      img.tuple.push_back(op.apply(t));
    }
    if (!rel.count(img)) return false;
  }
  return true;
}

}  // namespace wlsa
