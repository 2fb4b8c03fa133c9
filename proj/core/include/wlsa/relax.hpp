#pragma once

#include <optional>

#include "wlsa/linear_system.hpp"
#include "wlsa/structure.hpp"

namespace wlsa {

inline constexpr long kDefaultMaxVars = 200000;

LinearSystem build_sa_system(const Structure& a, const Structure& b, int k,
                             long max_vars = kDefaultMaxVars);

// k=1 variant with the constraint-marginal rows relaxed to <= and a
// normalization row per constraint added; the subset-marginal rows are
// vacuous at k=1 and omitted.
LinearSystem build_sa_prime_system(const Structure& a, const Structure& b,
                                   long max_vars = kDefaultMaxVars);

LinearSystem build_base_polytope(const Structure& a, const Structure& b,
                                 long max_vars = kDefaultMaxVars);

// The basic LP relaxation: unary marginals plus one distribution per
// constraint over the target relation's tuples. Coincides with the k=1
// system whenever the left structure has no loops; the base polytope above
// is a strictly weaker projection.
LinearSystem build_blp_system(const Structure& a, const Structure& b,
                              long max_vars = kDefaultMaxVars);

LinearSystem build_frac_iso_system(const Structure& a, const Structure& b,
                                   long max_vars = kDefaultMaxVars);

LinearSystem build_frac_hom_system(const Structure& a, const Structure& b, bool equality,
                                   long max_vars = kDefaultMaxVars);

// Smallest k <= k_max whose system is infeasible, or nothing.
std::optional<int> sa_rank(const Structure& a, const Structure& b, int k_max,
                           long max_vars = kDefaultMaxVars);

// Variable names used by the builders, so callers can look results up.
std::string sa_set_var_name(const Structure& a, const Structure& b, const std::vector<int>& V,
                            const std::vector<int>& images);
std::string sa_con_var_name(const Structure& a, const Structure& b, int constraint,
                            const std::vector<int>& images);
std::string x_var_name(const Structure& a, const Structure& b, int bb, int aa);
std::string y_var_name(const Structure& a, const Structure& b, int cb, int ca);
std::string blp_var_name(const Structure& a, const Structure& b, int aa, int bb);

}  // namespace wlsa
