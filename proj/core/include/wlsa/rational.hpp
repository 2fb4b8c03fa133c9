#pragma once

#include <gmpxx.h>

#include <string>

namespace wlsa {

using Rat = mpq_class;

// Canonical "num/den" form, always with an explicit denominator.
inline std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Accepts "num/den" or a bare integer.
inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

}  // namespace wlsa
