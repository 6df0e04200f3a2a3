// Shared helpers for the test programs.
#pragma once

#include <string>
#include <vector>

#include "resol/ideal.hpp"

namespace testing_support {

using namespace resol;

inline VarList vars(std::vector<std::string> names) { return make_vars(std::move(names)); }
inline Polynomial poly(const std::string& s, const VarList& v) { return Polynomial::parse(s, v); }
inline Ideal ideal(const std::vector<std::string>& gens, const VarList& v) { return Ideal::parse(gens, v); }

// All multi-indices of total degree d in n variables.
inline void indices(std::size_t n, unsigned d, std::vector<Exponent>& cur, std::size_t pos,
                    std::vector<std::vector<Exponent>>& out) {
  if (pos + 1 == n) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (unsigned e = 0; e <= d; ++e) {
    cur[pos] = e;
    indices(n, d - e, cur, pos + 1, out);
  }
}

// Order at a point from Taylor coefficients: the least d with a nonvanishing
// derivative of order d at a. Returns -1 for the zero polynomial.
inline int order_by_derivatives(const Polynomial& f, const Point& a) {
  if (f.is_zero()) return -1;
  for (unsigned d = 0;; ++d) {
    std::vector<std::vector<Exponent>> all;
    std::vector<Exponent> cur(f.nvars(), 0);
    indices(f.nvars(), d, cur, 0, all);
    for (const auto& m : all)
      if (f.derivative(m).evaluate(a) != 0) return static_cast<int>(d);
  }
}

}  // namespace testing_support
