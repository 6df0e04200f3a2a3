// Reduced Groebner bases by Buchberger's algorithm.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "resol/polynomial.hpp"

namespace resol {

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MonomialOrder {
  enum class Kind { Grevlex, Lex, Block };
  Kind kind = Kind::Grevlex;
  /// For Block: the first `block` variables form the eliminated block.
  std::size_t block = 0;

  static MonomialOrder grevlex() { return {Kind::Grevlex, 0}; }
  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder elimination(std::size_t first_block) { return {Kind::Block, first_block}; }

  bool greater(const Monomial& a, const Monomial& b) const;
  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

struct GroebnerLimits {
  unsigned max_degree = 64;
  std::size_t max_pairs = 1000000;
};

/// Process-wide caps; set once at startup before any worker threads exist.
GroebnerLimits& groebner_limits();

class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(VarList vars, MonomialOrder order, std::vector<Polynomial> basis);

  const VarList& vars() const { return vars_; }
  const MonomialOrder& order() const { return order_; }
  /// Monic elements, sorted by leading monomial (largest first in the order).
  const std::vector<Polynomial>& elements() const { return basis_; }

  bool is_unit() const;
  bool is_zero() const { return basis_.empty(); }
  Monomial leading_monomial(const Polynomial& p) const;
  /// Fully reduced remainder of f.
  Polynomial reduce(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return reduce(f).is_zero(); }

 private:
  VarList vars_;
  MonomialOrder order_;
  std::vector<Polynomial> basis_;
  // Terms of each element sorted by the basis order, largest first.
  std::vector<std::vector<std::pair<Monomial, Rational>>> sorted_;
};

/// Zero generators are ignored; an empty result is the zero ideal.
GroebnerBasis groebner_basis(const std::vector<Polynomial>& generators, const VarList& vars,
                             MonomialOrder order = MonomialOrder::grevlex());

}  // namespace resol
